//! Small dense complex-matrix helpers shared by the basis, the structure
//! constant oracles and the dynamics module.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense `d × d` complex matrix. Rows and columns are indexed by `|S, m⟩`
/// with `m` descending from `S` to `-S`.
pub type ComplexMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// `Tr(A·B)` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Largest entrywise modulus of `A - A†`.
pub fn hermiticity_defect(a: &ComplexMatrix) -> f64 {
    let n = a.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn is_hermitian(a: &ComplexMatrix, tol: f64) -> bool {
    a.is_square() && hermiticity_defect(a) <= tol
}

/// Largest entrywise modulus of `A - B`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}
