//! Closed-form solution of `i ∂t ρ = [H, ρ]` for time-independent `H`:
//! `ρ(t) = U ρ0 U†` with `U = exp(-iHt)` from a Hermitian eigendecomposition.

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_defect, ComplexMatrix};

/// Eigendecomposition of a Hermitian Hamiltonian, reusable across times.
#[derive(Clone, Debug)]
pub struct UnitaryPropagator {
    eigenvalues: DVector<f64>,
    eigenvectors: ComplexMatrix,
}

impl UnitaryPropagator {
    pub fn new(h: &ComplexMatrix) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::dimension("square matrix", format!("{}x{}", h.nrows(), h.ncols())));
        }
        let defect = hermiticity_defect(h);
        if defect > super::state::HERMITIAN_TOL {
            return Err(Error::domain(format!("Hamiltonian is not Hermitian (defect {defect:e})")));
        }
        // symmetrize away rounding before the Hermitian solver
        let sym = (h + h.adjoint()) * Complex64::from(0.5);
        let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Numerical("Hermitian eigendecomposition did not converge".into()))?;
        Ok(UnitaryPropagator {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// `exp(-iHt)`.
    pub fn unitary(&self, t: f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (j, lambda) in self.eigenvalues.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -lambda * t);
            for x in scaled.column_mut(j).iter_mut() {
                *x *= phase;
            }
        }
        scaled * v.adjoint()
    }

    pub fn evolve(&self, rho0: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
        let n = self.eigenvalues.len();
        if rho0.shape() != (n, n) {
            return Err(Error::dimension(format!("{n}x{n}"), format!("{}x{}", rho0.nrows(), rho0.ncols())));
        }
        let u = self.unitary(t);
        Ok(&u * rho0 * u.adjoint())
    }
}

/// `ρ(t) = exp(-iHt) ρ0 exp(iHt)`.
pub fn oracle_evolve(rho0: &ComplexMatrix, h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    UnitaryPropagator::new(h)?.evolve(rho0, t)
}
