use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_defect, kron, trace_product, ComplexMatrix};
use crate::spinbasis::BasisSet;
use crate::wigner::HalfInt;

/// Tolerance on `Tr ρ = 1` when converting a density matrix.
pub const TRACE_TOL: f64 = 1e-9;
/// Tolerance on `H = H†` when decomposing a Hamiltonian.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// `√(S(S+1)/3)`, the scale relating `Tr(ρ C_α)` to `R_α`.
pub fn bloch_scale(spin: HalfInt) -> f64 {
    let s = spin.to_f64();
    (s * (s + 1.0) / 3.0).sqrt()
}

fn check_square(m: &ComplexMatrix, dim: usize) -> Result<()> {
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::dimension(format!("{dim}x{dim}"), format!("{}x{}", m.nrows(), m.ncols())));
    }
    Ok(())
}

fn check_unit_trace(rho: &ComplexMatrix) -> Result<()> {
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
        return Err(Error::domain(format!("density matrix trace is {tr}, expected 1")));
    }
    Ok(())
}

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    let defect = hermiticity_defect(h);
    if defect > HERMITIAN_TOL {
        return Err(Error::domain(format!("Hamiltonian is not Hermitian (defect {defect:e})")));
    }
    Ok(())
}

/// Euclidean norm of the yielded values.
fn tail_norm(v: impl Iterator<Item = f64>) -> f64 {
    v.map(|x| x * x).sum::<f64>().sqrt()
}

/// Generalized Bloch vector of one qudit: `ρ = R_α C_α / ((2S+1)√(S(S+1)/3))`
/// with `R_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochState1 {
    spin: HalfInt,
    r: DVector<f64>,
}

impl BlochState1 {
    /// Wraps a coefficient vector in basis order. `r[0]` is forced to 1.
    pub fn new(spin: HalfInt, mut r: DVector<f64>) -> Result<Self> {
        let len = (spin.multiplicity() as usize).pow(2);
        if r.len() != len {
            return Err(Error::dimension(len, r.len()));
        }
        r[0] = 1.0;
        Ok(BlochState1 { spin, r })
    }

    /// The maximally mixed state `E/d`.
    pub fn maximally_mixed(spin: HalfInt) -> Self {
        let len = (spin.multiplicity() as usize).pow(2);
        let mut r = DVector::zeros(len);
        r[0] = 1.0;
        BlochState1 { spin, r }
    }

    pub fn spin(&self) -> HalfInt {
        self.spin
    }

    pub fn components(&self) -> &DVector<f64> {
        &self.r
    }

    pub fn into_components(self) -> DVector<f64> {
        self.r
    }

    /// `b = √(Σ_m R_m²)` over the traceless components.
    pub fn bloch_length(&self) -> f64 {
        bloch_length_1(&self.r)
    }
}

/// Bloch length of a raw one-qudit coefficient vector (index 0 excluded).
pub fn bloch_length_1(r: &DVector<f64>) -> f64 {
    tail_norm(r.iter().skip(1).copied())
}

/// Bloch length of a raw two-qudit coefficient matrix (entry (0,0) excluded).
pub fn bloch_length_2(r: &DMatrix<f64>) -> f64 {
    let total: f64 = r.iter().map(|x| x * x).sum();
    (total - r[(0, 0)] * r[(0, 0)]).max(0.0).sqrt()
}

/// Two-qudit coefficients `R_{αβ}` with
/// `ρ = 3 R_{γδ} C_γ ⊗ C_δ / ((2S1+1)(2S2+1)√(S1(S1+1)S2(S2+1)))`, `R_00 = 1`.
///
/// `R_{m0}` and `R_{0m}` describe the individual qudits, `R_{mn}` their
/// correlations.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochState2 {
    spins: (HalfInt, HalfInt),
    r: DMatrix<f64>,
}

impl BlochState2 {
    pub fn new(spins: (HalfInt, HalfInt), mut r: DMatrix<f64>) -> Result<Self> {
        let shape = (
            (spins.0.multiplicity() as usize).pow(2),
            (spins.1.multiplicity() as usize).pow(2),
        );
        if r.shape() != shape {
            return Err(Error::dimension(format!("{shape:?}"), format!("{:?}", r.shape())));
        }
        r[(0, 0)] = 1.0;
        Ok(BlochState2 { spins, r })
    }

    pub fn maximally_mixed(spins: (HalfInt, HalfInt)) -> Self {
        let n1 = (spins.0.multiplicity() as usize).pow(2);
        let n2 = (spins.1.multiplicity() as usize).pow(2);
        let mut r = DMatrix::zeros(n1, n2);
        r[(0, 0)] = 1.0;
        BlochState2 { spins, r }
    }

    /// Product state `ρ1 ⊗ ρ2`, for which `R_{αβ} = R_α R_β`.
    pub fn product(a: &BlochState1, b: &BlochState1) -> Self {
        BlochState2 {
            spins: (a.spin, b.spin),
            r: &a.r * b.r.transpose(),
        }
    }

    pub fn spins(&self) -> (HalfInt, HalfInt) {
        self.spins
    }

    pub fn components(&self) -> &DMatrix<f64> {
        &self.r
    }

    pub fn into_components(self) -> DMatrix<f64> {
        self.r
    }

    /// `b = √(Σ R_{m0}² + Σ R_{0m}² + Σ R_{mn}²)`.
    pub fn bloch_length(&self) -> f64 {
        bloch_length_2(&self.r)
    }
}

/// `R_α = Tr(ρ C_α) / √(S(S+1)/3)`.
pub fn density_to_bloch(rho: &ComplexMatrix, basis: &BasisSet) -> Result<BlochState1> {
    check_square(rho, basis.dim())?;
    check_unit_trace(rho)?;
    let scale = bloch_scale(basis.spin());
    let r = DVector::from_iterator(basis.len(), basis.matrices().iter().map(|c| trace_product(rho, c).re / scale));
    BlochState1::new(basis.spin(), r)
}

/// `ρ = R_α C_α / ((2S+1)√(S(S+1)/3))`. Hermitian with unit trace for any
/// real `R` with `R_0 = 1`; positivity is not checked.
pub fn bloch_to_density(state: &BlochState1, basis: &BasisSet) -> Result<ComplexMatrix> {
    if state.spin != basis.spin() {
        return Err(Error::SpinMismatch {
            tables: basis.spin(),
            state: state.spin,
        });
    }
    let d = basis.dim();
    let norm = d as f64 * bloch_scale(basis.spin());
    let mut rho = ComplexMatrix::zeros(d, d);
    for (r, c) in state.r.iter().zip(basis.matrices()) {
        if *r != 0.0 {
            rho += c * Complex64::from(r / norm);
        }
    }
    Ok(rho)
}

/// `R_{αβ} = 3 Tr(ρ C_α ⊗ C_β) / √(S1(S1+1)S2(S2+1))`.
pub fn density_to_bloch2(rho: &ComplexMatrix, b1: &BasisSet, b2: &BasisSet) -> Result<BlochState2> {
    check_square(rho, b1.dim() * b2.dim())?;
    check_unit_trace(rho)?;
    let scale = bloch_scale(b1.spin()) * bloch_scale(b2.spin());
    let mut r = DMatrix::zeros(b1.len(), b2.len());
    for (a, ca) in b1.matrices().iter().enumerate() {
        for (b, cb) in b2.matrices().iter().enumerate() {
            r[(a, b)] = trace_product(rho, &kron(ca, cb)).re / scale;
        }
    }
    BlochState2::new((b1.spin(), b2.spin()), r)
}

pub fn bloch_to_density2(state: &BlochState2, b1: &BasisSet, b2: &BasisSet) -> Result<ComplexMatrix> {
    if state.spins != (b1.spin(), b2.spin()) {
        return Err(Error::SpinMismatch {
            tables: b1.spin(),
            state: state.spins.0,
        });
    }
    let d = b1.dim() * b2.dim();
    let norm = d as f64 * bloch_scale(b1.spin()) * bloch_scale(b2.spin());
    let mut rho = ComplexMatrix::zeros(d, d);
    for (a, ca) in b1.matrices().iter().enumerate() {
        for (b, cb) in b2.matrices().iter().enumerate() {
            let r = state.r[(a, b)];
            if r != 0.0 {
                rho += kron(ca, cb) * Complex64::from(r / norm);
            }
        }
    }
    Ok(rho)
}

/// One-qudit Hamiltonian `Ĥ = ½ h_β C_β` (angular-frequency units).
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianCoeffs1 {
    pub spin: HalfInt,
    pub h: DVector<f64>,
}

impl HamiltonianCoeffs1 {
    pub fn new(spin: HalfInt, h: DVector<f64>) -> Result<Self> {
        let len = (spin.multiplicity() as usize).pow(2);
        if h.len() != len {
            return Err(Error::dimension(len, h.len()));
        }
        Ok(HamiltonianCoeffs1 { spin, h })
    }

    pub fn zero(spin: HalfInt) -> Self {
        let len = (spin.multiplicity() as usize).pow(2);
        HamiltonianCoeffs1 {
            spin,
            h: DVector::zeros(len),
        }
    }

    pub fn to_matrix(&self, basis: &BasisSet) -> ComplexMatrix {
        let d = basis.dim();
        let mut m = ComplexMatrix::zeros(d, d);
        for (h, c) in self.h.iter().zip(basis.matrices()) {
            if *h != 0.0 {
                m += c * Complex64::from(0.5 * h);
            }
        }
        m
    }
}

/// Two-qudit Hamiltonian `Ĥ = ½ h_{αβ} C_α ⊗ C_β`.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianCoeffs2 {
    pub spins: (HalfInt, HalfInt),
    pub h: DMatrix<f64>,
}

impl HamiltonianCoeffs2 {
    pub fn new(spins: (HalfInt, HalfInt), h: DMatrix<f64>) -> Result<Self> {
        let shape = (
            (spins.0.multiplicity() as usize).pow(2),
            (spins.1.multiplicity() as usize).pow(2),
        );
        if h.shape() != shape {
            return Err(Error::dimension(format!("{shape:?}"), format!("{:?}", h.shape())));
        }
        Ok(HamiltonianCoeffs2 { spins, h })
    }

    pub fn to_matrix(&self, b1: &BasisSet, b2: &BasisSet) -> ComplexMatrix {
        let d = b1.dim() * b2.dim();
        let mut m = ComplexMatrix::zeros(d, d);
        for (a, ca) in b1.matrices().iter().enumerate() {
            for (b, cb) in b2.matrices().iter().enumerate() {
                let h = self.h[(a, b)];
                if h != 0.0 {
                    m += kron(ca, cb) * Complex64::from(0.5 * h);
                }
            }
        }
        m
    }
}

/// `h_β = 2 Tr(H C_β) / c`, inverting `Ĥ = ½ h_β C_β`.
pub fn decompose_hamiltonian(h: &ComplexMatrix, basis: &BasisSet) -> Result<HamiltonianCoeffs1> {
    check_square(h, basis.dim())?;
    check_hermitian(h)?;
    let c = basis.norm();
    let coeffs = DVector::from_iterator(basis.len(), basis.matrices().iter().map(|m| 2.0 * trace_product(h, m).re / c));
    HamiltonianCoeffs1::new(basis.spin(), coeffs)
}

/// `h_{αβ} = 2 Tr(H C_α ⊗ C_β) / (c1 c2)`.
pub fn decompose_hamiltonian2(h: &ComplexMatrix, b1: &BasisSet, b2: &BasisSet) -> Result<HamiltonianCoeffs2> {
    check_square(h, b1.dim() * b2.dim())?;
    check_hermitian(h)?;
    let c = b1.norm() * b2.norm();
    let mut coeffs = DMatrix::zeros(b1.len(), b2.len());
    for (a, ca) in b1.matrices().iter().enumerate() {
        for (b, cb) in b2.matrices().iter().enumerate() {
            coeffs[(a, b)] = 2.0 * trace_product(h, &kron(ca, cb)).re / c;
        }
    }
    HamiltonianCoeffs2::new((b1.spin(), b2.spin()), coeffs)
}
