//! Right-hand sides of the real-form Liouville–von Neumann equations.
//!
//! One qudit:
//! ```text
//! ∂t R_l = e_ijl h_i R_j
//! ```
//! Two qudits (`s1 = √(S1(S1+1)/3)`, `s2 = √(S2(S2+1)/3)`):
//! ```text
//! ∂t R_m0 = s2 e¹_pim (h_p0 R_i0 + h_pl R_il)
//! ∂t R_0m = s1 e²_pim (h_0p R_0i + h_lp R_li)
//! ∂t R_mn = e¹_pim [s2 (h_pn R_i0 + h_p0 R_in) + g²_rln h_pr R_il]
//!         + e²_pin [s1 (h_mp R_0i + h_0p R_mi) + g¹_rlm h_rp R_li]
//! ```
//! Latin indices run over traceless elements `1..=n`; `h` and `R` are
//! indexed over the full basis with 0 the unit element. The index placement
//! `h_pr` / `h_rp` in the two halves of `∂t R_mn` is as written: the first
//! index of `h` always belongs to qudit 1.

use nalgebra::{DMatrix, DVector};

use super::state::{bloch_scale, BlochState1, BlochState2, HamiltonianCoeffs1, HamiltonianCoeffs2};
use crate::error::{Error, Result};
use crate::structconst::StructureTables;

type Entry = ((usize, usize, usize), f64);

fn check_tables(tables: &StructureTables, spin: crate::wigner::HalfInt) -> Result<()> {
    if tables.spin() != spin {
        return Err(Error::SpinMismatch {
            tables: tables.spin(),
            state: spin,
        });
    }
    Ok(())
}

/// Linear generator of the one-qudit equations, `∂t R = A R`, with
/// `A_lj = Σ_i e_ijl h_i`.
#[derive(Clone, Debug)]
pub struct OneQuditGenerator {
    a: DMatrix<f64>,
}

impl OneQuditGenerator {
    pub fn new(h: &HamiltonianCoeffs1, tables: &StructureTables) -> Result<Self> {
        check_tables(tables, h.spin)?;
        let len = h.h.len();
        let mut a = DMatrix::zeros(len, len);
        for ((i, j, l), e) in tables.e_expanded() {
            a[(l, j)] += e * h.h[i];
        }
        Ok(OneQuditGenerator { a })
    }

    pub fn apply(&self, r: &DVector<f64>) -> DVector<f64> {
        &self.a * r
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }
}

/// `∂t R` for one qudit. Component 0 has zero derivative.
pub fn deriv_one_qudit(state: &BlochState1, h: &HamiltonianCoeffs1, tables: &StructureTables) -> Result<DVector<f64>> {
    check_tables(tables, state.spin())?;
    check_tables(tables, h.spin)?;
    let r = state.components();
    let mut dr = DVector::zeros(r.len());
    for ((i, j, l), e) in tables.e_expanded() {
        dr[l] += e * h.h[i] * r[j];
    }
    Ok(dr)
}

/// Precomputed structure-constant lists for the two-qudit equations under a
/// fixed Hamiltonian.
#[derive(Clone, Debug)]
pub struct TwoQuditGenerator {
    h: DMatrix<f64>,
    e1: Vec<Entry>,
    e2: Vec<Entry>,
    g1: Vec<Entry>,
    g2: Vec<Entry>,
    s1: f64,
    s2: f64,
}

impl TwoQuditGenerator {
    pub fn new(h: &HamiltonianCoeffs2, t1: &StructureTables, t2: &StructureTables) -> Result<Self> {
        check_tables(t1, h.spins.0)?;
        check_tables(t2, h.spins.1)?;
        Ok(TwoQuditGenerator {
            h: h.h.clone(),
            e1: t1.e_expanded(),
            e2: t2.e_expanded(),
            g1: t1.g_expanded(),
            g2: t2.g_expanded(),
            s1: bloch_scale(h.spins.0),
            s2: bloch_scale(h.spins.1),
        })
    }

    pub fn apply(&self, r: &DMatrix<f64>) -> DMatrix<f64> {
        let h = &self.h;
        let (n1, n2) = h.shape();
        let mut dr = DMatrix::zeros(n1, n2);

        // h_p0 R_i0 + Σ_l h_pl R_il is the full row product (l = 0 included).
        let h_rt = h * r.transpose();
        // h_0p R_0i + Σ_l h_lp R_li likewise over columns.
        let ht_r = h.transpose() * r;

        // G2[(p, i)][n] = Σ_{r,l} g²_rln h_pr R_il
        let mut g2c = vec![DMatrix::<f64>::zeros(n1, n1); n2];
        for &((rr, l, n), w) in &self.g2 {
            g2c[n].ger(w, &h.column(rr), &r.column(l), 1.0);
        }
        // G1[(p, i)][m] = Σ_{r,l} g¹_rlm h_rp R_li
        let mut g1c = vec![DMatrix::<f64>::zeros(n2, n2); n1];
        for &((rr, l, m), w) in &self.g1 {
            g1c[m].ger(w, &h.row(rr).transpose(), &r.row(l).transpose(), 1.0);
        }

        for &((p, i, m), e) in &self.e1 {
            dr[(m, 0)] += self.s2 * e * h_rt[(p, i)];
            for n in 1..n2 {
                dr[(m, n)] += e * (self.s2 * (h[(p, n)] * r[(i, 0)] + h[(p, 0)] * r[(i, n)]) + g2c[n][(p, i)]);
            }
        }
        for &((p, i, n), e) in &self.e2 {
            dr[(0, n)] += self.s1 * e * ht_r[(p, i)];
            for m in 1..n1 {
                dr[(m, n)] += e * (self.s1 * (h[(m, p)] * r[(0, i)] + h[(0, p)] * r[(m, i)]) + g1c[m][(p, i)]);
            }
        }
        dr
    }
}

/// `∂t R_{αβ}` for two coupled qudits. `∂t R_00 = 0`.
pub fn deriv_two_qudit(
    state: &BlochState2,
    h: &HamiltonianCoeffs2,
    t1: &StructureTables,
    t2: &StructureTables,
) -> Result<DMatrix<f64>> {
    if state.spins() != h.spins {
        return Err(Error::SpinMismatch {
            tables: h.spins.0,
            state: state.spins().0,
        });
    }
    Ok(TwoQuditGenerator::new(h, t1, t2)?.apply(state.components()))
}
