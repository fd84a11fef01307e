//! Irreducible tensor operators `T_{k,q}` and the Hermitian (Allard–Härd)
//! operator basis of su(2S+1).
//!
//! Canonical ordering of a [`BasisSet`]: index 0 is the scaled unit matrix;
//! then, for each rank `k = 1..=2S`, the X elements `q = 1..=k`, the Y
//! elements `q = 1..=k`, and the Z element. Indices 1, 2, 3 are therefore
//! always `S_x`, `S_y`, `S_z`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{identity, ComplexMatrix, I};
use crate::wigner::{three_jm, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisKind {
    X,
    Y,
    Z,
    Unit,
}

/// Label of a basis element: kind, rank `k` and coherence order `q`.
///
/// Z and Unit elements carry `q = 0`; Unit carries `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub kind: BasisKind,
    pub k: u32,
    pub q: u32,
}

impl BasisLabel {
    pub const UNIT: BasisLabel = BasisLabel {
        kind: BasisKind::Unit,
        k: 0,
        q: 0,
    };

    pub const fn x(k: u32, q: u32) -> Self {
        BasisLabel { kind: BasisKind::X, k, q }
    }

    pub const fn y(k: u32, q: u32) -> Self {
        BasisLabel { kind: BasisKind::Y, k, q }
    }

    pub const fn z(k: u32) -> Self {
        BasisLabel { kind: BasisKind::Z, k, q: 0 }
    }

    /// Whether this label names an element of the basis at `spin`.
    pub fn is_valid_for(&self, spin: HalfInt) -> bool {
        let kmax = spin.twice().max(0) as u32;
        match self.kind {
            BasisKind::X | BasisKind::Y => 1 <= self.q && self.q <= self.k && self.k <= kmax,
            BasisKind::Z => 1 <= self.k && self.k <= kmax && self.q == 0,
            BasisKind::Unit => self.k == 0 && self.q == 0,
        }
    }
}

/// Rendered as `X:k:q`, `Y:k:q`, `Z:k` or `U`.
impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BasisKind::X => write!(f, "X:{}:{}", self.k, self.q),
            BasisKind::Y => write!(f, "Y:{}:{}", self.k, self.q),
            BasisKind::Z => write!(f, "Z:{}", self.k),
            BasisKind::Unit => write!(f, "U"),
        }
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid basis label {s:?}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| p.trim().parse::<u32>().map_err(|_| bad());
        match parts.as_slice() {
            ["U"] | ["E"] => Ok(BasisLabel::UNIT),
            ["X", k, q] => Ok(BasisLabel::x(num(k)?, num(q)?)),
            ["Y", k, q] => Ok(BasisLabel::y(num(k)?, num(q)?)),
            ["Z", k] => Ok(BasisLabel::z(num(k)?)),
            ["Z", k, q] if num(q)? == 0 => Ok(BasisLabel::z(num(k)?)),
            _ => Err(bad()),
        }
    }
}

fn check_spin(spin: HalfInt) -> Result<()> {
    if spin.twice() <= 0 {
        return Err(Error::domain(format!("spin must be positive, got {spin}")));
    }
    Ok(())
}

/// Normalization `S(S+1)(2S+1)/3` shared by every basis element:
/// `Tr(C_r C_s) = δ_rs · norm`.
pub fn norm_constant(spin: HalfInt) -> f64 {
    let s = spin.to_f64();
    s * (s + 1.0) * (2.0 * s + 1.0) / 3.0
}

/// Irreducible tensor operator `T_{k,q}` for spin `S`, with entries
/// `√((2S+1)(2k+1)) (-1)^(S-m) (S k S; -m q m')` at row `m`, column `m'`.
///
/// Normalized so that `T_{0,0}` is the identity.
pub fn tensor_operator(spin: HalfInt, k: u32, q: i32) -> Result<ComplexMatrix> {
    if spin.is_negative() {
        return Err(Error::domain(format!("spin must be nonnegative, got {spin}")));
    }
    if k as i32 > spin.twice() || q.unsigned_abs() > k {
        return Err(Error::domain(format!(
            "tensor operator rank/projection (k={k}, q={q}) out of range for S={spin}"
        )));
    }
    let dim = spin.multiplicity() as usize;
    let rank = HalfInt::from_int(k as i32);
    let proj = HalfInt::from_int(q);
    let scale = (f64::from(spin.multiplicity()) * f64::from(2 * k + 1)).sqrt();
    let ms: Vec<HalfInt> = spin.projections().collect();
    let mut t = ComplexMatrix::zeros(dim, dim);
    for (r, &m) in ms.iter().enumerate() {
        let phase = if (spin - m).as_integer().unwrap() % 2 == 0 { 1.0 } else { -1.0 };
        for (col, &mp) in ms.iter().enumerate() {
            let w = three_jm(spin, rank, spin, -m, proj, mp)?;
            if !w.is_zero() {
                t[(r, col)] = Complex64::new(phase * scale * w.to_f64(), 0.0);
            }
        }
    }
    Ok(t)
}

/// The complete Hermitian operator basis for one spin, materialized once.
#[derive(Clone, Debug)]
pub struct BasisSet {
    spin: HalfInt,
    labels: Vec<BasisLabel>,
    matrices: Vec<ComplexMatrix>,
    index: HashMap<BasisLabel, usize>,
}

impl BasisSet {
    /// Builds `C_{0,z}`, and `C_{k,qx}`, `C_{k,qy}`, `C_{k,z}` for all
    /// `1 <= q <= k <= 2S`, in canonical order.
    pub fn new(spin: HalfInt) -> Result<Self> {
        check_spin(spin)?;
        let s = spin.to_f64();
        let xy_scale = (s * (s + 1.0) / 6.0).sqrt();
        let z_scale = (s * (s + 1.0) / 3.0).sqrt();
        let dim = spin.multiplicity() as usize;

        let mut labels = vec![BasisLabel::UNIT];
        let mut matrices = vec![identity(dim) * Complex64::from(z_scale)];
        for k in 1..=spin.twice() as u32 {
            let pairs: Vec<(ComplexMatrix, ComplexMatrix)> = (1..=k as i32)
                .map(|q| Ok((tensor_operator(spin, k, -q)?, tensor_operator(spin, k, q)?)))
                .collect::<Result<_>>()?;
            for (q, (minus, plus)) in (1..=k).zip(&pairs) {
                let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
                labels.push(BasisLabel::x(k, q));
                matrices.push((minus + plus * Complex64::from(sign)) * Complex64::from(xy_scale));
            }
            for (q, (minus, plus)) in (1..=k).zip(&pairs) {
                let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
                labels.push(BasisLabel::y(k, q));
                matrices.push((minus - plus * Complex64::from(sign)) * (I * xy_scale));
            }
            labels.push(BasisLabel::z(k));
            matrices.push(tensor_operator(spin, k, 0)? * Complex64::from(z_scale));
        }
        let index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Ok(BasisSet {
            spin,
            labels,
            matrices,
            index,
        })
    }

    #[inline]
    pub fn spin(&self) -> HalfInt {
        self.spin
    }

    /// Matrix dimension `2S + 1`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.spin.multiplicity() as usize
    }

    /// Total number of elements, `(2S+1)^2`, Unit included.
    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of traceless elements `n = (2S+1)^2 - 1`.
    #[inline]
    pub fn traceless_len(&self) -> usize {
        self.labels.len() - 1
    }

    /// `S(S+1)(2S+1)/3`.
    #[inline]
    pub fn norm(&self) -> f64 {
        norm_constant(self.spin)
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    #[inline]
    pub fn matrix(&self, index: usize) -> &ComplexMatrix {
        &self.matrices[index]
    }

    pub fn label_of(&self, index: usize) -> Result<BasisLabel> {
        self.labels.get(index).copied().ok_or_else(|| Error::Lookup {
            label: format!("#{index}"),
            spin: self.spin,
        })
    }

    pub fn index_of(&self, label: &BasisLabel) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::Lookup {
            label: label.to_string(),
            spin: self.spin,
        })
    }

    /// Map from canonical index to the conventional qutrit enumeration
    /// `C_0..C_8` (spin 1 only).
    ///
    /// In that enumeration `C_4 = Y:2:2`, `C_5 = Y:2:1`, `C_6 = Z:2`,
    /// `C_7 = X:2:1`, `C_8 = X:2:2`. The commonly printed names for `C_5`
    /// (`C_{1,2y}`) and `C_7` (`C_{2,x}`) are not valid labels; the printed
    /// matrices identify them as `Y:2:1` and `X:2:1`, which is what is used
    /// here.
    pub fn appendix_permutation(&self) -> Result<Vec<usize>> {
        appendix_permutation(self.spin)
    }
}

/// Canonical index → qutrit enumeration index. See
/// [`BasisSet::appendix_permutation`].
pub fn appendix_permutation(spin: HalfInt) -> Result<Vec<usize>> {
    if spin != HalfInt::ONE {
        return Err(Error::UnsupportedSpin {
            spin,
            reason: "the qutrit enumeration exists only for spin 1",
        });
    }
    // canonical: U, X11, Y11, Z1, X21, X22, Y21, Y22, Z2
    Ok(vec![0, 1, 2, 3, 7, 8, 5, 4, 6])
}

pub fn hermitian_basis(spin: HalfInt) -> Result<BasisSet> {
    BasisSet::new(spin)
}
