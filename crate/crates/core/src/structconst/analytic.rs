//! Closed-form structure constants in terms of 3jm and 6j symbols.
//!
//! Each nonvanishing pattern class has one formula written for a fixed
//! argument order (`X X' Y''`, `Y Y' Y''`, `X Y' Z''` for `e`; `X X' X''`,
//! `X Y' Y''`, `X X' Z''`/`Y Y' Z''`, `Z Z' Z''` for `g`). Arbitrary argument
//! orders are sorted into that order, with the permutation parity applied to
//! `e` only.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::spinbasis::{BasisKind, BasisLabel};
use crate::wigner::{six_j, three_jm, HalfInt, SqrtRational};

/// Which closed form applies to the antisymmetric constant of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AntisymmetricForm {
    Xxy,
    Yyy,
    Xyz,
    Vanishes,
}

/// Which closed form applies to the symmetric constant of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetricForm {
    Xxx,
    Xyy,
    /// `X X' Z''` and `Y Y' Z''` share one formula.
    PairZ,
    Zzz,
    Vanishes,
}

/// Unordered multiset of three basis kinds, with the formulas that apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PatternClass {
    /// Kinds sorted `X < Y < Z`.
    pub kinds: [BasisKind; 3],
    pub antisymmetric: AntisymmetricForm,
    pub symmetric: SymmetricForm,
}

impl PatternClass {
    /// Classifies three non-Unit kinds. Returns `None` if any kind is Unit.
    pub fn of(kinds: [BasisKind; 3]) -> Option<Self> {
        use BasisKind::*;
        if kinds.contains(&Unit) {
            return None;
        }
        let mut sorted = kinds;
        sorted.sort();
        let antisymmetric = match sorted {
            [X, X, Y] => AntisymmetricForm::Xxy,
            [Y, Y, Y] => AntisymmetricForm::Yyy,
            [X, Y, Z] => AntisymmetricForm::Xyz,
            _ => AntisymmetricForm::Vanishes,
        };
        let symmetric = match sorted {
            [X, X, X] => SymmetricForm::Xxx,
            [X, Y, Y] => SymmetricForm::Xyy,
            [X, X, Z] | [Y, Y, Z] => SymmetricForm::PairZ,
            [Z, Z, Z] => SymmetricForm::Zzz,
            _ => SymmetricForm::Vanishes,
        };
        Some(PatternClass {
            kinds: sorted,
            antisymmetric,
            symmetric,
        })
    }
}

fn check_label(spin: HalfInt, label: &BasisLabel) -> Result<()> {
    if label.kind == BasisKind::Unit {
        return Err(Error::domain("structure constants are defined on traceless elements only"));
    }
    if !label.is_valid_for(spin) {
        return Err(Error::Lookup {
            label: label.to_string(),
            spin,
        });
    }
    Ok(())
}

#[inline]
fn parity(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact `F(k, k', k'', S)`:
/// `(-1)^(2S)/√3 · √(S(S+1)(2S+1)(2k+1)(2k'+1)(2k''+1)) · {k k' k''; S S S}`.
pub fn coefficient_f_exact(k1: u32, k2: u32, k3: u32, spin: HalfInt) -> Result<SqrtRational> {
    let kmax = spin.twice().max(0) as u32;
    for k in [k1, k2, k3] {
        if k < 1 || k > kmax {
            return Err(Error::domain(format!("rank {k} outside 1..={kmax} for S={spin}")));
        }
    }
    let tw = i64::from(spin.twice());
    // S(S+1)(2S+1) = tw(tw+2)(tw+1)/4
    let spin_part = BigRational::new(BigInt::from(tw * (tw + 2) * (tw + 1)), BigInt::from(12));
    let ranks = [k1, k2, k3].iter().map(|&k| rat(2 * i64::from(k) + 1)).product::<BigRational>();
    let sign = if tw % 2 == 0 { 1 } else { -1 };
    let prefactor = SqrtRational::new(sign, spin_part * ranks);
    let (a, b, c) = (
        HalfInt::from_int(k1 as i32),
        HalfInt::from_int(k2 as i32),
        HalfInt::from_int(k3 as i32),
    );
    Ok(prefactor * six_j(a, b, c, spin, spin, spin)?)
}

/// `F(k, k', k'', S)` as a float.
pub fn coefficient_f(k1: u32, k2: u32, k3: u32, spin: HalfInt) -> Result<f64> {
    coefficient_f_exact(k1, k2, k3, spin).map(|f| f.to_f64())
}

/// Evaluates the closed forms for one spin, memoizing `F` per rank triple.
pub(crate) struct AnalyticEvaluator {
    spin: HalfInt,
    f_cache: HashMap<[u32; 3], SqrtRational>,
}

impl AnalyticEvaluator {
    pub(crate) fn new(spin: HalfInt) -> Self {
        AnalyticEvaluator {
            spin,
            f_cache: HashMap::new(),
        }
    }

    fn f(&mut self, ks: [u32; 3]) -> Result<SqrtRational> {
        if let Some(v) = self.f_cache.get(&ks) {
            return Ok(v.clone());
        }
        let v = coefficient_f_exact(ks[0], ks[1], ks[2], self.spin)?;
        self.f_cache.insert(ks, v.clone());
        Ok(v)
    }

    /// `F · (k k' k''; m1 m2 m3)` for integer projections.
    fn f_3jm(f: &SqrtRational, ks: [u32; 3], ms: [i64; 3]) -> Result<f64> {
        let j = |k: u32| HalfInt::from_int(k as i32);
        let m = |q: i64| HalfInt::from_int(q as i32);
        let w = three_jm(j(ks[0]), j(ks[1]), j(ks[2]), m(ms[0]), m(ms[1]), m(ms[2]))?;
        Ok((f * &w).to_f64())
    }

    /// Sorts three labels by `(kind, k, q)`; returns them with the parity of
    /// the sorting permutation.
    fn canonicalize(labels: [BasisLabel; 3]) -> ([BasisLabel; 3], f64) {
        let mut l = labels;
        let mut sign = 1.0;
        for pass in 0..2 {
            for i in 0..2 - pass {
                if l[i] > l[i + 1] {
                    l.swap(i, i + 1);
                    sign = -sign;
                }
            }
        }
        (l, sign)
    }

    fn prepare(&self, labels: &[BasisLabel; 3]) -> Result<Option<PatternClass>> {
        for l in labels {
            check_label(self.spin, l)?;
        }
        Ok(PatternClass::of(labels.map(|l| l.kind)))
    }

    pub(crate) fn e(&mut self, labels: [BasisLabel; 3]) -> Result<f64> {
        let Some(class) = self.prepare(&labels)? else {
            return Ok(0.0);
        };
        let big_k: u32 = labels.iter().map(|l| l.k).sum();
        if big_k.is_multiple_of(2)
            || class.antisymmetric == AntisymmetricForm::Vanishes
            || labels[0] == labels[1]
            || labels[1] == labels[2]
            || labels[0] == labels[2]
        {
            return Ok(0.0);
        }
        let (l, sign) = Self::canonicalize(labels);
        let ks = [l[0].k, l[1].k, l[2].k];
        let [q1, q2, q3] = [l[0].q, l[1].q, l[2].q].map(i64::from);
        let f = self.f(ks)?;
        let t = |ms: [i64; 3]| Self::f_3jm(&f, ks, ms);
        let value = match class.antisymmetric {
            AntisymmetricForm::Xxy => {
                -(parity(q1) * t([q1, -q2, -q3])?
                    + parity(q2) * t([-q1, q2, -q3])?
                    + parity(q3) * t([q1, q2, -q3])?)
                    / std::f64::consts::SQRT_2
            }
            AntisymmetricForm::Yyy => {
                (parity(q1) * t([-q1, q2, q3])?
                    + parity(q2) * t([q1, -q2, q3])?
                    + parity(q3) * t([q1, q2, -q3])?)
                    / std::f64::consts::SQRT_2
            }
            AntisymmetricForm::Xyz => -parity(q1) * t([q1, -q2, 0])?,
            AntisymmetricForm::Vanishes => unreachable!(),
        };
        Ok(sign * value)
    }

    pub(crate) fn g(&mut self, labels: [BasisLabel; 3]) -> Result<f64> {
        let Some(class) = self.prepare(&labels)? else {
            return Ok(0.0);
        };
        let big_k: u32 = labels.iter().map(|l| l.k).sum();
        if big_k % 2 == 1 || class.symmetric == SymmetricForm::Vanishes {
            return Ok(0.0);
        }
        let (l, _) = Self::canonicalize(labels);
        let ks = [l[0].k, l[1].k, l[2].k];
        let [q1, q2, q3] = [l[0].q, l[1].q, l[2].q].map(i64::from);
        let f = self.f(ks)?;
        let t = |ms: [i64; 3]| Self::f_3jm(&f, ks, ms);
        let value = match class.symmetric {
            SymmetricForm::Xxx => {
                (parity(q1) * t([q1, -q2, -q3])?
                    + parity(q2) * t([-q1, q2, -q3])?
                    + parity(q3) * t([q1, q2, -q3])?)
                    / std::f64::consts::SQRT_2
            }
            SymmetricForm::Xyy => {
                (-parity(q1) * t([q1, -q2, -q3])?
                    + parity(q2) * t([-q1, q2, -q3])?
                    + parity(q3) * t([-q1, -q2, q3])?)
                    / std::f64::consts::SQRT_2
            }
            SymmetricForm::PairZ => parity(q1) * t([q1, -q2, 0])?,
            // q = 0 for Z, so the (-1)^q phase is +1
            SymmetricForm::Zzz => t([0, 0, 0])?,
            SymmetricForm::Vanishes => unreachable!(),
        };
        Ok(value)
    }
}

/// Antisymmetric structure constant `e` for three basis labels at `spin`,
/// from the closed-form 3jm/6j expressions.
pub fn e_analytic(spin: HalfInt, li: BasisLabel, lj: BasisLabel, lk: BasisLabel) -> Result<f64> {
    AnalyticEvaluator::new(spin).e([li, lj, lk])
}

/// Symmetric structure constant `g` for three basis labels at `spin`, from
/// the closed-form 3jm/6j expressions.
pub fn g_analytic(spin: HalfInt, li: BasisLabel, lj: BasisLabel, lk: BasisLabel) -> Result<f64> {
    AnalyticEvaluator::new(spin).g([li, lj, lk])
}

/// `Tr(T_{k,q} T_{k',q'} T_{k'',q''})` from the 6j/3jm product formula.
///
/// `T` matrices are real in this phase convention, so the trace is real.
pub fn triple_trace(spin: HalfInt, a: (u32, i32), b: (u32, i32), c: (u32, i32)) -> Result<f64> {
    if spin.is_negative() {
        return Err(Error::domain(format!("spin must be nonnegative, got {spin}")));
    }
    for (k, q) in [a, b, c] {
        if k as i32 > spin.twice() || q.unsigned_abs() > k {
            return Err(Error::domain(format!("(k={k}, q={q}) out of range for S={spin}")));
        }
    }
    let j = |k: u32| HalfInt::from_int(k as i32);
    let m = HalfInt::from_int;
    let w3 = three_jm(j(a.0), j(b.0), j(c.0), m(a.1), m(b.1), m(c.1))?;
    if w3.is_zero() {
        return Ok(0.0);
    }
    let w6 = six_j(j(a.0), j(b.0), j(c.0), spin, spin, spin)?;
    let d = i64::from(spin.multiplicity());
    let ranks: i64 = [a.0, b.0, c.0].iter().map(|&k| 2 * i64::from(k) + 1).product();
    let phase = i64::from(spin.twice()) + i64::from(a.0 + b.0 + c.0);
    let prefactor = SqrtRational::new(if phase % 2 == 0 { 1 } else { -1 }, rat(d * d * d * ranks));
    Ok((prefactor * w6 * w3).to_f64())
}
