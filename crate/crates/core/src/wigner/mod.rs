//! Exact Wigner 3jm and 6j symbols.
//!
//! Both symbols are evaluated with Racah's single-sum formulas. The
//! alternating sum is accumulated exactly over the rationals and only then
//! combined with the square-rooted factorial prefactor, so results are exact
//! [`SqrtRational`] values with no cancellation error.

mod factorial;
mod halfint;
mod sqrt_rational;

pub use factorial::{cached_len as factorial_cache_len, factorials};
pub use halfint::{HalfInt, ParseHalfIntError};
pub use sqrt_rational::SqrtRational;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// `|j1 - j2| <= j3 <= j1 + j2` and `j1 + j2 + j3` integral.
pub fn triangle_satisfied(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool {
    let (a, b, c) = (j1.twice(), j2.twice(), j3.twice());
    (a + b + c) % 2 == 0 && c >= (a - b).abs() && c <= a + b
}

fn check_nonnegative(js: &[HalfInt]) -> Result<()> {
    if let Some(j) = js.iter().find(|j| j.is_negative()) {
        return Err(Error::domain(format!("angular momentum {j} is negative")));
    }
    Ok(())
}

/// Integer value of a half-integer combination known to be integral.
#[inline]
fn int(twice: i32) -> i64 {
    debug_assert!(twice % 2 == 0);
    i64::from(twice / 2)
}

#[inline]
fn fact(table: &[BigUint], n: i64) -> &BigUint {
    &table[usize::try_from(n).expect("negative factorial argument")]
}

/// Triangle coefficient `(a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!`.
fn delta(table: &[BigUint], a: HalfInt, b: HalfInt, c: HalfInt) -> BigRational {
    let (a, b, c) = (a.twice(), b.twice(), c.twice());
    let num = fact(table, int(a + b - c)) * fact(table, int(a - b + c)) * fact(table, int(-a + b + c));
    BigRational::new(num.into(), fact(table, int(a + b + c) + 1).clone().into())
}

/// Wigner 3jm symbol `(j1 j2 j3; m1 m2 m3)`.
///
/// Returns zero when the projections do not sum to zero or the triangle rule
/// fails. Projections outside `-j..=j`, or with `j - m` non-integral, are a
/// domain error.
pub fn three_jm(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    m1: HalfInt,
    m2: HalfInt,
    m3: HalfInt,
) -> Result<SqrtRational> {
    check_nonnegative(&[j1, j2, j3])?;
    for (j, m) in [(j1, m1), (j2, m2), (j3, m3)] {
        if m.abs() > j || !(j - m).is_integer() {
            return Err(Error::domain(format!("projection {m} invalid for j = {j}")));
        }
    }
    if (m1 + m2 + m3).twice() != 0 || !triangle_satisfied(j1, j2, j3) {
        return Ok(SqrtRational::zero());
    }

    let (tj1, tj2, tj3) = (j1.twice(), j2.twice(), j3.twice());
    let (tm1, tm2, tm3) = (m1.twice(), m2.twice(), m3.twice());
    let table = factorials(int(tj1 + tj2 + tj3) as usize + 1);

    let mut prefactor = delta(&table, j1, j2, j3);
    let proj = [tj1 + tm1, tj1 - tm1, tj2 + tm2, tj2 - tm2, tj3 + tm3, tj3 - tm3]
        .into_iter()
        .fold(BigUint::from(1u32), |acc, t| acc * fact(&table, int(t)));
    prefactor *= BigRational::from_integer(proj.into());

    let kmin = 0.max(int(tj2 - tj3 - tm1)).max(int(tj1 - tj3 + tm2));
    let kmax = int(tj1 + tj2 - tj3).min(int(tj1 - tm1)).min(int(tj2 + tm2));
    let mut sum = BigRational::zero();
    for k in kmin..=kmax {
        let den = fact(&table, k)
            * fact(&table, int(tj3 - tj2 + tm1) + k)
            * fact(&table, int(tj3 - tj1 - tm2) + k)
            * fact(&table, int(tj1 + tj2 - tj3) - k)
            * fact(&table, int(tj1 - tm1) - k)
            * fact(&table, int(tj2 + tm2) - k);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        sum += BigRational::new(BigInt::from(sign), den.into());
    }
    if int(tj1 - tj2 - tm3) % 2 != 0 {
        sum = -sum;
    }
    Ok(SqrtRational::from_coeff_sqrt(&sum, prefactor))
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}`.
///
/// Zero when any of the triads `(j1 j2 j3)`, `(j1 j5 j6)`, `(j4 j2 j6)`,
/// `(j4 j5 j3)` violates the triangle rule.
pub fn six_j(
    j1: HalfInt,
    j2: HalfInt,
    j3: HalfInt,
    j4: HalfInt,
    j5: HalfInt,
    j6: HalfInt,
) -> Result<SqrtRational> {
    check_nonnegative(&[j1, j2, j3, j4, j5, j6])?;
    let triads = [(j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)];
    if !triads.iter().all(|&(a, b, c)| triangle_satisfied(a, b, c)) {
        return Ok(SqrtRational::zero());
    }

    let a = triads.map(|(x, y, z)| int(x.twice() + y.twice() + z.twice()));
    let b = [
        int(j1.twice() + j2.twice() + j4.twice() + j5.twice()),
        int(j2.twice() + j3.twice() + j5.twice() + j6.twice()),
        int(j3.twice() + j1.twice() + j6.twice() + j4.twice()),
    ];
    let tmin = *a.iter().max().unwrap();
    let tmax = *b.iter().min().unwrap();
    let table = factorials(tmax.max(tmin) as usize + 1);

    let prefactor = triads
        .iter()
        .map(|&(x, y, z)| delta(&table, x, y, z))
        .fold(BigRational::from_integer(1.into()), |acc, d| acc * d);

    let mut sum = BigRational::zero();
    for t in tmin..=tmax {
        let den = a.iter().map(|&ai| fact(&table, t - ai)).product::<BigUint>()
            * b.iter().map(|&bi| fact(&table, bi - t)).product::<BigUint>();
        let num = BigInt::from(fact(&table, t + 1).clone());
        let term = BigRational::new(if t % 2 == 0 { num } else { -num }, den.into());
        sum += term;
    }
    Ok(SqrtRational::from_coeff_sqrt(&sum, prefactor))
}
