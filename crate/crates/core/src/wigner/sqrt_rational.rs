use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact value `sign · √(radicand)` with a nonnegative rational radicand.
///
/// Every Wigner 3jm and 6j symbol is of this form. The radicand is kept in
/// lowest terms, and a zero value always has `sign == 0` and radicand `0`, so
/// structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    sign: i8,
    radicand: BigRational,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational {
            sign: 0,
            radicand: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        SqrtRational {
            sign: 1,
            radicand: BigRational::one(),
        }
    }

    /// `sign · √radicand`. Panics if the radicand is negative.
    pub fn new(sign: i8, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if sign == 0 || radicand.is_zero() {
            return Self::zero();
        }
        SqrtRational {
            sign: sign.signum(),
            radicand,
        }
    }

    /// The value whose square carries the sign: `sgn(r) · √|r|`.
    pub fn from_signed_square(r: BigRational) -> Self {
        let sign = match r.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        Self::new(sign, r.abs())
    }

    /// `c · √r` for an integer-or-rational coefficient `c`.
    pub fn from_coeff_sqrt(c: &BigRational, r: BigRational) -> Self {
        Self::from_signed_square(c * c.abs() * r)
    }

    pub fn from_integer(n: i64) -> Self {
        let n = BigRational::from_integer(BigInt::from(n));
        Self::from_signed_square(&n * n.abs())
    }

    #[inline]
    pub fn sign(&self) -> i8 {
        self.sign
    }

    #[inline]
    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// `sign · radicand`, i.e. the square of the value with its sign kept.
    pub fn signed_square(&self) -> BigRational {
        match self.sign {
            0 => BigRational::zero(),
            1 => self.radicand.clone(),
            _ => -self.radicand.clone(),
        }
    }

    /// Nearest-double conversion (relative error at the 1-ulp level).
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let p = self.radicand.numer().magnitude();
        let q = self.radicand.denom().magnitude();
        // Scale so the integer square root carries at least 64 significant bits.
        let excess = p.bits() as i64 - q.bits() as i64;
        let shift = (130 - excess).div_euclid(2) + 1;
        let scaled: BigUint = if shift >= 0 {
            (p << (2 * shift as u64)) / q
        } else {
            p / (q << (2 * (-shift) as u64))
        };
        let root = scaled.sqrt().to_f64().unwrap_or(f64::INFINITY);
        let mag = root * 2f64.powi(-(shift as i32));
        f64::from(self.sign) * mag
    }
}

impl Default for SqrtRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<&SqrtRational> for f64 {
    fn from(s: &SqrtRational) -> f64 {
        s.to_f64()
    }
}

impl From<SqrtRational> for f64 {
    fn from(s: SqrtRational) -> f64 {
        s.to_f64()
    }
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        SqrtRational::new(self.sign * rhs.sign, &self.radicand * &rhs.radicand)
    }
}

impl Mul for SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: SqrtRational) -> SqrtRational {
        &self * &rhs
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;
    fn neg(self) -> SqrtRational {
        SqrtRational {
            sign: -self.sign,
            radicand: self.radicand,
        }
    }
}

impl PartialOrd for SqrtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqrtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signed_square().cmp(&other.signed_square())
    }
}

/// `+sqrt(p/q)`, `-sqrt(p/q)`, or `0`.
impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(
                f,
                "{}sqrt({}/{})",
                if s > 0 { '+' } else { '-' },
                self.radicand.numer(),
                self.radicand.denom()
            ),
        }
    }
}
