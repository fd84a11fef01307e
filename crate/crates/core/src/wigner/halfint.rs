use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A half-integer quantum number (spin, rank, projection), stored as twice
/// its value so that arithmetic stays exact.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    #[inline]
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    #[inline]
    pub const fn from_int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    #[inline]
    pub const fn twice(self) -> i32 {
        self.twice
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if this is integral.
    #[inline]
    pub const fn as_integer(self) -> Option<i32> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    #[inline]
    pub const fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    #[inline]
    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// Dimension `2j + 1` of the multiplet with this angular momentum.
    #[inline]
    pub const fn multiplicity(self) -> i32 {
        self.twice + 1
    }

    /// `j, j-1, ..., -j`: the projections of this angular momentum in
    /// descending order.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInt> + ExactSizeIterator {
        let j = self.twice;
        (0..(j + 1).max(0)).map(move |s| HalfInt::from_twice(j - 2 * s))
    }
}

impl From<i32> for HalfInt {
    fn from(n: i32) -> Self {
        HalfInt::from_int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid half-integer {0:?}: expected forms like \"2\", \"3/2\" or \"1.5\"")]
pub struct ParseHalfIntError(pub String);

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `"2"`, `"-1"`, `"3/2"`, `"-1/2"`, `"1.5"`, `"0.5"`, `"2.0"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((num, den)) = t.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| err())?;
            let den: i32 = den.trim().parse().map_err(|_| err())?;
            return match den {
                1 => num.checked_mul(2).map(HalfInt::from_twice).ok_or_else(err),
                2 => Ok(HalfInt::from_twice(num)),
                _ => Err(err()),
            };
        }
        if let Some((whole, frac)) = t.split_once('.') {
            let negative = whole.starts_with('-');
            let digits = whole.trim_start_matches(['-', '+']);
            if !digits.chars().all(|c| c.is_ascii_digit())
                || !frac.chars().all(|c| c.is_ascii_digit())
                || (digits.is_empty() && frac.is_empty())
            {
                return Err(err());
            }
            let w: i32 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| err())? };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(err()),
            };
            let twice = w.checked_mul(2).and_then(|x| x.checked_add(half)).ok_or_else(err)?;
            return Ok(HalfInt::from_twice(if negative { -twice } else { twice }));
        }
        let n: i32 = t.parse().map_err(|_| err())?;
        n.checked_mul(2).map(HalfInt::from_twice).ok_or_else(err)
    }
}

impl TryFrom<String> for HalfInt {
    type Error = ParseHalfIntError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<HalfInt> for String {
    fn from(h: HalfInt) -> String {
        h.to_string()
    }
}
