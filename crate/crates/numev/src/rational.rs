//! Exact nonnegative rational arithmetic.
//!
//! Every probability value in this crate is a [`Rational`] stored in lowest
//! terms. There is no floating point anywhere: equality and ordering are
//! exact, which the rest of the crate relies on (membership tests like
//! "(1,5/4) is not in the family" must be decided exactly).

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A nonnegative fraction in canonical reduced form.
///
/// Invariants: `den >= 1` and `gcd(num, den) == 1`. Values are not bounded
/// above by 1; sums of event coordinates may exceed 1 (see
/// [`PointwiseVector`](crate::event::PointwiseVector)).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

/// Failure to read a rational from its text form (`"a/b"` or `"a"`).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::reduced(num as u128, den as u128)
    }

    fn reduced(num: u128, den: u128) -> Rational {
        debug_assert!(den != 0);
        if num == 0 {
            return Rational::ZERO;
        }
        let g = gcd(num, den);
        let (n, d) = (num / g, den / g);
        // Inputs are small grid fractions or document values; a reduced
        // fraction that does not fit 64 bits means the computation left the
        // supported range rather than a recoverable user error.
        assert!(
            n <= u64::MAX as u128 && d <= u64::MAX as u128,
            "rational arithmetic overflow: {n}/{d} does not fit 64 bits"
        );
        Rational {
            num: n as u64,
            den: d as u64,
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }

    /// True iff the value is at most 1.
    pub fn le_one(self) -> bool {
        self.num <= self.den
    }

    /// `1 - self`; panics if `self > 1`.
    pub fn one_minus(self) -> Rational {
        assert!(self.le_one(), "one_minus on a value above 1: {self}");
        Rational::reduced((self.den - self.num) as u128, self.den as u128)
    }

    /// `self - other` when `other <= self`, `None` otherwise.
    pub fn checked_sub(self, other: Rational) -> Option<Rational> {
        if other > self {
            return None;
        }
        let a = self.num as u128 * other.den as u128;
        let b = other.num as u128 * self.den as u128;
        Some(Rational::reduced(
            a - b,
            self.den as u128 * other.den as u128,
        ))
    }

    /// Comparison against 1/2, used by the "varying" predicate.
    pub fn cmp_half(self) -> Ordering {
        (self.num as u128 * 2).cmp(&(self.den as u128))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        // Two u64 cross products can overflow their u128 sum for extreme
        // inputs; fail loudly rather than wrap.
        let num = (self.num as u128 * rhs.den as u128)
            .checked_add(rhs.num as u128 * self.den as u128)
            .expect("rational arithmetic overflow");
        Rational::reduced(num, self.den as u128 * rhs.den as u128)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self.checked_sub(rhs)
            .unwrap_or_else(|| panic!("negative rational difference: {self} - {rhs}"))
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational::reduced(
            self.num as u128 * rhs.num as u128,
            self.den as u128 * rhs.den as u128,
        )
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, Add::add)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Rational, ParseRationalError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let (num_text, den_text) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: u64 = num_text
            .parse()
            .map_err(|_| ParseRationalError::BadInteger(s.to_owned()))?;
        let den: u64 = match den_text {
            Some(d) => d
                .parse()
                .map_err(|_| ParseRationalError::BadInteger(s.to_owned()))?,
            None => 1,
        };
        if den == 0 {
            return Err(ParseRationalError::ZeroDenominator(s.to_owned()));
        }
        Ok(Rational::new(num, den))
    }
}

// Rationals cross the file-format boundary as strings ("1/2", "0", "1") so
// the documents stay exact and language neutral.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}
