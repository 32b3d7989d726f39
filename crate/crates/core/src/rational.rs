//! Exact rational scalars and integer roots.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rational {
    /// Builds `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(Pow::pow(&self.0, exp))
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Floor of the value as an integer.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Decimal rendering rounded half-up to `places` digits after the point.
    /// Computed in exact arithmetic so the output is platform independent.
    pub fn to_decimal_string(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rounded = (scaled.abs() + half).floor().to_integer();
        let sign = if self.0.is_negative() && !rounded.is_zero() {
            "-"
        } else {
            ""
        };
        let int_part = &rounded / &scale;
        let frac_part = &rounded % &scale;
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part:0>places$}")
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q`, plain integers, and finite decimals such as `0.6`.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let invalid = || ParseRationalError::Invalid(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| invalid())?;
            let q: BigInt = q.trim().parse().map_err(|_| invalid())?;
            if q.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rational::new(p, q));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            let digits = format!("{int_digits}{frac}");
            let mut numer: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| invalid())?
            };
            if negative {
                numer = -numer;
            }
            let denom = BigInt::from(10u32).pow(frac.len() as u32);
            return Ok(Rational::new(numer, denom));
        }
        let value: BigInt = s.parse().map_err(|_| invalid())?;
        Ok(Rational::from_integer(value))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(v: $t) -> Self {
                Rational::from_integer(BigInt::from(v))
            }
        }
    )*};
}

from_int!(i32, i64, u32, u64, u128, i128, usize);

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigUint> for Rational {
    fn from(v: BigUint) -> Self {
        Rational::from_integer(BigInt::from_biguint(Sign::Plus, v))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Floor of the `e`-th root of `n`: the unique `r` with `r^e <= n < (r+1)^e`.
///
/// Panics if `e == 0`.
pub fn ifloor_root(n: &BigUint, e: u32) -> BigUint {
    assert!(e >= 1, "root exponent must be positive");
    if e == 1 || n.is_zero() {
        return n.clone();
    }
    let mut r = n.nth_root(e);
    // Newton from the library is exact already; the loops pin the contract.
    while Pow::pow(&r, e) > *n {
        r -= 1u32;
    }
    loop {
        let next = &r + 1u32;
        if Pow::pow(&next, e) <= *n {
            r = next;
        } else {
            break;
        }
    }
    r
}
