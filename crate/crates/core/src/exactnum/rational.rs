use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational in canonical form: positive denominator, coprime parts.
///
/// Equality is structural on the reduced form, so equal values hash equally
/// and can be used as exact table keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    /// Convenience constructor for small literals. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
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

    /// `1 / 2^exp`.
    pub fn inverse_power_of_two(exp: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << exp))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always strictly positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::InvalidInput("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Nearest `f64`; only for display and float-mode norms.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Compares `self` with an integer exactly.
    pub fn cmp_integer(&self, value: &BigInt) -> Ordering {
        // self = p/q with q > 0, so self <=> v  iff  p <=> v*q
        self.numer().cmp(&(value * self.denom()))
    }

    /// Magnitude of numerator and denominator.
    pub fn parts_unsigned(&self) -> (BigUint, BigUint) {
        (
            self.numer().magnitude().clone(),
            self.denom().magnitude().clone(),
        )
    }

    /// Decimal rendering with `digits` fractional digits, truncated toward zero.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let negative = self.is_negative();
        let (num, den) = self.parts_unsigned();
        let int_part = &num / &den;
        let mut rem = &num % &den;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&format!("{}", int_part));
        if digits > 0 {
            out.push('.');
            let ten = BigUint::from(10u32);
            for _ in 0..digits {
                rem *= &ten;
                let digit = &rem / &den;
                rem %= &den;
                out.push_str(&format!("{}", digit));
            }
        }
        out
    }
}

impl fmt::Display for Rational {
    /// `p/q`, or `p` when `q == 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, whole: &str) -> Result<BigUint, Error> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("malformed rational {:?}", whole)));
    }
    BigUint::from_str(s).map_err(|e| Error::Parse(format!("{}: {:?}", e, whole)))
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p`, `-p`, `p/q` and `-p/q` in base 10 with `q > 0`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (num_str, den_str) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let num = parse_digits(num_str, s)?;
        let den = match den_str {
            Some(d) => parse_digits(d, s)?,
            None => BigUint::one(),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {:?}", s)));
        }
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Rational::new(BigInt::from_biguint(sign, num), BigInt::from(den))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigUint> for Rational {
    fn from(v: BigUint) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::recip`] for a checked path.
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

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

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_form() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4)).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r, Rational::ratio(-3, 2));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Rational::ratio(3, 8).to_string(), "3/8");
        assert_eq!(Rational::ratio(-4, 2).to_string(), "-2");
        assert_eq!(Rational::zero().to_string(), "0");
        assert_eq!("-6/4".parse::<Rational>().unwrap(), Rational::ratio(-3, 2));
        assert_eq!("17".parse::<Rational>().unwrap(), Rational::from(17));
        for bad in ["", "-", "1/", "/2", "1/0", "1/-2", "+1", "1.5", " 1", "1/2/3", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "accepted {:?}", bad);
        }
    }

    #[test]
    fn ordering_is_exact() {
        let a = Rational::ratio(1, 3);
        let b = Rational::ratio(333_333_333, 1_000_000_000);
        assert!(a > b);
        assert_eq!(a.cmp_integer(&BigInt::from(0)), Ordering::Greater);
        assert_eq!(Rational::from(2).cmp_integer(&BigInt::from(2)), Ordering::Equal);
    }

    #[test]
    fn ceil_floor() {
        assert_eq!(Rational::ratio(7, 8).ceil(), BigInt::from(1));
        assert_eq!(Rational::ratio(-7, 8).ceil(), BigInt::from(0));
        assert_eq!(Rational::ratio(-7, 8).floor(), BigInt::from(-1));
        assert_eq!(Rational::from(3).ceil(), BigInt::from(3));
    }

    #[test]
    fn decimal() {
        assert_eq!(Rational::ratio(3, 8).to_decimal_string(6), "0.375000");
        assert_eq!(Rational::ratio(-1, 3).to_decimal_string(3), "-0.333");
    }
}
