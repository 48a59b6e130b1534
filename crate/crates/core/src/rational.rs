//! Exact rational arithmetic.
//!
//! Every numeric quantity in this crate (edge costs, rewards, bias
//! parameters, perceived costs) is an exact fraction. Several constructions
//! hinge on exact threshold ties -- an agent continues when perceived cost
//! *equals* perceived reward -- so floating point is never used.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Rational {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Integer power with a non-negative exponent.
    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num::pow::pow(self.0.clone(), exp as usize))
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn min(self, other: Rational) -> Rational {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// The exact value as a `u64`, if it is a non-negative integer that fits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.0.is_integer() {
            self.0.numer().to_u64()
        } else {
            None
        }
    }

    /// Denominator as `u64` if it fits (it is always positive).
    pub fn denom_u64(&self) -> Option<u64> {
        self.0.denom().to_u64()
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Rational {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    /// Lossy conversion for display ordering only; never used in decisions.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
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
        write!(f, "{}", self)
    }
}

/// Error produced when a numeric literal cannot be parsed exactly.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl FromStr for Rational {
    type Err = NumberParseError;

    /// Accepts integers (`19`), fractions (`35/2`) and finite decimal
    /// expansions (`17.5`), all converted exactly.
    fn from_str(s: &str) -> Result<Rational, NumberParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(NumberParseError::Empty);
        }
        let invalid = || NumberParseError::Invalid(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(|_| invalid())?;
            let d: BigInt = den.trim().parse().map_err(|_| invalid())?;
            if d.is_zero() {
                return Err(NumberParseError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            let negative = int_part.starts_with('-');
            let int: BigInt = if int_part == "-" {
                BigInt::zero()
            } else {
                int_part.parse().map_err(|_| invalid())?
            };
            let frac: BigInt = frac_part.parse().map_err(|_| invalid())?;
            let scale = num::pow::pow(BigInt::from(10), frac_part.len());
            let mut numer = int.abs() * &scale + frac;
            if negative {
                numer = -numer;
            }
            return Ok(Rational(BigRational::new(numer, scale)));
        }
        let n: BigInt = s.parse().map_err(|_| invalid())?;
        Ok(Rational(BigRational::from_integer(n)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
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

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
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

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::from_int(n)
    }
}

/// Shorthand used pervasively in tests and generators.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// A rational cost extended with an unreachable/infinite sentinel, ordered
/// above every finite value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Cost {
    Finite(Rational),
    Infinite,
}

impl Cost {
    pub fn zero() -> Cost {
        Cost::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Cost::Finite(r) => Some(r),
            Cost::Infinite => None,
        }
    }

    pub fn expect_finite(&self) -> &Rational {
        self.finite().expect("unexpected infinite cost")
    }

    /// `self + r`, with infinity absorbing.
    pub fn plus(&self, r: &Rational) -> Cost {
        match self {
            Cost::Finite(c) => Cost::Finite(c + r),
            Cost::Infinite => Cost::Infinite,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(r) => write!(f, "{}", r),
            Cost::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest rational strictly below `x` with denominator at most `max_den`.
pub fn largest_below(x: &Rational, max_den: u64) -> Rational {
    assert!(max_den >= 1);
    let mut best: Option<Rational> = None;
    for q in 1..=max_den {
        let q_big = BigInt::from(q);
        // largest p with p/q < x is ceil(x*q) - 1; div_rem truncates toward
        // zero, so only a positive inexact quotient needs no adjustment
        let prod_num = x.numer() * &q_big;
        let (quot, rem) = num::Integer::div_rem(&prod_num, x.denom());
        let p = if rem.is_zero() || prod_num.is_negative() {
            quot - 1
        } else {
            quot
        };
        let cand = Rational::from_big(p, q_big);
        if best.as_ref().is_none_or(|b| cand > *b) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

/// Smallest rational strictly above `x` with denominator at most `max_den`.
pub fn smallest_above(x: &Rational, max_den: u64) -> Rational {
    -largest_below(&-x, max_den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_exact_decimals() {
        assert_eq!("17.5".parse::<Rational>().unwrap(), rat(35, 2));
        assert_eq!("0.05".parse::<Rational>().unwrap(), rat(1, 20));
        assert_eq!("-1".parse::<Rational>().unwrap(), rat(-1, 1));
        assert_eq!("-0.25".parse::<Rational>().unwrap(), rat(-1, 4));
        assert_eq!("3/12".parse::<Rational>().unwrap(), rat(1, 4));
        assert_eq!("19".parse::<Rational>().unwrap(), Rational::from_int(19));
    }

    #[test]
    fn rejects_malformed_numbers() {
        assert!("".parse::<Rational>().is_err());
        assert!("1.2.3".parse::<Rational>().is_err());
        assert!("1e5".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/3".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
    }

    #[test]
    fn displays_in_lowest_terms() {
        assert_eq!(rat(4, 8).to_string(), "1/2");
        assert_eq!(rat(-6, 4).to_string(), "-3/2");
        assert_eq!(rat(14, 7).to_string(), "2");
        assert_eq!(rat(1, 3).to_string(), "1/3");
    }

    #[test]
    fn infinity_orders_above_everything() {
        assert!(Cost::Infinite > Cost::Finite(Rational::from_int(1_000_000)));
        assert!(Cost::Finite(rat(1, 2)) < Cost::Finite(rat(2, 3)));
        assert_eq!(Cost::Infinite.plus(&rat(5, 1)), Cost::Infinite);
    }

    #[test]
    fn pow_is_exact() {
        assert_eq!(rat(10, 9).pow(2), rat(100, 81));
        assert_eq!(rat(3, 2).pow(0), Rational::one());
    }

    #[test]
    fn farey_neighbors() {
        // largest p/q < 18 with q <= 100 is 1799/100
        assert_eq!(largest_below(&Rational::from_int(18), 100), rat(1799, 100));
        // smallest p/q > 1/3 with q <= 2 is 1/2
        assert_eq!(smallest_above(&rat(1, 3), 2), rat(1, 2));
        assert_eq!(smallest_above(&rat(-1, 2), 1), Rational::zero());
        assert_eq!(largest_below(&rat(35, 2), 2), rat(17, 1));
        assert_eq!(smallest_above(&rat(35, 2), 2), rat(18, 1));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..40).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn arithmetic_laws((a, b, c) in (arb_rational(), arb_rational(), arb_rational())) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn comparison_agrees_with_cross_multiplication(a in arb_rational(), b in arb_rational()) {
            let lhs = a.numer() * b.denom();
            let rhs = b.numer() * a.denom();
            prop_assert_eq!(a.cmp(&b), lhs.cmp(&rhs));
        }

        #[test]
        fn farey_below_is_adjacent(a in arb_rational()) {
            let d = 7u64;
            let below = largest_below(&a, d);
            prop_assert!(below < a);
            // nothing with denominator <= d lies strictly between
            let next = smallest_above(&below, d);
            prop_assert!(next >= a);
        }
    }
}
