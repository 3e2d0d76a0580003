use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::CoreError;

/// Exact rational scalar.
///
/// `BigRational` keeps the reduced normal form this crate relies on:
/// positive denominator, gcd(|numerator|, denominator) = 1, zero stored as
/// 0/1. Construction through any arithmetic path re-reduces.
pub type Rational = BigRational;

/// Shorthand for a rational from an integer pair. Panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `p/q` token with explicit denominator, e.g. `-1/2`, `0/1`.
pub fn rational_token(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the canonical `p/q` token (also accepts a bare integer `p`).
pub fn parse_rational(tok: &str) -> Result<Rational, CoreError> {
    let bad = || CoreError::InvalidData(format!("malformed rational token `{tok}`"));
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Exact element of ℚ(√3), stored as `a + b·√3` with rational components.
///
/// Since √3 is irrational, two values are equal iff their components are;
/// the value is rational iff `b = 0`. This two-component form is the whole
/// field extension the E₆ coordinate model needs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticScalar {
    pub a: Rational,
    pub b: Rational,
}

impl QuadraticScalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadraticScalar { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadraticScalar { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(ratio(n, 1))
    }

    /// `b·√3` with rational `b`.
    pub fn sqrt3_multiple(b: Rational) -> Self {
        QuadraticScalar { a: Rational::zero(), b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational part when `b = 0`; `None` otherwise.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Multiplicative inverse; `None` for zero.
    ///
    /// (a + b√3)⁻¹ = (a − b√3) / (a² − 3b²); the norm a² − 3b² is nonzero
    /// for nonzero elements because 3 is not a rational square.
    pub fn inverse(&self) -> Option<QuadraticScalar> {
        if self.is_zero() {
            return None;
        }
        let three = ratio(3, 1);
        let norm = &self.a * &self.a - three * &self.b * &self.b;
        debug_assert!(!norm.is_zero());
        Some(QuadraticScalar {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
        })
    }
}

impl fmt::Display for QuadraticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt3", self.b)
        } else if self.b.is_negative() {
            write!(f, "{}{}*sqrt3", self.a, self.b)
        } else {
            write!(f, "{}+{}*sqrt3", self.a, self.b)
        }
    }
}

impl Add for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn add(self, rhs: &QuadraticScalar) -> QuadraticScalar {
        QuadraticScalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn sub(self, rhs: &QuadraticScalar) -> QuadraticScalar {
        QuadraticScalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn mul(self, rhs: &QuadraticScalar) -> QuadraticScalar {
        // (a + b√3)(c + d√3) = ac + 3bd + (ad + bc)√3
        let three = ratio(3, 1);
        QuadraticScalar {
            a: &self.a * &rhs.a + three * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn neg(self) -> QuadraticScalar {
        QuadraticScalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl AddAssign<&QuadraticScalar> for QuadraticScalar {
    fn add_assign(&mut self, rhs: &QuadraticScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Zero for QuadraticScalar {
    fn zero() -> Self {
        QuadraticScalar {
            a: Rational::zero(),
            b: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        QuadraticScalar::is_zero(self)
    }
}

impl Add for QuadraticScalar {
    type Output = QuadraticScalar;
    fn add(self, rhs: QuadraticScalar) -> QuadraticScalar {
        &self + &rhs
    }
}

impl One for QuadraticScalar {
    fn one() -> Self {
        QuadraticScalar::from_int(1)
    }
}

impl Mul for QuadraticScalar {
    type Output = QuadraticScalar;
    fn mul(self, rhs: QuadraticScalar) -> QuadraticScalar {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_normal_form() {
        let r = ratio(6, -4);
        assert_eq!(r, ratio(-3, 2));
        assert_eq!(rational_token(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn quadratic_arithmetic() {
        // (√3/2 + 1/2·i-th unit)·… check (√3/2)² = 3/4 via multiplication
        let s = QuadraticScalar::sqrt3_multiple(ratio(1, 2));
        let sq = &s * &s;
        assert_eq!(sq, QuadraticScalar::from_rational(ratio(3, 4)));
        assert!(sq.is_rational());
        assert!(!s.is_rational());

        let x = QuadraticScalar::new(ratio(1, 2), ratio(-1, 3));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, QuadraticScalar::from_int(1));
        assert!(QuadraticScalar::zero().inverse().is_none());
    }

    #[test]
    fn equality_is_componentwise() {
        // 1 + 0·√3 ≠ 0 + (1/√3)·…: no hidden identification of a and b parts.
        let one = QuadraticScalar::from_int(1);
        let root = QuadraticScalar::sqrt3_multiple(ratio(1, 3));
        assert_ne!(one, root);
    }
}
