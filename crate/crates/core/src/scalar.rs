//! Exact arithmetic in the quartic field `Q(i, sqrt2)`.
//!
//! An element is stored as `a + b*sqrt2 + c*i + d*i*sqrt2` with rational
//! coordinates. The basis `{1, sqrt2, i, i*sqrt2}` is fixed, so two scalars
//! are equal exactly when their coordinates are.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::expr::{self, ParseError};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cannot invert zero")]
    DivisionByZero,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

/// `(x0 + x1*sqrt2) * (y0 + y1*sqrt2)` inside `Q(sqrt2)`.
fn qmul(x: (&Rational, &Rational), y: (&Rational, &Rational)) -> (Rational, Rational) {
    let two = Rational::from_integer(BigInt::from(2));
    (x.0 * y.0 + two * (x.1 * y.1), x.0 * y.1 + x.1 * y.0)
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn sqrt2() -> Self {
        Scalar { b: Rational::one(), ..Self::default() }
    }

    pub fn i() -> Self {
        Scalar { c: Rational::one(), ..Self::default() }
    }

    pub fn rational(a: Rational) -> Self {
        Scalar { a, ..Self::default() }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `1/sqrt2 = sqrt2/2`.
    pub fn inv_sqrt2() -> Self {
        Scalar { b: Rational::new(BigInt::from(1), BigInt::from(2)), ..Self::default() }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Multiplicative inverse.
    ///
    /// Writing `x = u + i*v` with `u, v` in `Q(sqrt2)`, the norm `u^2 + v^2`
    /// lies in the real field `Q(sqrt2)` and vanishes only for `x = 0`.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (uu0, uu1) = qmul((&self.a, &self.b), (&self.a, &self.b));
        let (vv0, vv1) = qmul((&self.c, &self.d), (&self.c, &self.d));
        let (p, q) = (uu0 + vv0, uu1 + vv1);
        let two = Rational::from_integer(BigInt::from(2));
        let denom = &p * &p - two * (&q * &q);
        let (n0, n1) = (&p / &denom, -(&q / &denom));
        let (a, b) = qmul((&self.a, &self.b), (&n0, &n1));
        let (c, d) = qmul((&self.c, &self.d), (&n0, &n1));
        Ok(Scalar { a, b, c: -c, d: -d })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Complex conjugate `i -> -i`.
    pub fn conj(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: self.b.clone(), c: -&self.c, d: -&self.d }
    }

    /// Number of nonzero coordinates.
    pub fn term_count(&self) -> usize {
        [&self.a, &self.b, &self.c, &self.d].iter().filter(|r| !r.is_zero()).count()
    }

    /// Parses the scalar grammar: rational literals, `sqrt2`, `i`, `+ - * /`,
    /// and parentheses.
    pub fn parse(text: &str) -> Result<Scalar, ParseError> {
        expr::parse_scalar(text)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical form `a + b*sqrt2 + c*i + d*i*sqrt2`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (coef, atom) in [(&self.a, ""), (&self.b, "sqrt2"), (&self.c, "i"), (&self.d, "i*sqrt2")] {
            if coef.is_zero() {
                continue;
            }
            let magnitude = coef.abs();
            let body = if atom.is_empty() {
                fmt_rational(&magnitude)
            } else if magnitude.is_one() {
                atom.to_string()
            } else {
                format!("{}*{}", fmt_rational(&magnitude), atom)
            };
            let negative = coef.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b, c: &self.c + &rhs.c, d: &self.d + &rhs.d }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b, c: &self.c - &rhs.c, d: &self.d - &rhs.d }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        // (u + i v)(u' + i v') = (u u' - v v') + i (u v' + v u')
        let u = (&self.a, &self.b);
        let v = (&self.c, &self.d);
        let u2 = (&rhs.a, &rhs.b);
        let v2 = (&rhs.c, &rhs.d);
        let (uu0, uu1) = qmul(u, u2);
        let (vv0, vv1) = qmul(v, v2);
        let (uv0, uv1) = qmul(u, v2);
        let (vu0, vu1) = qmul(v, u2);
        Scalar { a: uu0 - vv0, b: uu1 - vv1, c: uv0 + vu0, d: uv1 + vu1 }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Panics on division by zero, like integer division. Use
/// [`Scalar::checked_div`] when the divisor is not known to be nonzero.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self.c -= &rhs.c;
        self.d -= &rhs.d;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_literals() {
        assert_eq!(s("1/2 + (1/2)*sqrt2"), Scalar::new(q(1, 2), q(1, 2), q(0, 1), q(0, 1)));
        assert_eq!(s("-i*sqrt2/2"), Scalar::new(q(0, 1), q(0, 1), q(0, 1), q(-1, 2)));
        assert_eq!(s("0"), Scalar::zero());
    }

    #[test]
    fn products() {
        assert_eq!(Scalar::inv_sqrt2() * Scalar::inv_sqrt2(), Scalar::ratio(1, 2));
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::integer(-1));
        assert_eq!(s("1 + i*sqrt2") * s("1 - i*sqrt2"), Scalar::integer(3));
    }

    #[test]
    fn inverses() {
        assert_eq!(Scalar::sqrt2().inv().unwrap(), s("sqrt2/2"));
        assert_eq!(Scalar::i().inv().unwrap(), -Scalar::i());
        assert_eq!(s("1 + i").inv().unwrap(), s("(1 - i)/2"));
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = s("3/7 - 2*sqrt2 + 5*i - i*sqrt2/3");
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(s("-i*sqrt2/2").to_string(), "-1/2*i*sqrt2");
        assert_eq!(s("1/2 + (1/2)*sqrt2").to_string(), "1/2 + 1/2*sqrt2");
        assert_eq!(s("-1 - sqrt2 + i").to_string(), "-1 - sqrt2 + i");
        assert_eq!(s("2*i*sqrt2 - 4/6").to_string(), "-2/3 + 2*i*sqrt2");
    }

    #[test]
    fn division_by_zero_literal() {
        assert!(matches!("1/0".parse::<Scalar>(), Err(ParseError::DivisionByZero { .. })));
        assert!(matches!("i/(sqrt2 - sqrt2)".parse::<Scalar>(), Err(ParseError::DivisionByZero { .. })));
    }
}
