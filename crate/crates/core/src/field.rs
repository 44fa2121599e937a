//! Exact scalars: rationals and elements of a real quadratic field ℚ(√d).
//!
//! A document fixes at most one square-free `d`; elements with `b = 0`
//! collapse to plain rationals and mix freely with any `d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

pub type Rational = BigRational;

/// Builds a rational from a numerator and a nonzero denominator.
pub fn q(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn qi(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Number(s.to_string());
    if s.is_empty() || s.len() > 4096 {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_bigint(num).ok_or_else(bad)?;
    let den = match den {
        Some(d) => parse_bigint(d).ok_or_else(bad)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_bigint(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// Canonical string for a rational: `"p"` or `"p/q"`.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Is `d` a square-free integer ≥ 2?
pub fn is_squarefree(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// The coefficient field declared by a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Quadratic(u64),
}

impl Field {
    pub fn quadratic(d: u64) -> Result<Self, ParseError> {
        if is_squarefree(d) {
            Ok(Field::Quadratic(d))
        } else {
            Err(ParseError::Field(format!("d = {d} is not a square-free integer >= 2")))
        }
    }

    pub fn radicand(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Quadratic(d) => Some(*d),
        }
    }

    /// Does `x` belong to this field?
    pub fn contains(&self, x: &FieldElement) -> bool {
        match (self, x.radicand()) {
            (_, None) => true,
            (Field::Quadratic(d), Some(e)) => *d == e,
            (Field::Rational, Some(_)) => false,
        }
    }

    /// Parses a coefficient string, checking that any radicand matches this field.
    pub fn parse(&self, s: &str) -> Result<FieldElement, ParseError> {
        let x: FieldElement = s.parse()?;
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(ParseError::Field(format!("coefficient {s:?} lies outside the declared field")))
        }
    }

    /// Field generated by two fields, when it exists.
    pub fn join(self, other: Field) -> Option<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Some(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Some(self),
            _ => None,
        }
    }
}

/// `a + b√d` with exact rational `a`, `b`.
///
/// Canonical form: `d == 0` iff `b == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
    d: u64,
}

impl FieldElement {
    pub fn rational(a: Rational) -> Self {
        FieldElement { a, b: Rational::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(qi(n))
    }

    /// `a + b√d`; panics unless `d` is square-free (callers validate radicands at parse time).
    pub fn quadratic(a: Rational, b: Rational, d: u64) -> Self {
        assert!(is_squarefree(d), "radicand {d} is not square-free");
        let mut x = FieldElement { a, b, d };
        x.normalize();
        x
    }

    /// `√d`.
    pub fn sqrt(d: u64) -> Self {
        Self::quadratic(Rational::zero(), Rational::one(), d)
    }

    fn normalize(&mut self) {
        if self.b.is_zero() {
            self.d = 0;
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> Option<u64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    fn common_d(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, e) | (e, 0) => e,
            (a, b) if a == b => a,
            (a, b) => panic!("mixing quadratic fields Q(sqrt({a})) and Q(sqrt({b}))"),
        }
    }

    /// Conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        FieldElement { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm `a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * qi(self.d as i64)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        let mut r = FieldElement { a: c.a / &n, b: c.b / &n, d: c.d };
        r.normalize();
        Some(r)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let a = rational_to_f64(&self.a);
        if self.d == 0 {
            a
        } else {
            a + rational_to_f64(&self.b) * (self.d as f64).sqrt()
        }
    }

    /// Sign of the real number `a + b√d`, computed exactly.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if self.d == 0 || sb == Ordering::Equal {
            return sa;
        }
        if sa == sb || sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a² with d b²
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * qi(self.d as i64);
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl From<Rational> for FieldElement {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Real-number order (exact).
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let d = self.common_d(rhs);
        let mut r = FieldElement { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d };
        r.normalize();
        r
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let d = self.common_d(rhs);
        let mut r = FieldElement { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d };
        r.normalize();
        r
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let d = self.common_d(rhs);
        if d == 0 {
            return FieldElement::rational(&self.a * &rhs.a);
        }
        let a = &self.a * &rhs.a + &self.b * &rhs.b * qi(d as i64);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        let mut r = FieldElement { a, b, d };
        r.normalize();
        r
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self * &rhs.inv().expect("division by zero field element")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -self.clone()
    }
}

impl fmt::Display for FieldElement {
    /// `"p/q"` or `"p/q+r/s*sqrt(d)"` (`-` replaces `+` for a negative irrational part).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt({})", self.a, sign, self.b.abs(), self.d)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FieldElement {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        let bad = || ParseError::Number(s.to_string());
        let Some(body) = s.strip_suffix(')') else {
            return Ok(FieldElement::rational(parse_rational(s)?));
        };
        let (head, radicand) = body.rsplit_once("*sqrt(").ok_or_else(bad)?;
        let d: u64 = radicand.parse().map_err(|_| bad())?;
        if !is_squarefree(d) {
            return Err(ParseError::Field(format!("radicand {d} is not square-free")));
        }
        // split `a±b` at the first sign that is neither leading nor part of `+-`
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'+' | b'-'))
            .ok_or_else(bad)?;
        let a = parse_rational(&head[..split])?;
        let (sign, rest) = head[split..].split_at(1);
        // tolerate `a+-b`
        let mut b = parse_rational(rest)?;
        if sign == "-" {
            b = -b;
        }
        Ok(FieldElement::quadratic(a, b, d))
    }
}
