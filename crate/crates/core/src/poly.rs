//! Sparse multivariate polynomials over [`FieldElement`].
//!
//! Terms are keyed by exponent vectors in a `BTreeMap`, so iteration order is
//! lexicographic with `x₀` most significant; the last key is the lex-leading
//! monomial. Exact division and the GCD rely on that order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::field::{Field, FieldElement};

pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, FieldElement::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, FieldElement::one())
    }

    pub fn monomial(exp: Monomial, c: FieldElement) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), FieldElement::from_int(*c))))
    }

    pub fn add_term(&mut self, exp: Monomial, c: FieldElement) {
        assert_eq!(exp.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> FieldElement {
        self.terms.get(exp).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Is this a nonzero constant?
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_unit()
    }

    /// The smallest field containing all coefficients.
    pub fn field(&self) -> Field {
        self.terms
            .values()
            .filter_map(|c| c.radicand())
            .next()
            .map(Field::Quadratic)
            .unwrap_or(Field::Rational)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a nonzero term (the order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Divides by the lex-leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn mul_monomial(&self, exp: &[u32], c: &FieldElement) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), x * c))
                .filter(|(_, x): &(Monomial, FieldElement)| !x.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Drops all terms of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated at total degree `max_degree`, skipping high-degree pairs.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        let rhs: Vec<(u32, &Monomial, &FieldElement)> =
            other.terms.iter().map(|(e, c)| (e.iter().sum(), e, c)).collect();
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            if da > max_degree {
                continue;
            }
            for (db, eb, cb) in &rhs {
                if da + db > max_degree {
                    continue;
                }
                let e: Monomial = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * *cb);
            }
        }
        out
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[var] -= 1;
            out.add_term(f, c * &FieldElement::from_int(e[var] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.nvars);
        let mut acc = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Replaces `x_var` by `value` (a polynomial in the same ring); optional truncation.
    pub fn substitute(&self, var: usize, value: &Self, truncation: Option<u32>) -> Self {
        let maxdeg = self.degree_in(var).unwrap_or(0) as usize;
        let mut powers = vec![Self::one(self.nvars)];
        for k in 1..=maxdeg {
            let next = match truncation {
                Some(t) => powers[k - 1].mul_truncated(value, t),
                None => &powers[k - 1] * value,
            };
            powers.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var] as usize;
            rest[var] = 0;
            if let Some(t) = truncation {
                if rest.iter().sum::<u32>() > t {
                    continue;
                }
            }
            let mono = Self::monomial(rest, c.clone());
            let term = match truncation {
                Some(t) => mono.mul_truncated(&powers[k], t),
                None => &mono * &powers[k],
            };
            for (e, c) in term.terms {
                out.add_term(e, c);
            }
        }
        out
    }

    /// Coefficients with respect to `x_var`: entry `k` multiplies `x_var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var] as usize;
            rest[var] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lead_e, lead_c) = divisor.leading()?;
        let lead_inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if !re.iter().zip(lead_e).all(|(a, b)| a >= b) {
                return None;
            }
            let e: Monomial = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let c = rc * &lead_inv;
            rem = &rem - &divisor.mul_monomial(&e, &c);
            quot.add_term(e, c);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.exact_div(self).is_some()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        gcd_rec(self, other).monic()
    }

    /// Pseudo-remainder of `self` by `divisor` with respect to `x_var`.
    fn pseudo_rem(&self, divisor: &Self, var: usize) -> Self {
        let db = divisor.degree_in(var).unwrap_or(0);
        let bc = divisor.coefficients_in(var);
        let lb = &bc[db as usize];
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(var).unwrap_or(0);
            if dr < db {
                break;
            }
            let lr = r.coefficients_in(var).pop().expect("nonempty");
            let mut shift = vec![0; self.nvars];
            shift[var] = dr - db;
            let t = &lr * divisor;
            r = &(lb * &r) - &t.mul_monomial(&shift, &FieldElement::one());
        }
        r
    }
}

/// Content with respect to `x_var`: GCD of the coefficient polynomials.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.nvars);
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_unit() {
            return Polynomial::one(p.nvars);
        }
    }
    g
}

fn primitive_part_in(p: &Polynomial, var: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides")
}

/// Recursive primitive-PRS GCD, normalized to be monic.
fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let Some(var) = (0..n).rev().find(|&v| a.uses_var(v) || b.uses_var(v)) else {
        return Polynomial::one(n);
    };
    match (a.uses_var(var), b.uses_var(var)) {
        (true, false) => return gcd_rec(&content_in(a, var), b),
        (false, true) => return gcd_rec(a, &content_in(b, var)),
        _ => {}
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd_rec(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        let r = p.pseudo_rem(&q, var);
        p = q;
        q = primitive_part_in(&r, var);
        if q.is_zero() {
            break;
        }
        if !q.uses_var(var) {
            // remainder of degree 0 in var: primitive gcd is trivial
            return c.monic();
        }
    }
    let g = if p.uses_var(var) { primitive_part_in(&p, var) } else { Polynomial::one(n) };
    (&c * &g).monic()
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&FieldElement::from_int(-1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
