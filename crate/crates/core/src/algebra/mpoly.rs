//! Sparse multivariate polynomials over a generic coefficient ring.
//!
//! Terms are keyed by exponent vectors in a `BTreeMap`, so iteration follows
//! lexicographic order with variable 0 most significant; the last entry is the
//! lex-leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu::base::Sign;
use dashu::rational::RBig;

use super::real::{self, Real};
use super::upoly::RationalPoly;

/// Commutative ring operations required of polynomial coefficients.
pub trait Coeff: Clone + fmt::Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coeff for RBig {
    fn zero() -> Self {
        RBig::ZERO
    }
    fn one() -> Self {
        RBig::ONE
    }
    fn is_zero(&self) -> bool {
        RBig::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

impl Coeff for Real {
    fn zero() -> Self {
        Real::ZERO
    }
    fn one() -> Self {
        Real::ONE
    }
    fn is_zero(&self) -> bool {
        real::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

impl Coeff for RationalPoly {
    fn zero() -> Self {
        RationalPoly::zero()
    }
    fn one() -> Self {
        RationalPoly::one()
    }
    fn is_zero(&self) -> bool {
        RationalPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, C::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: Vec<u32>, c: C) {
        assert_eq!(e.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars])
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Vec<u32>, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))))
    }

    pub fn mul_monomial(&self, e: &[u32], c: &C) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v.mul(c))))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn eval(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.nvars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(xi);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replaces `x_i` by `q`.
    pub fn substitute(&self, i: usize, q: &Self) -> Self {
        let parts = self.as_univariate(i);
        let mut out = Self::zero(self.nvars);
        let mut qpow = Self::one(self.nvars);
        for part in parts {
            if !part.is_zero() {
                out = &out + &(&part * &qpow);
            }
            qpow = &qpow * q;
        }
        out
    }

    /// Coefficients with respect to `x_i`: entry `k` multiplies `x_i^k` and is free of `x_i`.
    pub fn as_univariate(&self, i: usize) -> Vec<Self> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Coefficients of `x_0 .. x_{n-1}` in the degree-one part.
    pub fn linear_part(&self) -> Vec<C> {
        (0..self.nvars)
            .map(|i| {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                self.coeff(&e)
            })
            .collect()
    }

    /// Terms of total degree at least two.
    pub fn nonlinear_part(&self) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() >= 2).map(|(e, c)| (e.clone(), c.clone())))
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == deg).map(|(e, c)| (e.clone(), c.clone())))
    }
}

impl MPoly<RBig> {
    /// Univariate view when only `x_i` occurs.
    pub fn to_upoly(&self, i: usize) -> Option<RationalPoly> {
        if self.support_vars().iter().any(|&j| j != i) {
            return None;
        }
        let d = self.degree_in(i) as usize;
        let mut c = vec![RBig::ZERO; d + 1];
        for (e, v) in &self.terms {
            c[e[i] as usize] = v.clone();
        }
        Some(RationalPoly::new(c))
    }

    pub fn from_upoly(nvars: usize, i: usize, p: &RationalPoly) -> Self {
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[i] = k as u32;
                (e, c.clone())
            }),
        )
    }

    pub fn to_real(&self, bits: usize) -> MPoly<Real> {
        self.map_coeffs(|c| real::from_rational(c, bits))
    }

    /// Exact quotient `self / d` in lex order, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((e, c)) = r.leading() {
            if e.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = c / &dc;
            r = &r - &d.mul_monomial(&qe, &qc);
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Rendering with variable names, lex-leading term first.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.sign() == Sign::Negative;
            let mag = real::rational_abs(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{}", names[i], k) })
                .collect();
            let ms = real::rational_string(&mag);
            if mono.is_empty() {
                out.push_str(&ms);
            } else {
                if !mag.is_one() {
                    if ms.contains('/') {
                        out.push_str(&format!("({ms})*"));
                    } else {
                        out.push_str(&ms);
                        out.push('*');
                    }
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: &MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: &MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: &MPoly<C>) -> MPoly<C> {
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca.mul(cb));
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        self.map_coeffs(|c| c.neg())
    }
}
