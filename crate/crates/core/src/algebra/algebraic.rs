//! Real algebraic numbers and arithmetic in `Q(θ)`.

use std::cmp::Ordering;
use std::fmt;

use dashu::base::UnsignedAbs;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::mpoly::MPoly;
use super::real::{self, Real};
use super::sturm::{self, isolate_real_roots, refine_interval, RootInterval};
use super::upoly::RationalPoly;
use crate::error::{Error, Result};

fn pow2_rational(k: isize) -> RBig {
    if k >= 0 {
        RBig::from(IBig::ONE << k as usize)
    } else {
        RBig::from_parts(IBig::ONE, UBig::ONE << (-k) as usize)
    }
}

/// A real root of a square-free integer polynomial, pinned by an isolating interval.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    poly: RationalPoly,
    interval: RootInterval,
    cache: Option<(usize, Real)>,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.cmp_value(other) == Ordering::Equal
    }
}

impl AlgebraicNumber {
    pub fn from_rational(r: RBig) -> Self {
        let poly = RationalPoly::new(vec![-r.clone(), RBig::ONE]).primitive();
        Self { poly, interval: RootInterval { lo: r.clone(), hi: r }, cache: None }
    }

    /// Root of `poly` inside `interval`, which must isolate exactly one root.
    pub fn new(poly: &RationalPoly, interval: RootInterval) -> Result<Self> {
        if poly.degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidArgument("defining polynomial must be non-constant".into()));
        }
        let sqf = poly.square_free();
        if interval.is_exact() {
            if sqf.sign_at(&interval.lo) != 0 {
                return Err(Error::InvalidArgument("point is not a root".into()));
            }
            return Ok(Self::from_rational(interval.lo));
        }
        let n = sturm::sturm_count(&sqf, &interval.lo, &interval.hi)?;
        if n != 1 {
            return Err(Error::MultipleRoot(format!("interval holds {n} distinct roots")));
        }
        Ok(Self { poly: sqf, interval, cache: None }.simplified())
    }

    /// All real roots of `p`, increasing.
    pub fn roots_of(p: &RationalPoly) -> Vec<Self> {
        let sqf = p.square_free();
        isolate_real_roots(&sqf).into_iter().map(|iv| Self { poly: sqf.clone(), interval: iv, cache: None }.simplified()).collect()
    }

    /// Replaces the representation by an exact rational when the root is rational
    /// and has a small height.
    fn simplified(mut self) -> Self {
        if self.interval.is_exact() {
            return self;
        }
        if self.poly.degree() == Some(1) {
            let r = -self.poly.coeff(0) / self.poly.coeff(1);
            return Self::from_rational(r);
        }
        let w = real::rational_abs(&self.interval.lo).max(real::rational_abs(&self.interval.hi)).max(RBig::ONE) * pow2_rational(-80);
        self.refine_to(&w);
        if self.interval.is_exact() {
            return Self::from_rational(self.interval.lo.clone());
        }
        let s = RBig::simplest_in(self.interval.lo.clone(), self.interval.hi.clone());
        if self.poly.sign_at(&s) == 0 {
            return Self::from_rational(s);
        }
        self
    }

    pub fn polynomial(&self) -> &RationalPoly {
        &self.poly
    }

    pub fn interval(&self) -> &RootInterval {
        &self.interval
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn as_rational(&self) -> Option<RBig> {
        self.interval.is_exact().then(|| self.interval.lo.clone())
    }

    /// Shrinks the isolating interval to at most `width`.
    pub fn refine_to(&mut self, width: &RBig) {
        if !self.interval.is_exact() && &self.interval.width() > width {
            self.interval = refine_interval(&self.poly, &self.interval, width);
        }
    }

    /// Value to `bits` of precision.
    pub fn value(&self, bits: usize) -> Real {
        if let Some((b, v)) = &self.cache {
            if *b >= bits {
                return v.clone().with_precision(bits).value();
            }
        }
        match &self.interval.is_exact() {
            true => real::from_rational(&self.interval.lo, bits),
            false => sturm::refine_root(&self.poly, &self.interval, bits).expect("isolating interval is valid"),
        }
    }

    /// Value to `bits` of precision, cached for later calls at equal or lower precision.
    pub fn approx(&mut self, bits: usize) -> Real {
        let v = self.value(bits);
        self.cache = Some((bits, v.clone()));
        v
    }

    pub fn to_f64(&self) -> f64 {
        real::to_f64(&self.value(64))
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let bits = (digits as f64 * 3.33) as usize + 64 + self.magnitude_bits();
        real::to_decimal(&self.value(bits), digits)
    }

    fn magnitude_bits(&self) -> usize {
        let m = real::rational_abs(&self.interval.hi).max(real::rational_abs(&self.interval.lo));
        m.to_f64().value().max(1.0).log2().ceil() as usize
    }

    /// Exact sign.
    pub fn sign(&self) -> i32 {
        self.cmp_rational(&RBig::ZERO) as i32
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &RBig) -> Ordering {
        if let Some(q) = self.as_rational() {
            return q.cmp(r);
        }
        let mut iv = self.interval.clone();
        if self.poly.sign_at(r) == 0 && iv.contains(r) {
            return Ordering::Equal;
        }
        loop {
            if &iv.hi <= r {
                return Ordering::Less;
            }
            if &iv.lo >= r {
                return Ordering::Greater;
            }
            let mid = iv.midpoint();
            let s = self.poly.sign_at(&mid);
            if s == 0 {
                return mid.cmp(r);
            }
            if s == self.poly.sign_at(&iv.lo) {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
    }

    /// Exact comparison with another algebraic number.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if let Some(q) = other.as_rational() {
            return self.cmp_rational(&q);
        }
        if let Some(q) = self.as_rational() {
            return other.cmp_rational(&q).reverse();
        }
        let g = self.poly.gcd(&other.poly);
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.interval.hi <= b.interval.lo {
                return Ordering::Less;
            }
            if b.interval.hi <= a.interval.lo {
                return Ordering::Greater;
            }
            if g.degree().unwrap_or(0) >= 1 {
                let lo = a.interval.lo.clone().max(b.interval.lo.clone());
                let hi = a.interval.hi.clone().min(b.interval.hi.clone());
                let both_inside = |x: &AlgebraicNumber| {
                    x.poly.sign_at(&lo) != 0 && x.poly.sign_at(&hi) != 0 && x.poly.sign_at(&lo) != x.poly.sign_at(&hi)
                };
                if lo < hi
                    && g.sign_at(&lo) != 0
                    && g.sign_at(&hi) != 0
                    && g.sign_at(&lo) != g.sign_at(&hi)
                    && both_inside(&a)
                    && both_inside(&b)
                {
                    return Ordering::Equal;
                }
            }
            let wa = a.interval.width() / RBig::from(2);
            let wb = b.interval.width() / RBig::from(2);
            a.refine_to(&wa);
            b.refine_to(&wb);
            if a.interval.is_exact() || b.interval.is_exact() {
                return a.cmp_value(&b);
            }
        }
    }

    /// For a quadratic root, the closed form `a + b*sqrt(d)` with square-free `d > 1`.
    pub fn quadratic_surd(&self) -> Option<QuadraticSurd> {
        if self.degree() != 2 {
            return None;
        }
        let c = self.poly.integer_coeffs();
        let (a2, a1, a0) = (&c[2], &c[1], &c[0]);
        let disc: IBig = a1 * a1 - IBig::from(4) * a2 * a0;
        if disc <= IBig::ZERO {
            return None;
        }
        let (s, d) = split_square(&disc.unsigned_abs());
        let denom = RBig::from(IBig::from(2) * a2);
        let center = RBig::from(-a1.clone()) / &denom;
        let coef = RBig::from(IBig::from(s)) / &denom;
        let sign = match self.cmp_rational(&center) {
            Ordering::Greater => 1,
            _ => -1,
        };
        let coef = if (sign > 0) == (coef > RBig::ZERO) { real::rational_abs(&coef) } else { -real::rational_abs(&coef) };
        Some(QuadraticSurd { rational: center, coefficient: coef, radicand: IBig::from(d) })
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => f.write_str(&real::rational_string(&r)),
            None => f.write_str(&self.to_decimal(20)),
        }
    }
}

/// `rational + coefficient * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub rational: RBig,
    pub coefficient: RBig,
    pub radicand: IBig,
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = real::rational_abs(&self.coefficient);
        let op = if self.coefficient < RBig::ZERO { "-" } else { "+" };
        write!(f, "{}{}({})*sqrt({})", real::rational_string(&self.rational), op, real::rational_string(&c), self.radicand)
    }
}

/// Writes `n = s^2 d` with `d` square-free (trial division up to 10^6, then a perfect-square test).
fn split_square(n: &UBig) -> (UBig, UBig) {
    let mut s = UBig::ONE;
    let mut d = n.clone();
    let mut p = 2u64;
    while p < 1_000_000 {
        let pp = UBig::from(p * p);
        if pp > d {
            break;
        }
        while (&d % &pp) == UBig::ZERO {
            d = &d / &pp;
            s *= UBig::from(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    use dashu::base::SquareRoot;
    let r = d.sqrt();
    if &r * &r == d {
        s *= &r;
        d = UBig::ONE;
    }
    (s, d)
}

/// `Q[x]/(f)` with a distinguished real root `θ` of the square-free `f`.
/// Elements are polynomials of degree below `deg f`; evaluation at `θ` is a ring
/// homomorphism, so identities checked here hold exactly at `θ`.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: RationalPoly,
    theta: AlgebraicNumber,
}

impl NumberField {
    pub fn new(modulus: &RationalPoly, theta: AlgebraicNumber) -> Result<Self> {
        let modulus = modulus.square_free();
        if let Some(r) = theta.as_rational() {
            if modulus.sign_at(&r) != 0 {
                return Err(Error::InvalidArgument("θ is not a root of the modulus".into()));
            }
            let theta = AlgebraicNumber::from_rational(r);
            return Ok(Self { modulus, theta });
        }
        let iv = theta.interval().clone();
        if sturm::sturm_count(&modulus, &iv.lo, &iv.hi)? != 1 || !theta.polynomial().gcd(&modulus).degree().is_some_and(|d| d >= 1) {
            return Err(Error::InvalidArgument("θ is not an isolated root of the modulus".into()));
        }
        let theta = AlgebraicNumber { poly: modulus.clone(), interval: iv, cache: None };
        Ok(Self { modulus, theta })
    }

    pub fn modulus(&self) -> &RationalPoly {
        &self.modulus
    }

    pub fn theta(&self) -> &AlgebraicNumber {
        &self.theta
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn reduce(&self, a: &RationalPoly) -> RationalPoly {
        a.rem(&self.modulus)
    }

    pub fn constant(&self, r: RBig) -> RationalPoly {
        RationalPoly::constant(r)
    }

    pub fn generator(&self) -> RationalPoly {
        self.reduce(&RationalPoly::x())
    }

    pub fn mul(&self, a: &RationalPoly, b: &RationalPoly) -> RationalPoly {
        self.reduce(&(a * b))
    }

    pub fn inverse(&self, a: &RationalPoly) -> Result<RationalPoly> {
        let (g, s, _) = a.ext_gcd(&self.modulus);
        if g.degree() != Some(0) {
            return Err(Error::InvalidArgument("element is not invertible".into()));
        }
        Ok(self.reduce(&s))
    }

    /// Evaluates a rational-coefficient polynomial at field elements.
    pub fn eval_mpoly(&self, p: &MPoly<RBig>, x: &[RationalPoly]) -> RationalPoly {
        let mut acc = RationalPoly::zero();
        for (e, c) in p.terms() {
            let mut t = RationalPoly::constant(c.clone());
            for (xi, &k) in x.iter().zip(e.iter()) {
                for _ in 0..k {
                    t = self.mul(&t, xi);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Whether `a(θ) = 0`, decided exactly even when the modulus is reducible.
    pub fn is_zero_at_theta(&self, a: &RationalPoly) -> bool {
        let a = self.reduce(a);
        if a.is_zero() {
            return true;
        }
        let g = a.gcd(&self.modulus);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        match self.theta.as_rational() {
            Some(r) => g.sign_at(&r) == 0,
            None => {
                let iv = self.theta.interval();
                g.sign_at(&iv.lo) != g.sign_at(&iv.hi)
            }
        }
    }

    /// Rational interval containing `a(θ)` with width at most `2^-bits * max(1, |a(θ)|)`.
    pub fn enclose(&self, a: &RationalPoly, bits: usize) -> (RBig, RBig) {
        let a = self.reduce(a);
        if let Some(r) = self.theta.as_rational() {
            let v = a.eval(&r);
            return (v.clone(), v);
        }
        let mut theta = self.theta.clone();
        let mut k = bits as isize + 8;
        loop {
            let w = pow2_rational(-k);
            theta.refine_to(&w);
            let iv = theta.interval();
            let (lo, hi) = if iv.is_exact() {
                let v = a.eval(&iv.lo);
                (v.clone(), v)
            } else {
                a.eval_interval(&iv.lo, &iv.hi)
            };
            let scale = real::rational_abs(&lo).max(real::rational_abs(&hi)).max(RBig::ONE);
            if &hi - &lo <= scale * pow2_rational(-(bits as isize)) {
                return (lo, hi);
            }
            k += 32;
        }
    }

    /// `a(θ)` to `bits` of precision.
    pub fn eval(&self, a: &RationalPoly, bits: usize) -> Real {
        if self.is_zero_at_theta(a) {
            return real::zero(bits);
        }
        let (lo, hi) = self.enclose(a, bits + 8);
        real::from_rational(&((lo + hi) / RBig::from(2)), bits)
    }

    /// Exact sign of `a(θ)`.
    pub fn sign(&self, a: &RationalPoly) -> i32 {
        if self.is_zero_at_theta(a) {
            return 0;
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.enclose(a, bits);
            if lo > RBig::ZERO {
                return 1;
            }
            if hi < RBig::ZERO {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Characteristic polynomial of multiplication by `a` (Faddeev–LeVerrier).
    pub fn charpoly(&self, a: &RationalPoly) -> RationalPoly {
        let d = self.degree();
        let mut basis_pow = RationalPoly::one();
        let mut cols: Vec<Vec<RBig>> = Vec::with_capacity(d);
        for _ in 0..d {
            let img = self.mul(a, &basis_pow);
            cols.push((0..d).map(|i| img.coeff(i)).collect());
            basis_pow = self.mul(&basis_pow, &RationalPoly::x());
        }
        let m: Vec<Vec<RBig>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        let mut c = vec![RBig::ZERO; d + 1];
        c[d] = RBig::ONE;
        let mut mk = vec![vec![RBig::ZERO; d]; d];
        for k in 1..=d {
            let mut next = vec![vec![RBig::ZERO; d]; d];
            for i in 0..d {
                for j in 0..d {
                    let mut s = if i == j { c[d - k + 1].clone() } else { RBig::ZERO };
                    for l in 0..d {
                        if !m[i][l].is_zero() && !mk[l][j].is_zero() {
                            s += &m[i][l] * &mk[l][j];
                        }
                    }
                    next[i][j] = s;
                }
            }
            mk = next;
            let mut tr = RBig::ZERO;
            for i in 0..d {
                for l in 0..d {
                    if !m[i][l].is_zero() && !mk[l][i].is_zero() {
                        tr += &m[i][l] * &mk[l][i];
                    }
                }
            }
            c[d - k] = -tr / RBig::from(k);
        }
        RationalPoly::new(c)
    }

    /// `a(θ)` as an algebraic number defined by the square-free part of its characteristic polynomial.
    pub fn to_algebraic(&self, a: &RationalPoly) -> AlgebraicNumber {
        let a = self.reduce(a);
        if a.degree().unwrap_or(0) == 0 {
            return AlgebraicNumber::from_rational(a.coeff(0));
        }
        if let Some(r) = self.theta.as_rational() {
            return AlgebraicNumber::from_rational(a.eval(&r));
        }
        let p = self.charpoly(&a).square_free();
        let mut cands = AlgebraicNumber::roots_of(&p);
        let mut bits = 32;
        loop {
            let (lo, hi) = self.enclose(&a, bits);
            let hits: Vec<usize> = (0..cands.len())
                .filter(|&i| {
                    let iv = cands[i].interval();
                    if iv.is_exact() {
                        lo <= iv.lo && iv.lo <= hi
                    } else {
                        iv.lo < hi && lo < iv.hi
                    }
                })
                .collect();
            if hits.len() == 1 {
                return cands.swap_remove(hits[0]);
            }
            let w = (&hi - &lo).max(pow2_rational(-(bits as isize)));
            for i in &hits {
                cands[*i].refine_to(&w);
            }
            bits *= 2;
        }
    }
}

/// Component-wise order of [`AlgebraicNumber`]s.
pub fn cmp_algebraic(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Ordering {
    a.cmp_value(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: u64) -> RBig {
        RBig::from_parts(IBig::from(p), UBig::from(d))
    }

    #[test]
    fn quadratic_surd_of_sqrt2() {
        let p = RationalPoly::from_ints(&[-2, 0, 1]);
        let roots = AlgebraicNumber::roots_of(&p);
        let s = roots[1].quadratic_surd().unwrap();
        assert_eq!(s.rational, RBig::ZERO);
        assert_eq!(s.coefficient, RBig::ONE);
        assert_eq!(s.radicand, IBig::from(2));
        let s0 = roots[0].quadratic_surd().unwrap();
        assert_eq!(s0.coefficient, RBig::from(-1));
    }

    #[test]
    fn rational_roots_are_recognised() {
        let p = RationalPoly::from_roots(&[q(27, 7), q(-1, 3), RBig::from(5)]);
        let roots = AlgebraicNumber::roots_of(&p);
        let vals: Vec<RBig> = roots.iter().map(|r| r.as_rational().unwrap()).collect();
        assert_eq!(vals, vec![q(-1, 3), q(27, 7), RBig::from(5)]);
    }

    #[test]
    fn comparisons() {
        let r2 = AlgebraicNumber::roots_of(&RationalPoly::from_ints(&[-2, 0, 1]))[1].clone();
        assert_eq!(r2.cmp_rational(&q(141, 100)), Ordering::Greater);
        assert_eq!(r2.cmp_rational(&q(142, 100)), Ordering::Less);
        let r2b = AlgebraicNumber::roots_of(&RationalPoly::from_ints(&[-8, 0, 0, 0, 2]))[1].clone();
        assert_eq!(r2.cmp_value(&r2b), Ordering::Equal);
        assert_eq!(r2.sign(), 1);
    }

    #[test]
    fn field_arithmetic_and_minimal_polynomial() {
        // θ = sqrt(2); (1 + θ)^2 = 3 + 2θ, minimal polynomial x^2 - 6x + 1
        let f = RationalPoly::from_ints(&[-2, 0, 1]);
        let theta = AlgebraicNumber::roots_of(&f)[1].clone();
        let k = NumberField::new(&f, theta).unwrap();
        let a = &RationalPoly::one() + &k.generator();
        let sq = k.mul(&a, &a);
        assert_eq!(sq, RationalPoly::from_ints(&[3, 2]));
        assert_eq!(k.charpoly(&sq).primitive(), RationalPoly::from_ints(&[1, -6, 1]));
        let alg = k.to_algebraic(&sq);
        assert!((alg.to_f64() - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        let inv = k.inverse(&a).unwrap();
        assert_eq!(k.mul(&inv, &a), RationalPoly::one());
        assert_eq!(k.sign(&(&k.generator() - &RationalPoly::constant(q(3, 2)))), -1);
    }

    #[test]
    fn zero_test_in_reducible_algebra() {
        // modulus (x-1)(x-2) with θ = 2: the element x-2 vanishes at θ though nonzero mod f
        let f = RationalPoly::from_ints(&[2, -3, 1]);
        let theta = AlgebraicNumber::roots_of(&f)[1].clone();
        let k = NumberField::new(&f, theta).unwrap();
        let e = RationalPoly::from_ints(&[-2, 1]);
        assert!(k.is_zero_at_theta(&e));
        assert_eq!(k.sign(&RationalPoly::from_ints(&[-1, 1])), 1);
    }
}
