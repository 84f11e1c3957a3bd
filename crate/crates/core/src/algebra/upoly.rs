//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu::base::{Gcd, Sign, UnsignedAbs};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::real::{self, Real};

/// Polynomial `sum c[k] x^k` over the rationals; `coeffs[k]` is the coefficient of `x^k`.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<RBig>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RBig::ONE)
    }

    pub fn constant(c: RBig) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![RBig::ZERO, RBig::ONE])
    }

    pub fn monomial(c: RBig, k: usize) -> Self {
        let mut v = vec![RBig::ZERO; k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn new(mut coeffs: Vec<RBig>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From integer coefficients in ascending order.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| RBig::from(v)).collect())
    }

    pub fn from_ibigs(c: &[IBig]) -> Self {
        Self::new(c.iter().map(|v| RBig::from(v.clone())).collect())
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[RBig]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| &acc * &Self::new(vec![-r.clone(), RBig::ONE]))
    }

    pub fn coeffs(&self) -> &[RBig] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RBig {
        self.coeffs.get(k).cloned().unwrap_or(RBig::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> RBig {
        self.coeffs.last().cloned().unwrap_or(RBig::ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &RBig) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = RBig::ONE / self.leading();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * RBig::from(k)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Euclidean division: returns `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc_inv = RBig::ONE / d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![RBig::ZERO; r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = &r[k] * &lc_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &f * dc;
                r[k - dd + j] -= t;
            }
            q[k - dd] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = RBig::ONE / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Square-free part `p / gcd(p, p')`, returned primitive.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) < 1 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.primitive()
    }

    /// Yun's square-free factorization: `(multiplicity, factor)` pairs with
    /// monic square-free, pairwise coprime factors. Constants are dropped.
    pub fn square_free_decomposition(&self) -> Vec<(usize, Self)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) < 1 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) >= 1 {
                out.push((i, a.clone()));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) < 1 {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Integer content-free form with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        Self::from_ibigs(&self.integer_coeffs())
    }

    /// Coprime integer coefficients of a positive rational multiple with positive leading coefficient.
    pub fn integer_coeffs(&self) -> Vec<IBig> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = UBig::ONE;
        for c in &self.coeffs {
            let d = c.denominator();
            let g = lcm.clone().gcd(d);
            lcm = &lcm / &g * d;
        }
        let l = IBig::from(lcm);
        let mut ints: Vec<IBig> = self.coeffs.iter().map(|c| (c * RBig::from(l.clone())).numerator().clone()).collect();
        let mut g = UBig::ZERO;
        for v in &ints {
            g = real::gcd_ubig(&g, &v.unsigned_abs());
        }
        let g = IBig::from(g);
        let neg = ints.last().unwrap() < &IBig::ZERO;
        for v in ints.iter_mut() {
            *v = &*v / &g;
            if neg {
                *v = -v.clone();
            }
        }
        ints
    }

    pub fn eval(&self, x: &RBig) -> RBig {
        let mut acc = RBig::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact sign of `p(x)`.
    pub fn sign_at(&self, x: &RBig) -> i32 {
        real::rational_sign(&self.eval(x))
    }

    pub fn eval_real(&self, x: &Real, bits: usize) -> Real {
        let mut acc = real::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &real::from_rational(c, bits);
        }
        acc
    }

    /// Interval Horner enclosure of `p` over `[lo, hi]`.
    pub fn eval_interval(&self, lo: &RBig, hi: &RBig) -> (RBig, RBig) {
        let mut acc = (RBig::ZERO, RBig::ZERO);
        for c in self.coeffs.iter().rev() {
            let cands = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mut mn = cands[0].clone();
            let mut mx = cands[0].clone();
            for v in &cands[1..] {
                if v < &mn {
                    mn = v.clone();
                }
                if v > &mx {
                    mx = v.clone();
                }
            }
            acc = (mn + c, mx + c);
        }
        acc
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    /// Cauchy bound: every complex root has modulus strictly below the returned value.
    pub fn cauchy_bound(&self) -> RBig {
        let lc = real::rational_abs(&self.leading());
        let mut m = RBig::ZERO;
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let a = real::rational_abs(c) / &lc;
            if a > m {
                m = a;
            }
        }
        m + RBig::ONE
    }

    /// Resultant by the Euclidean algorithm over the rationals.
    pub fn resultant(&self, other: &Self) -> RBig {
        let (Some(mut m), Some(mut n)) = (self.degree(), other.degree()) else {
            return RBig::ZERO;
        };
        let mut a = self.clone();
        let mut b = other.clone();
        let mut res = RBig::ONE;
        loop {
            if n == 0 {
                return res * b.leading().pow(m);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return RBig::ZERO;
            }
            let k = r.degree().unwrap();
            if m % 2 == 1 && n % 2 == 1 {
                res = -res;
            }
            res *= b.leading().pow(m - k);
            a = b;
            b = r;
            m = n;
            n = k;
        }
    }

    /// Discriminant `(-1)^(n(n-1)/2) res(p, p') / lc(p)`, equal to `lc^(2n-2) prod (r_i - r_j)^2`.
    pub fn discriminant(&self) -> RBig {
        let n = self.degree().unwrap_or(0);
        if n < 1 {
            return RBig::ZERO;
        }
        let r = self.resultant(&self.derivative()) / self.leading();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// Real coefficients at the requested precision.
    pub fn to_reals(&self, bits: usize) -> Vec<Real> {
        self.coeffs.iter().map(|c| real::from_rational(c, bits)).collect()
    }

    /// Human-readable rendering in the named variable, highest power first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Negative;
            let mag = real::rational_abs(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let ms = real::rational_string(&mag);
            let ms = if ms.contains('/') && k > 0 { format!("({ms})") } else { ms };
            match k {
                0 => out.push_str(&ms),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&ms);
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![RBig::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: RationalPoly) -> RationalPoly {
        &self + &rhs
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: RationalPoly) -> RationalPoly {
        &self - &rhs
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: RationalPoly) -> RationalPoly {
        &self * &rhs
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        -&self
    }
}
