//! Sturm sequences, real-root isolation and certified root refinement.

use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::real::{self, Real};
use super::upoly::RationalPoly;
use crate::error::{Error, Result};

/// Sign of an integer-coefficient polynomial at a rational point, computed
/// without rational normalization: `sign(sum c_i a^i b^(d-i))` for `x = a/b`.
pub(crate) fn int_sign_at(c: &[IBig], x: &RBig) -> i32 {
    if c.is_empty() {
        return 0;
    }
    let a = x.numerator();
    let b = IBig::from(x.denominator().clone());
    let d = c.len() - 1;
    let mut bpow = IBig::ONE;
    let mut acc = c[d].clone();
    for i in (0..d).rev() {
        bpow *= &b;
        acc = acc * a + &c[i] * &bpow;
    }
    real::rational_sign(&RBig::from(acc))
}

/// Positive-content integer form that preserves the sign of the polynomial.
fn signed_ints(p: &RationalPoly) -> Vec<IBig> {
    let mut ints = p.integer_coeffs();
    if p.leading() < RBig::ZERO {
        for v in ints.iter_mut() {
            *v = -v.clone();
        }
    }
    ints
}

/// Chain `p, p', -rem(p, p'), ...`, each term stored with content removed.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Vec<IBig>>,
}

impl SturmSequence {
    pub fn new(p: &RationalPoly) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return Self { chain };
        }
        let mut a = RationalPoly::from_ibigs(&signed_ints(p));
        let mut b = a.derivative();
        chain.push(signed_ints(&a));
        while !b.is_zero() {
            let bi = signed_ints(&b);
            chain.push(bi.clone());
            let bn = RationalPoly::from_ibigs(&bi);
            let r = -&a.rem(&bn);
            a = bn;
            b = r;
        }
        Self { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Terms of the chain as rational polynomials.
    pub fn terms(&self) -> Vec<RationalPoly> {
        self.chain.iter().map(|c| RationalPoly::from_ibigs(c)).collect()
    }

    fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut n = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    pub fn variations_at(&self, x: &RBig) -> usize {
        Self::count_changes(self.chain.iter().map(|c| int_sign_at(c, x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_changes(self.chain.iter().map(|c| real::rational_sign(&RBig::from(c.last().unwrap().clone()))))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_changes(self.chain.iter().map(|c| {
            let s = real::rational_sign(&RBig::from(c.last().unwrap().clone()));
            if (c.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn total_real_roots(&self) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

fn nudge_string(x: &RBig) -> String {
    let eps = RBig::from_parts(IBig::ONE, UBig::from(1_000_000u32));
    real::rational_string(&(x - eps))
}

/// Number of distinct real roots of `p` in `(lo, hi]`; neither endpoint may be a root.
pub fn sturm_count(p: &RationalPoly, lo: &RBig, hi: &RBig) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    if lo >= hi {
        return Err(Error::InvalidArgument("empty interval".into()));
    }
    for e in [lo, hi] {
        if p.sign_at(e) == 0 {
            return Err(Error::EndpointIsRoot { endpoint: real::rational_string(e), nudge: nudge_string(e) });
        }
    }
    let s = SturmSequence::new(p);
    Ok(s.variations_at(lo) - s.variations_at(hi))
}

/// Open interval `(lo, hi)` holding exactly one real root, or the exact root when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: RBig,
    pub hi: RBig,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> RBig {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> RBig {
        (&self.lo + &self.hi) / RBig::from(2)
    }

    pub fn contains(&self, x: &RBig) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }
}

/// Picks a split point of `(lo, hi)` where `p` does not vanish.
fn split_point(ints: &[IBig], lo: &RBig, hi: &RBig) -> RBig {
    let w = hi - lo;
    for (num, den) in [(1u32, 2u32), (1, 3), (2, 3), (1, 5), (4, 5), (3, 7), (4, 7)] {
        let x = lo + &w * RBig::from_parts(IBig::from(num), UBig::from(den));
        if int_sign_at(ints, &x) != 0 {
            return x;
        }
    }
    let mut k = 11u32;
    loop {
        let x = lo + &w * RBig::from_parts(IBig::from(k / 2), UBig::from(k));
        if int_sign_at(ints, &x) != 0 {
            return x;
        }
        k += 2;
    }
}

/// Isolating intervals for the distinct real roots of `p`, in increasing order.
pub fn isolate_real_roots(p: &RationalPoly) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) < 1 {
        return Vec::new();
    }
    let sqf = p.square_free();
    let ints = sqf.integer_coeffs();
    let seq = SturmSequence::new(&sqf);
    let b = sqf.cauchy_bound();
    let lo = -b.clone();
    let hi = b;
    let mut out = Vec::new();
    let total = seq.variations_at(&lo) - seq.variations_at(&hi);
    let mut stack = vec![(lo, hi, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mid = split_point(&ints, &lo, &hi);
        let vm = seq.variations_at(&mid);
        let left = seq.variations_at(&lo) - vm;
        stack.push((mid.clone(), hi, n - left));
        stack.push((lo, mid, left));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Bisects an isolating interval of a square-free `p` until its width is at most `width`.
pub fn refine_interval(p: &RationalPoly, iv: &RootInterval, width: &RBig) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let ints = p.square_free().integer_coeffs();
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = int_sign_at(&ints, &lo);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / RBig::from(2);
        let s = int_sign_at(&ints, &mid);
        if s == 0 {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootInterval { lo, hi }
}

/// Refines the simple root isolated by `iv` to `bits` of relative precision.
///
/// Bisection brings the bracket down to double precision, Newton steps in
/// big-float arithmetic finish, and the result is accepted only after an exact
/// sign change is confirmed across `x ± 2^-bits |x|`; otherwise bisection resumes.
pub fn refine_root(p: &RationalPoly, iv: &RootInterval, bits: usize) -> Result<Real> {
    if iv.is_exact() {
        if p.sign_at(&iv.lo) != 0 {
            return Err(Error::InvalidArgument("exact interval is not a root".into()));
        }
        return Ok(real::from_rational(&iv.lo, bits));
    }
    let ints = signed_ints(p);
    let slo = int_sign_at(&ints, &iv.lo);
    let shi = int_sign_at(&ints, &iv.hi);
    if slo == 0 || shi == 0 {
        let e = if slo == 0 { &iv.lo } else { &iv.hi };
        return Err(Error::EndpointIsRoot { endpoint: real::rational_string(e), nudge: nudge_string(e) });
    }
    if slo == shi || sturm_count(p, &iv.lo, &iv.hi)? != 1 {
        return Err(Error::MultipleRoot(format!("({}, {})", real::rational_string(&iv.lo), real::rational_string(&iv.hi))));
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let two = RBig::from(2);
    let bisect_to = |lo: &mut RBig, hi: &mut RBig, rel_bits: usize| -> Option<RBig> {
        loop {
            let scale = real::rational_abs(lo).max(real::rational_abs(hi)).max(RBig::ONE);
            let tol = scale / RBig::from(IBig::ONE << rel_bits);
            if (&*hi - &*lo) <= tol {
                return None;
            }
            let mid = (&*lo + &*hi) / &two;
            let s = int_sign_at(&ints, &mid);
            if s == 0 {
                return Some(mid);
            }
            if s == slo {
                *lo = mid;
            } else {
                *hi = mid;
            }
        }
    };
    if let Some(exact) = bisect_to(&mut lo, &mut hi, 50) {
        return Ok(real::from_rational(&exact, bits));
    }
    let work = bits + 32;
    let dp = p.derivative();
    let mut x = real::from_rational(&((&lo + &hi) / &two), work);
    let lo_r = real::from_rational(&lo, work);
    let hi_r = real::from_rational(&hi, work);
    for _ in 0..(2 * (bits as f64).log2().ceil() as usize + 8) {
        let fx = p.eval_real(&x, work);
        let dfx = dp.eval_real(&x, work);
        if real::is_zero(&dfx) {
            break;
        }
        let nx = &x - &(&fx / &dfx);
        if nx <= lo_r || nx >= hi_r {
            break;
        }
        let done = real::abs(&(&nx - &x)) <= &real::abs(&nx) * &real::pow2(-(work as isize), work);
        x = nx;
        if done {
            break;
        }
    }
    let xr = real::to_rational(&x);
    let scale = real::rational_abs(&xr).max(RBig::ONE);
    let delta = scale / RBig::from(IBig::ONE << (bits + 2));
    let a = &xr - &delta;
    let b = &xr + &delta;
    if a > lo && b < hi {
        let sa = int_sign_at(&ints, &a);
        let sb = int_sign_at(&ints, &b);
        if sa == slo && sb == shi {
            return Ok(x.with_precision(bits).value());
        }
    }
    if let Some(exact) = bisect_to(&mut lo, &mut hi, bits + 2) {
        return Ok(real::from_rational(&exact, bits));
    }
    Ok(real::from_rational(&((&lo + &hi) / &two), bits))
}
