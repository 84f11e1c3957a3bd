//! All complex roots of a real polynomial by Aberth–Ehrlich iteration:
//! a double-precision pass for starting points, then big-float polishing.
//! Used for root clustering only; exact verdicts come from Sturm sequences.

use std::cmp::Ordering;

use super::real::{self, Real};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn norm2(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    fn div(&self, o: &Self) -> Option<Self> {
        let d = o.norm2();
        if real::is_zero(&d) {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) / &d;
        let im = (&self.im * &o.re - &self.re * &o.im) / &d;
        Some(Self::new(re, im))
    }

    pub fn abs(&self) -> Real {
        real::sqrt(&self.norm2())
    }
}

#[derive(Clone, Copy, Debug)]
struct C64(f64, f64);

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C64) -> C64 {
        C64(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C64) -> C64 {
        C64(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C64) -> C64 {
        let d = o.0 * o.0 + o.1 * o.1;
        C64((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

fn horner64(c: &[f64], z: C64) -> (C64, C64) {
    let mut p = C64(0.0, 0.0);
    let mut dp = C64(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(C64(a, 0.0));
    }
    (p, dp)
}

fn horner(c: &[Real], z: &Complex, bits: usize) -> (Complex, Complex) {
    let mut p = Complex::new(real::zero(bits), real::zero(bits));
    let mut dp = p.clone();
    for a in c.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z);
        p.re = &p.re + a;
    }
    (p, dp)
}

fn aberth64(c: &[f64]) -> Vec<C64> {
    let n = c.len() - 1;
    let lead = c[n];
    let bound = 1.0 + c[..n].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
    // Fujiwara-style radius keeps starting points near the roots' scale.
    let radius = (0..n).map(|k| (c[k] / lead).abs().powf(1.0 / (n - k) as f64)).fold(0.0, f64::max).max(f64::MIN_POSITIVE).min(bound);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            C64(radius * t.cos(), radius * t.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner64(c, z[k]);
            if p.abs() == 0.0 {
                continue;
            }
            let w = p.div(dp);
            let mut s = C64(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    s = s.add(C64(1.0, 0.0).div(z[k].sub(z[j])));
                }
            }
            let step = w.div(C64(1.0, 0.0).sub(w.mul(s)));
            if step.0.is_finite() && step.1.is_finite() {
                z[k] = z[k].sub(step);
                moved = moved.max(step.abs() / z[k].abs().max(radius));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Roots of `Σ c_k x^k` (ascending, real coefficients, nonzero leading term),
/// sorted by real then imaginary part.
pub fn complex_roots(coeffs: &[Real], bits: usize) -> Result<Vec<Complex>> {
    let mut c: Vec<Real> = coeffs.to_vec();
    while c.last().is_some_and(real::is_zero) {
        c.pop();
    }
    if c.len() < 2 {
        return Ok(Vec::new());
    }
    let n = c.len() - 1;
    let work = bits + 32;
    let c: Vec<Real> = c.into_iter().map(|x| x.with_precision(work).value()).collect();
    let cf: Vec<f64> = c.iter().map(real::to_f64).collect();
    if cf.iter().any(|x| !x.is_finite()) {
        return Err(Error::Precision("coefficients exceed double range for root seeding".into()));
    }
    let mut z: Vec<Complex> =
        aberth64(&cf).into_iter().map(|s| Complex::new(real::from_f64(s.0, work).unwrap(), real::from_f64(s.1, work).unwrap())).collect();
    let one = Complex::new(real::from_int(1, work), real::zero(work));
    let eps = real::pow2(-(bits as isize), work);
    for _ in 0..(bits + 100) {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = horner(&c, &z[k], work);
            if real::is_zero(&p.norm2()) {
                continue;
            }
            let Some(w) = p.div(&dp) else { continue };
            let mut s = Complex::new(real::zero(work), real::zero(work));
            for j in 0..n {
                if j != k {
                    if let Some(t) = one.div(&z[k].sub(&z[j])) {
                        s = s.add(&t);
                    }
                }
            }
            let Some(step) = w.div(&one.sub(&w.mul(&s))) else { continue };
            z[k] = z[k].sub(&step);
            let scale = z[k].abs().max(real::from_int(1, work));
            if step.abs() > &eps * &scale {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    z.sort_by(|a, b| match a.re.partial_cmp(&b.re) {
        Some(Ordering::Equal) | None => a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal),
        Some(o) => o,
    });
    Ok(z.into_iter().map(|r| Complex::new(r.re.with_precision(bits).value(), r.im.with_precision(bits).value())).collect())
}

/// Group of roots lying within `radius` of each other (single linkage).
#[derive(Clone, Debug)]
pub struct RootCluster {
    pub center: Complex,
    pub size: usize,
}

pub fn cluster_roots(roots: &[Complex], radius: &Real) -> Vec<RootCluster> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while l[r] != r {
            r = l[r];
        }
        l[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if roots[i].sub(&roots[j]).abs() < *radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<(usize, RootCluster)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match out.iter_mut().find(|(k, _)| *k == r) {
            Some((_, c)) => {
                c.center = c.center.add(&roots[i]);
                c.size += 1;
            }
            None => out.push((r, RootCluster { center: roots[i].clone(), size: 1 })),
        }
    }
    out.into_iter()
        .map(|(_, mut c)| {
            let k = real::from_int(c.size as i64, 64);
            c.center = Complex::new(&c.center.re / &k, &c.center.im / &k);
            c
        })
        .collect()
}
