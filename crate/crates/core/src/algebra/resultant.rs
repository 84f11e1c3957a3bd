//! Sylvester resultants and iterated resultant elimination.

use dashu::base::{Gcd, UnsignedAbs};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::mpoly::MPoly;
use super::upoly::RationalPoly;
use crate::error::{Error, Result};

/// Resultant of `f` and `g` with respect to `x_var`, by fraction-free Bareiss
/// elimination of the Sylvester matrix.
pub fn resultant(f: &MPoly<RBig>, g: &MPoly<RBig>, var: usize) -> MPoly<RBig> {
    let n = f.nvars();
    let fc = f.as_univariate(var);
    let gc = g.as_univariate(var);
    if fc.is_empty() || gc.is_empty() {
        return MPoly::zero(n);
    }
    let m = fc.len() - 1;
    let k = gc.len() - 1;
    if m == 0 {
        return fc[0].pow(k as u32);
    }
    if k == 0 {
        return gc[0].pow(m as u32);
    }
    let size = m + k;
    let mut mat = vec![vec![MPoly::zero(n); size]; size];
    for r in 0..k {
        for (j, c) in fc.iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in gc.iter().rev().enumerate() {
            mat[k + r][r + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut a: Vec<Vec<MPoly<RBig>>>) -> MPoly<RBig> {
    let n = a.len();
    let nv = a[0][0].nvars();
    let mut sign = false;
    let mut prev = MPoly::one(nv);
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return MPoly::zero(nv);
            };
            a.swap(k, sw);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MPoly::zero(nv);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Divides out the rational content and fixes a positive lex-leading coefficient.
pub fn primitive_mpoly(p: &MPoly<RBig>) -> MPoly<RBig> {
    if p.is_zero() {
        return p.clone();
    }
    let mut lcm = UBig::ONE;
    for (_, c) in p.terms() {
        let d = c.denominator();
        let g = lcm.clone().gcd(d);
        lcm = &lcm / &g * d;
    }
    let l = RBig::from(IBig::from(lcm));
    let ints: Vec<IBig> = p.terms().map(|(_, c)| (c * &l).numerator().clone()).collect();
    let mut g = UBig::ZERO;
    for v in &ints {
        g = super::real::gcd_ubig(&g, &v.unsigned_abs());
    }
    let mut s = l / RBig::from(IBig::from(g));
    if p.leading().unwrap().1 < &RBig::ZERO {
        s = -s;
    }
    p.scale(&s)
}

fn elimination_run(polys: &[MPoly<RBig>], keep: usize, rotate: usize, term_cap: usize) -> Result<RationalPoly> {
    let nv = polys[0].nvars();
    let mut set: Vec<MPoly<RBig>> = polys.iter().filter(|p| !p.is_zero()).map(primitive_mpoly).collect();
    let mut first_nonlinear = true;
    loop {
        let mut best: Option<((u32, u32, usize, usize), usize, usize)> = None;
        for (pi, p) in set.iter().enumerate() {
            for v in 0..nv {
                if v == keep {
                    continue;
                }
                let d = p.degree_in(v);
                if d == 0 {
                    continue;
                }
                let lc_const = p.as_univariate(v).last().is_some_and(|c| c.total_degree() == 0);
                let rot = if first_nonlinear && d > 1 { (v + nv - rotate % nv) % nv } else { v };
                let key = (d, !lc_const as u32, p.len(), rot);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, pi, v));
                }
            }
        }
        let Some((key, pi, v)) = best else { break };
        if key.0 > 1 {
            first_nonlinear = false;
        }
        let pivot = set.remove(pi);
        let mut next = Vec::with_capacity(set.len());
        for q in set {
            let r = if q.degree_in(v) == 0 { q } else { resultant(&pivot, &q, v) };
            if r.is_zero() {
                continue;
            }
            if r.total_degree() == 0 {
                return Err(Error::InvalidArgument("inconsistent polynomial system".into()));
            }
            if r.len() > term_cap {
                return Err(Error::Resource(format!("resultant exceeds {term_cap} terms")));
            }
            next.push(primitive_mpoly(&r));
        }
        set = next;
        if set.is_empty() {
            return Err(Error::NotZeroDimensional);
        }
    }
    let mut g: Option<RationalPoly> = None;
    for p in &set {
        let u = p.to_upoly(keep).ok_or(Error::NotZeroDimensional)?;
        g = Some(match g {
            None => u,
            Some(h) => h.gcd(&u),
        });
    }
    let g = g.ok_or(Error::NotZeroDimensional)?;
    if g.degree().unwrap_or(0) == 0 {
        return Err(Error::NotZeroDimensional);
    }
    Ok(g)
}

/// Eliminates every variable except `keep` by iterated resultants. Several pivot
/// orders are tried and their results combined by gcd to strip extraneous
/// factors; the output is square-free with primitive integer coefficients.
pub fn eliminate_by_resultants(polys: &[MPoly<RBig>], keep: usize, term_cap: usize) -> Result<RationalPoly> {
    if polys.is_empty() {
        return Err(Error::NotZeroDimensional);
    }
    let nv = polys[0].nvars();
    let mut acc: Option<RationalPoly> = None;
    let mut last_err = None;
    for rot in 0..nv.max(1) {
        match elimination_run(polys, keep, rot, term_cap) {
            Ok(u) => {
                acc = Some(match acc {
                    None => u,
                    Some(h) => h.gcd(&u),
                })
            }
            Err(e) => last_err = Some(e),
        }
    }
    match acc {
        Some(a) => Ok(a.square_free()),
        None => Err(last_err.unwrap_or(Error::NotZeroDimensional)),
    }
}
