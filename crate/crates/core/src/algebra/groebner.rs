//! Fraction-free Buchberger algorithm in lex or degree-lex order, plus the
//! shape-position step that turns a degree-lex basis into an eliminant.
//!
//! Monomials are packed into a `u64`, eight bits per variable with the most
//! significant variable in the high byte, so integer comparison is lex order.
//! In graded mode the total degree sits in one extra byte above the variables.
//! Coefficients are integers; every new basis element is made primitive.
//! Pair handling follows the Gebauer–Möller update with the sugar strategy.

use dashu::base::{Gcd, UnsignedAbs};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use std::collections::BTreeMap;

use super::mpoly::MPoly;
use super::upoly::RationalPoly;
use crate::error::{Error, Result};

pub const DEFAULT_TERM_CAP: usize = 5_000_000;
const MAX_VARS: usize = 8;
const MAX_EXP: u32 = 250;

type Mono = u64;

#[derive(Clone, Debug)]
struct IPoly {
    /// Terms in strictly decreasing monomial order.
    terms: Vec<(Mono, IBig)>,
    sugar: u32,
}

struct Ctx {
    nvars: usize,
    graded: bool,
}

impl Ctx {
    fn exp(&self, m: Mono, i: usize) -> u32 {
        ((m >> (8 * (self.nvars - 1 - i))) & 0xff) as u32
    }

    fn pack(&self, e: &[u32]) -> Result<Mono> {
        let mut m = 0u64;
        for &k in e {
            if k > MAX_EXP {
                return Err(Error::Resource(format!("exponent {k} exceeds packed monomial range")));
            }
            m = (m << 8) | k as u64;
        }
        let d: u32 = e.iter().sum();
        if self.graded {
            if d > MAX_EXP {
                return Err(Error::Resource(format!("degree {d} exceeds packed monomial range")));
            }
            m |= (d as u64) << (8 * self.nvars);
        }
        Ok(m)
    }

    fn unpack(&self, m: Mono) -> Vec<u32> {
        (0..self.nvars).map(|i| self.exp(m, i)).collect()
    }

    fn divides(&self, a: Mono, b: Mono) -> bool {
        (0..self.nvars).all(|i| self.exp(a, i) <= self.exp(b, i))
    }

    fn lcm(&self, a: Mono, b: Mono) -> Mono {
        let mut m = 0u64;
        let mut d = 0u64;
        for i in 0..self.nvars {
            let k = self.exp(a, i).max(self.exp(b, i)) as u64;
            d += k;
            m = (m << 8) | k;
        }
        if self.graded {
            m |= d << (8 * self.nvars);
        }
        m
    }

    fn disjoint(&self, a: Mono, b: Mono) -> bool {
        (0..self.nvars).all(|i| self.exp(a, i) == 0 || self.exp(b, i) == 0)
    }

    fn deg(&self, m: Mono) -> u32 {
        (0..self.nvars).map(|i| self.exp(m, i)).sum()
    }

    fn check(&self, m: Mono) -> Result<()> {
        if (0..self.nvars).any(|i| self.exp(m, i) > MAX_EXP) || (self.graded && self.deg(m) > MAX_EXP) {
            return Err(Error::Resource("exponent overflow in packed monomial".into()));
        }
        Ok(())
    }
}

fn content(terms: &[(Mono, IBig)]) -> UBig {
    let mut g = UBig::ZERO;
    for (_, c) in terms {
        g = super::real::gcd_ubig(&g, &c.unsigned_abs());
        if g == UBig::ONE {
            break;
        }
    }
    g
}

fn make_primitive(p: &mut IPoly) {
    if p.terms.is_empty() {
        return;
    }
    let g = IBig::from(content(&p.terms));
    let neg = p.terms[0].1 < IBig::ZERO;
    if g != IBig::ONE || neg {
        let g = if neg { -g } else { g };
        for t in p.terms.iter_mut() {
            t.1 = &t.1 / &g;
        }
    }
}

/// `a*f[from..] - b*m*g`, where both inputs are sorted decreasingly.
fn combine(f: &[(Mono, IBig)], a: &IBig, g: &[(Mono, IBig)], b: &IBig, m: Mono) -> Vec<(Mono, IBig)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() || j < g.len() {
        let gm = if j < g.len() { Some(g[j].0 + m) } else { None };
        match (f.get(i), gm) {
            (Some(ft), Some(gm)) if ft.0 == gm => {
                let c = a * &ft.1 - b * &g[j].1;
                if c != IBig::ZERO {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
            (Some(ft), Some(gm)) if ft.0 > gm => {
                out.push((ft.0, a * &ft.1));
                i += 1;
            }
            (Some(_), Some(gm)) | (None, Some(gm)) => {
                out.push((gm, -(b * &g[j].1)));
                j += 1;
            }
            (Some(ft), None) => {
                out.push((ft.0, a * &ft.1));
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

struct Engine {
    ctx: Ctx,
    polys: Vec<IPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    term_cap: usize,
}

impl Engine {
    fn lm(&self, i: usize) -> Mono {
        self.polys[i].terms[0].0
    }

    fn find_reducer(&self, m: Mono, basis: &[usize]) -> Option<usize> {
        basis.iter().copied().find(|&k| self.ctx.divides(self.lm(k), m))
    }

    /// Full reduction of `f` by the polynomials listed in `basis`.
    fn reduce(&self, mut f: IPoly, basis: &[usize]) -> Result<IPoly> {
        let mut i = 0;
        let mut steps = 0usize;
        while i < f.terms.len() {
            let (m, c) = f.terms[i].clone();
            let Some(k) = self.find_reducer(m, basis) else {
                i += 1;
                continue;
            };
            let g = &self.polys[k];
            let gm = g.terms[0].0;
            let lc = &g.terms[0].1;
            let gg = IBig::from((&c).unsigned_abs().gcd(lc.unsigned_abs()));
            let a = lc / &gg;
            let b = &c / &gg;
            let q = m - gm;
            self.ctx.check(q)?;
            let mut head: Vec<(Mono, IBig)> = f.terms[..i].iter().map(|(mm, cc)| (*mm, cc * &a)).collect();
            let tail = combine(&f.terms[i + 1..], &a, &g.terms[1..], &b, q);
            head.extend(tail);
            f.terms = head;
            f.sugar = f.sugar.max(g.sugar + self.ctx.deg(q));
            if f.terms.len() > self.term_cap {
                return Err(Error::Resource(format!("intermediate polynomial exceeds {} terms", self.term_cap)));
            }
            steps += 1;
            if steps.is_multiple_of(8) {
                make_primitive(&mut f);
            }
        }
        make_primitive(&mut f);
        Ok(f)
    }

    fn spoly(&self, p: &Pair) -> Result<IPoly> {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let (fm, fc) = (&f.terms[0].0, &f.terms[0].1);
        let (gm, gc) = (&g.terms[0].0, &g.terms[0].1);
        let gg = IBig::from(fc.unsigned_abs().gcd(gc.unsigned_abs()));
        let a = gc / &gg;
        let b = fc / &gg;
        let uf = p.lcm - fm;
        let ug = p.lcm - gm;
        self.ctx.check(uf)?;
        self.ctx.check(ug)?;
        let fs: Vec<(Mono, IBig)> = f.terms[1..].iter().map(|(m, c)| (m + uf, c.clone())).collect();
        let terms = combine(&fs, &a, &g.terms[1..], &b, ug);
        Ok(IPoly { terms, sugar: p.sugar })
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.ctx.lcm(self.lm(i), self.lm(j));
        let d = self.ctx.deg(lcm);
        let si = self.polys[i].sugar + d - self.ctx.deg(self.lm(i));
        let sj = self.polys[j].sugar + d - self.ctx.deg(self.lm(j));
        Pair { i, j, lcm, sugar: si.max(sj) }
    }

    /// Gebauer–Möller update after appending polynomial `h`.
    fn update(&mut self, h: usize) {
        let lh = self.lm(h);
        let mut c: Vec<Pair> = (0..h).filter(|&g| self.active[g]).map(|g| self.pair(g, h)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let keep = self.ctx.disjoint(lh, self.lm(p.i))
                || (!c.iter().any(|q| self.ctx.divides(q.lcm, p.lcm)) && !d.iter().any(|q| self.ctx.divides(q.lcm, p.lcm)));
            if keep {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|p| !self.ctx.disjoint(lh, self.lm(p.i))).collect();
        let ctx = &self.ctx;
        let polys = &self.polys;
        let lmf = |k: usize| polys[k].terms[0].0;
        self.pairs.retain(|p| !(ctx.divides(lh, p.lcm) && ctx.lcm(lmf(p.i), lh) != p.lcm && ctx.lcm(lh, lmf(p.j)) != p.lcm));
        self.pairs.extend(e);
        for g in 0..h {
            if self.active[g] && self.ctx.divides(lh, self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active.push(true);
    }

    fn add(&mut self, p: IPoly) {
        self.polys.push(p);
        let h = self.polys.len() - 1;
        self.update(h);
    }

    fn active_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.polys.len()).filter(|&k| self.active[k]).collect();
        v.sort_by_key(|&k| (self.lm(k), k));
        v
    }

    fn total_terms(&self) -> usize {
        self.active_indices().iter().map(|&k| self.polys[k].terms.len()).sum()
    }

    fn run(&mut self) -> Result<()> {
        while !self.pairs.is_empty() {
            let (best, _) = self.pairs.iter().enumerate().min_by_key(|(_, p)| (p.sugar, p.lcm, p.i, p.j)).unwrap();
            let p = self.pairs.swap_remove(best);
            let s = self.spoly(&p)?;
            if s.terms.is_empty() {
                continue;
            }
            let basis = self.active_indices();
            let h = self.reduce(s, &basis)?;
            if !h.terms.is_empty() {
                self.add(h);
                if self.total_terms() > self.term_cap {
                    return Err(Error::Resource(format!("basis exceeds {} terms", self.term_cap)));
                }
            }
        }
        Ok(())
    }

    /// Minimal, fully inter-reduced basis sorted by increasing leading monomial.
    fn reduced_basis(&self) -> Result<Vec<IPoly>> {
        let act = self.active_indices();
        let mut minimal: Vec<usize> = Vec::new();
        for &k in &act {
            let lk = self.lm(k);
            let dominated = act.iter().any(|&o| o != k && self.ctx.divides(self.lm(o), lk) && (self.lm(o) != lk || o < k));
            if !dominated {
                minimal.push(k);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for &k in &minimal {
            let others: Vec<usize> = minimal.iter().copied().filter(|&o| o != k).collect();
            let p = self.polys[k].clone();
            let head = IPoly { terms: p.terms[..1].to_vec(), sugar: p.sugar };
            let tail = IPoly { terms: p.terms[1..].to_vec(), sugar: p.sugar };
            let rt = self.reduce_keep_scale(head, tail, &others)?;
            out.push(rt);
        }
        out.sort_by_key(|p| p.terms[0].0);
        Ok(out)
    }

    /// Reduces the tail of `head + tail` while keeping the head monomial fixed.
    fn reduce_keep_scale(&self, head: IPoly, tail: IPoly, basis: &[usize]) -> Result<IPoly> {
        let mut f = IPoly { terms: head.terms.iter().chain(tail.terms.iter()).cloned().collect(), sugar: head.sugar };
        let mut i = 1;
        while i < f.terms.len() {
            let (m, c) = f.terms[i].clone();
            let Some(k) = self.find_reducer(m, basis) else {
                i += 1;
                continue;
            };
            let g = &self.polys[k];
            let lc = &g.terms[0].1;
            let gg = IBig::from((&c).unsigned_abs().gcd(lc.unsigned_abs()));
            let a = lc / &gg;
            let b = &c / &gg;
            let q = m - g.terms[0].0;
            let mut headv: Vec<(Mono, IBig)> = f.terms[..i].iter().map(|(mm, cc)| (*mm, cc * &a)).collect();
            headv.extend(combine(&f.terms[i + 1..], &a, &g.terms[1..], &b, q));
            f.terms = headv;
            if f.terms.len() > self.term_cap {
                return Err(Error::Resource(format!("intermediate polynomial exceeds {} terms", self.term_cap)));
            }
        }
        make_primitive(&mut f);
        Ok(f)
    }
}

/// Reduced lex Gröbner basis of a polynomial ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    /// Variable precedence, most significant first (indices into the input variables).
    pub order: Vec<usize>,
    /// Primitive integer-coefficient generators in the input variable indexing,
    /// sorted by increasing leading monomial.
    pub polys: Vec<MPoly<RBig>>,
    /// Degree-lex instead of pure lex.
    pub graded: bool,
    leading: Vec<Vec<u32>>,
}

impl GroebnerBasis {
    /// Leading exponent vectors (input indexing) of the basis elements.
    pub fn leading_exponents(&self) -> &[Vec<u32>] {
        &self.leading
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(|e| e.iter().all(|&k| k == 0))
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let n = self.order.len();
        (0..n).all(|v| self.leading.iter().any(|e| e[v] > 0 && e.iter().enumerate().all(|(j, &k)| j == v || k == 0)))
    }
}

/// Lex Gröbner basis with variable precedence `order` (first = largest).
pub fn groebner_lex(polys: &[MPoly<RBig>], order: &[usize], term_cap: usize) -> Result<GroebnerBasis> {
    groebner(polys, order, false, term_cap)
}

/// Reduced Gröbner basis in lex order (`graded == false`) or degree-lex order,
/// ties broken lexicographically by `order`.
pub fn groebner(polys: &[MPoly<RBig>], order: &[usize], graded: bool, term_cap: usize) -> Result<GroebnerBasis> {
    let (eng, red) = run_engine(polys, order, graded, term_cap)?;
    Ok(to_basis(&eng.ctx, order, &red))
}

fn run_engine(polys: &[MPoly<RBig>], order: &[usize], graded: bool, term_cap: usize) -> Result<(Engine, Vec<IPoly>)> {
    let nvars = order.len();
    let limit = if graded { MAX_VARS - 1 } else { MAX_VARS };
    if nvars == 0 || nvars > limit {
        return Err(Error::InvalidArgument(format!("unsupported variable count {nvars}")));
    }
    if polys.iter().any(|p| p.nvars() != nvars) {
        return Err(Error::InvalidArgument("variable count mismatch".into()));
    }
    let ctx = Ctx { nvars, graded };
    let mut inputs = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let mut lcm = UBig::ONE;
        for (_, c) in p.terms() {
            let d = c.denominator();
            let g = lcm.clone().gcd(d);
            lcm = &lcm / &g * d;
        }
        let l = RBig::from(IBig::from(lcm));
        let mut terms = Vec::with_capacity(p.len());
        for (e, c) in p.terms() {
            let internal: Vec<u32> = order.iter().map(|&v| e[v]).collect();
            terms.push((ctx.pack(&internal)?, (c * &l).numerator().clone()));
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let sugar = p.total_degree();
        let mut ip = IPoly { terms, sugar };
        make_primitive(&mut ip);
        inputs.push(ip);
    }
    inputs.sort_by_key(|p| (p.sugar, p.terms[0].0));
    let mut eng = Engine { ctx, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), term_cap };
    for p in inputs {
        let basis = eng.active_indices();
        let r = eng.reduce(p, &basis)?;
        if !r.terms.is_empty() {
            eng.add(r);
        }
    }
    eng.run()?;
    let red = eng.reduced_basis()?;
    Ok((eng, red))
}

fn to_basis(ctx: &Ctx, order: &[usize], red: &[IPoly]) -> GroebnerBasis {
    let nvars = order.len();
    let mut out = Vec::with_capacity(red.len());
    let mut leading = Vec::with_capacity(red.len());
    for p in red {
        let mut mp = MPoly::zero(nvars);
        for (k, (m, c)) in p.terms.iter().enumerate() {
            let internal = ctx.unpack(*m);
            let mut e = vec![0u32; nvars];
            for (j, &v) in order.iter().enumerate() {
                e[v] = internal[j];
            }
            if k == 0 {
                leading.push(e.clone());
            }
            mp.add_term(e, RBig::from(c.clone()));
        }
        out.push(mp);
    }
    GroebnerBasis { order: order.to_vec(), polys: out, graded: ctx.graded, leading }
}

/// Eliminant and linear relations read off a zero-dimensional ideal.
#[derive(Clone, Debug)]
pub struct Shape {
    pub basis: GroebnerBasis,
    /// Minimal polynomial of the kept variable modulo the ideal (not necessarily square-free).
    pub minimal: RationalPoly,
    /// For each input variable, `r` with `x - r(θ)` in the ideal; `None` for the kept
    /// variable and for variables that are not a polynomial in θ modulo the ideal.
    pub relations: Vec<Option<RationalPoly>>,
}

type Sparse = BTreeMap<Mono, RBig>;

struct NormalForm<'a> {
    ctx: &'a Ctx,
    /// Leading monomial and monic tail of each basis element.
    basis: Vec<(Mono, Vec<(Mono, RBig)>)>,
}

impl NormalForm<'_> {
    fn reduce(&self, mut f: Sparse) -> Sparse {
        let mut out = Sparse::new();
        while let Some((m, c)) = f.pop_last() {
            match self.basis.iter().find(|(lm, _)| self.ctx.divides(*lm, m)) {
                Some((lm, tail)) => {
                    let q = m - lm;
                    for (tm, tc) in tail {
                        let e = f.entry(tm + q).or_insert_with(|| RBig::ZERO);
                        *e -= &c * tc;
                        if *e == RBig::ZERO {
                            f.remove(&(tm + q));
                        }
                    }
                }
                None => {
                    out.insert(m, c);
                }
            }
        }
        out
    }
}

/// Echelon rows: vector, pivot, and its expression in powers of θ.
struct Echelon {
    rows: Vec<(Sparse, Mono, Vec<RBig>)>,
}

impl Echelon {
    /// Reduces `v` (which equals `combo` in powers of θ) and returns the remainder.
    fn reduce(&self, mut v: Sparse, mut combo: Vec<RBig>) -> (Sparse, Vec<RBig>) {
        for (row, piv, rc) in &self.rows {
            let Some(c) = v.get(piv).cloned() else { continue };
            let f = c / &row[piv];
            for (m, x) in row {
                let e = v.entry(*m).or_insert_with(|| RBig::ZERO);
                *e -= &f * x;
                if *e == RBig::ZERO {
                    v.remove(m);
                }
            }
            if combo.len() < rc.len() {
                combo.resize(rc.len(), RBig::ZERO);
            }
            for (k, x) in rc.iter().enumerate() {
                combo[k] -= &f * x;
            }
        }
        (v, combo)
    }
}

/// Degree-lex basis followed by a Krylov sweep of multiplication by the kept
/// variable on normal forms, which yields its minimal polynomial and every
/// relation `x = r(θ)` that holds modulo the ideal.
pub fn shape(polys: &[MPoly<RBig>], order: &[usize], keep: usize, term_cap: usize) -> Result<Shape> {
    let (eng, red) = run_engine(polys, order, true, term_cap)?;
    let basis = to_basis(&eng.ctx, order, &red);
    if basis.is_unit_ideal() {
        return Err(Error::InvalidArgument("system has no complex solutions".into()));
    }
    if !basis.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional);
    }
    let ctx = &eng.ctx;
    let nf = NormalForm {
        ctx,
        basis: red
            .iter()
            .map(|p| {
                let lc = RBig::from(p.terms[0].1.clone());
                let tail = p.terms[1..].iter().map(|(m, c)| (*m, RBig::from(c.clone()) / &lc)).collect();
                (p.terms[0].0, tail)
            })
            .collect(),
    };
    let nvars = order.len();
    let var_mono = |v: usize| -> Result<Mono> {
        let mut e = vec![0u32; nvars];
        e[order.iter().position(|&w| w == v).unwrap()] = 1;
        ctx.pack(&e)
    };
    let theta = var_mono(keep)?;
    let mut ech = Echelon { rows: Vec::new() };
    let mut power: Sparse = nf.reduce(Sparse::from([(0, RBig::ONE)]));
    let minimal = loop {
        let k = ech.rows.len();
        let mut combo = vec![RBig::ZERO; k + 1];
        combo[k] = RBig::ONE;
        let (rem, combo) = ech.reduce(power.clone(), combo);
        match rem.last_key_value() {
            None => break RationalPoly::new(combo),
            Some((&piv, _)) => ech.rows.push((rem, piv, combo)),
        }
        let shifted: Sparse = power.iter().map(|(m, c)| (m + theta, c.clone())).collect();
        ctx.check(theta + power.keys().next_back().copied().unwrap_or(0))?;
        power = nf.reduce(shifted);
    };
    let mut relations = Vec::with_capacity(nvars);
    for v in 0..nvars {
        if v == keep {
            relations.push(None);
            continue;
        }
        let x = nf.reduce(Sparse::from([(var_mono(v)?, RBig::ONE)]));
        let (rem, combo) = ech.reduce(x, Vec::new());
        relations.push(rem.is_empty().then(|| -RationalPoly::new(combo)));
    }
    Ok(Shape { basis, minimal, relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(c: &[i64], k: i64) -> MPoly<RBig> {
        let n = c.len();
        let mut p = MPoly::constant(n, RBig::from(k));
        for (i, &v) in c.iter().enumerate() {
            p = &p + &MPoly::var(n, i).scale(&RBig::from(v));
        }
        p
    }

    #[test]
    fn linear_system() {
        // A + B - 13, 3B - 4A - 12
        let g = groebner_lex(&[lin(&[1, 1], -13), lin(&[-4, 3], -12)], &[1, 0], DEFAULT_TERM_CAP).unwrap();
        assert!(g.is_zero_dimensional());
        let uni = g.polys[0].to_upoly(0).unwrap();
        assert_eq!(uni.integer_coeffs(), vec![IBig::from(-27), IBig::from(7)]);
    }

    #[test]
    fn circle_and_line() {
        let x = MPoly::<RBig>::var(2, 0);
        let y = MPoly::<RBig>::var(2, 1);
        let circle = &(&(&x * &x) + &(&y * &y)) - &MPoly::constant(2, RBig::from(1));
        let line = &x - &y;
        let g = groebner_lex(&[circle, line], &[0, 1], DEFAULT_TERM_CAP).unwrap();
        assert_eq!(g.polys.len(), 2);
        assert_eq!(g.polys[0].to_upoly(1).unwrap().integer_coeffs(), vec![IBig::from(-1), IBig::ZERO, IBig::from(2)]);
        assert!(g.is_zero_dimensional());
    }

    #[test]
    fn positive_dimensional_detected() {
        let x = MPoly::<RBig>::var(2, 0);
        let y = MPoly::<RBig>::var(2, 1);
        let g = groebner_lex(&[&x * &y], &[0, 1], DEFAULT_TERM_CAP).unwrap();
        assert!(!g.is_zero_dimensional());
    }

    #[test]
    fn unit_ideal() {
        let x = MPoly::<RBig>::var(1, 0);
        let g = groebner_lex(&[x.clone(), &x - &MPoly::one(1)], &[0], DEFAULT_TERM_CAP).unwrap();
        assert!(g.is_unit_ideal());
    }

    #[test]
    fn term_cap_is_enforced() {
        let x = MPoly::<RBig>::var(2, 0);
        let y = MPoly::<RBig>::var(2, 1);
        let f = &(&x * &x) - &(&y * &(&y * &y));
        let h = &(&x * &y) - &MPoly::one(2);
        assert!(matches!(groebner_lex(&[f, h], &[0, 1], 2), Err(Error::Resource(_))));
    }

    #[test]
    fn graded_basis_and_shape() {
        let x = MPoly::<RBig>::var(2, 0);
        let y = MPoly::<RBig>::var(2, 1);
        let f = &(&(&x * &x) + &(&y * &y)) - &MPoly::constant(2, RBig::from(5));
        let g = &(&x * &y) - &MPoly::constant(2, RBig::from(2));
        let gb = groebner(&[f.clone(), g.clone()], &[0, 1], true, DEFAULT_TERM_CAP).unwrap();
        assert!(gb.graded && gb.is_zero_dimensional());
        let sh = shape(&[f, g], &[0, 1], 1, DEFAULT_TERM_CAP).unwrap();
        // y⁴ − 5y² + 4 and x = (5y − y³)/2
        assert_eq!(sh.minimal.integer_coeffs(), vec![IBig::from(4), IBig::ZERO, IBig::from(-5), IBig::ZERO, IBig::from(1)]);
        let r = sh.relations[0].clone().unwrap();
        let half = |k: i64| RBig::from(k) / RBig::from(2);
        assert_eq!(r.coeffs(), &[RBig::ZERO, half(5), RBig::ZERO, half(-1)]);
        assert!(sh.relations[1].is_none());
    }

    #[test]
    fn shape_detects_non_separating_variable() {
        // x² = 1, y² = 1: y does not determine x.
        let x = MPoly::<RBig>::var(2, 0);
        let y = MPoly::<RBig>::var(2, 1);
        let one = MPoly::one(2);
        let sh = shape(&[&(&x * &x) - &one, &(&y * &y) - &one], &[0, 1], 1, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(sh.minimal.degree(), Some(2));
        assert!(sh.relations[0].is_none());
    }
}
