//! Membership in the domain of real, non-degenerate spectra, the closed-form
//! boundaries near EP3 and EP4, derivative factorizations in terms of extremum
//! spacings, and boundary search along rays.

use std::fmt;

use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use crate::algebra::mpoly::MPoly;
use crate::algebra::real::{self, Real};
use crate::algebra::roots::{cluster_roots, complex_roots, RootCluster};
use crate::algebra::sturm::{isolate_real_roots, refine_root, SturmSequence};
use crate::algebra::upoly::RationalPoly;
use crate::charpoly::{evaluate_charpoly, evaluate_charpoly_real, symbolic_charpoly};
use crate::epn::{cached_epn, shifted_secular};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumTag {
    RealSimple,
    RealDegenerate,
    ComplexPresent,
}

impl SpectrumTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumTag::RealSimple => "RealSimple",
            SpectrumTag::RealDegenerate => "RealDegenerate",
            SpectrumTag::ComplexPresent => "ComplexPresent",
        }
    }
}

impl fmt::Display for SpectrumTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumClass {
    pub tag: SpectrumTag,
    pub degree: usize,
    /// Real roots counted with multiplicity.
    pub real_root_count: usize,
    /// Distinct real roots.
    pub distinct_root_count: usize,
}

/// Exact classification of a polynomial's roots (Yun decomposition and Sturm counts).
pub fn classify_poly(p: &RationalPoly) -> SpectrumClass {
    let degree = p.degree().unwrap_or(0);
    let mut real_root_count = 0;
    let mut distinct_root_count = 0;
    for (mult, f) in p.square_free_decomposition() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let r = SturmSequence::new(&f).total_real_roots();
        real_root_count += mult * r;
        distinct_root_count += r;
    }
    let tag = if distinct_root_count == degree {
        SpectrumTag::RealSimple
    } else if real_root_count == degree {
        SpectrumTag::RealDegenerate
    } else {
        SpectrumTag::ComplexPresent
    };
    SpectrumClass { tag, degree, real_root_count, distinct_root_count }
}

/// Classifies the spectrum of H⁽ᴺ⁾ at rational couplings.
pub fn classify(n: usize, couplings: &[RBig]) -> Result<SpectrumClass> {
    Ok(classify_poly(&evaluate_charpoly(n, couplings)?))
}

/// Big-float couplings are promoted to their exact binary rational values first.
pub fn classify_real(n: usize, couplings: &[Real]) -> Result<SpectrumClass> {
    let q: Vec<RBig> = couplings.iter().map(real::to_rational).collect();
    classify(n, &q)
}

pub fn classify_f64(n: usize, couplings: &[f64]) -> Result<SpectrumClass> {
    let q = couplings.iter().map(|&c| real::rational_from_f64(c)).collect::<Result<Vec<_>>>()?;
    classify(n, &q)
}

/// Smallest gap between consecutive real roots; zero at a real multiple root,
/// `None` with fewer than two real roots.
pub fn min_real_root_gap(p: &RationalPoly, bits: usize) -> Result<Option<Real>> {
    for (mult, f) in p.square_free_decomposition() {
        if mult > 1 && f.degree().unwrap_or(0) > 0 && SturmSequence::new(&f).total_real_roots() > 0 {
            return Ok(Some(real::zero(bits)));
        }
    }
    let sf = p.square_free();
    let roots = isolate_real_roots(&sf).iter().map(|iv| refine_root(&sf, iv, bits)).collect::<Result<Vec<_>>>()?;
    Ok(roots.windows(2).map(|w| &w[1] - &w[0]).min_by(|a, b| a.partial_cmp(b).unwrap()))
}

/// Groups the eigenvalues at big-float couplings into clusters of radius
/// `radius`; cluster sizes above one mark (near-)degeneracies.
pub fn root_clusters(n: usize, couplings: &[Real], radius: &Real, bits: usize) -> Result<Vec<RootCluster>> {
    let c = evaluate_charpoly_real(n, couplings, bits)?;
    let roots = complex_roots(&c, bits)?;
    Ok(cluster_roots(&roots, radius))
}

fn q(p: i64, d: u64) -> RBig {
    RBig::from_parts(IBig::from(p), UBig::from(d))
}

/// Admissible interval `n_lo < n < n_hi` near EP3 at fixed `p = (m+n)/3`.
#[derive(Clone, Debug)]
pub struct Lemma1Bounds {
    pub p: RBig,
    pub n_lo: Real,
    pub n_hi: Real,
    /// `m < 27/7`, `n < 64/7` keep the matrix real; jointly they force `p < 13/3`.
    pub within_caps: bool,
}

/// Real-matrix caps `(m_max, n_max, p_max) = (27/7, 64/7, 13/3)`.
pub fn lemma1_caps() -> (RBig, RBig, RBig) {
    (q(27, 7), q(64, 7), q(13, 3))
}

/// `(2p/7)(6 ∓ √p)`. At `n_lo` the upper doublet degenerates, at `n_hi` the lower one.
pub fn lemma1_bounds(p: &RBig, bits: usize) -> Result<Lemma1Bounds> {
    if real::rational_sign(p) <= 0 {
        return Err(Error::InvalidArgument("p must be positive".into()));
    }
    let work = bits + 16;
    let pr = real::from_rational(p, work);
    let s = real::sqrt(&pr);
    let f = &(&pr * &real::from_int(2, work)) / &real::from_int(7, work);
    let six = real::from_int(6, work);
    let n_lo = (&f * &(&six - &s)).with_precision(bits).value();
    let n_hi = (&f * &(&six + &s)).with_precision(bits).value();
    Ok(Lemma1Bounds { p: p.clone(), n_lo, n_hi, within_caps: *p < lemma1_caps().2 })
}

/// Couplings `(A, B) = (27/7 − m, 64/7 − n)` with `m = 3p − n`.
pub fn lemma1_couplings(p: &RBig, n: &RBig) -> [RBig; 2] {
    let m = p * RBig::from(3) - n;
    [q(27, 7) - m, q(64, 7) - n]
}

/// How the secular coefficients are read off the factorized derivative.
///
/// `Secular` matches φ′ = N·Π(x − xᵢ) for φ = xᴺ + Σ c_k xᵏ, so the spacings
/// are the true extremum positions. `Monic` equates c_k with the coefficient
/// of x^(k−1) in Π(x − xᵢ), dropping the N/k factors; this is the form in
/// which the N = 4 eliminations, the N = 5 w/m eliminations and the EP4
/// corridor slope are usually displayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Secular,
    Monic,
}

/// Spacing parameters of the N−1 extrema of the secular polynomial.
///
/// N = 3: `a` (extrema ±a). N = 4: `a, b` (−(2a+b), a, a+b).
/// N = 5: `a, b, c` with c < a (−(2a+b−c), −c, a, a+b).
/// N ≥ 6: the N−2 consecutive gaps, centred so that the extrema sum to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremumParams {
    pub n: usize,
    pub spacings: Vec<RBig>,
}

pub fn spacing_count(n: usize) -> usize {
    match n {
        3 => 1,
        4 => 2,
        5 => 3,
        _ => n - 2,
    }
}

pub fn spacing_names(n: usize) -> Vec<String> {
    match n {
        3 => vec!["a".into()],
        4 => vec!["a".into(), "b".into()],
        5 => vec!["a".into(), "b".into(), "c".into()],
        _ => (1..=n - 2).map(|i| format!("d{i}")).collect(),
    }
}

impl ExtremumParams {
    pub fn new(n: usize, spacings: Vec<RBig>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("extremum parametrization needs N ≥ 3".into()));
        }
        let want = spacing_count(n);
        if spacings.len() != want {
            return Err(Error::InvalidArgument(format!("N = {n} takes {want} spacings, got {}", spacings.len())));
        }
        if spacings.iter().any(|s| real::rational_sign(s) < 0) {
            return Err(Error::InvalidArgument("spacings must be nonnegative".into()));
        }
        if n == 5 && spacings[2] >= spacings[0] {
            return Err(Error::InvalidArgument("N = 5 requires c < a".into()));
        }
        Ok(Self { n, spacings })
    }

    /// Same spacings multiplied by `lambda`.
    pub fn scaled(&self, lambda: &RBig) -> Self {
        Self { n: self.n, spacings: self.spacings.iter().map(|s| s * lambda).collect() }
    }

    /// Extremum positions in increasing order.
    pub fn extrema(&self) -> Vec<RBig> {
        let (_, polys) = extrema_mpoly(self.n);
        let mut x: Vec<RBig> = polys.iter().map(|p| p.eval(&self.spacings)).collect();
        x.sort();
        x
    }
}

/// Extremum positions as linear forms in the spacing variables.
pub fn extrema_mpoly(n: usize) -> (Vec<String>, Vec<MPoly<RBig>>) {
    let names = spacing_names(n);
    let k = names.len();
    let v = |i: usize| MPoly::<RBig>::var(k, i);
    let xs = match n {
        3 => vec![-&v(0), v(0)],
        4 => {
            let (a, b) = (v(0), v(1));
            vec![-&(&(&a + &a) + &b), a.clone(), &a + &b]
        }
        5 => {
            let (a, b, c) = (v(0), v(1), v(2));
            vec![-&(&(&(&a + &a) + &b) - &c), -&c, a.clone(), &a + &b]
        }
        _ => {
            let mut first = MPoly::zero(k);
            for i in 0..k {
                first = &first - &v(i).scale(&(RBig::from((n - 2 - i) as i64) / RBig::from((n - 1) as i64)));
            }
            let mut xs = vec![first];
            for i in 0..k {
                let next = xs.last().unwrap() + &v(i);
                xs.push(next);
            }
            xs
        }
    };
    (names, xs)
}

/// Secular coefficients implied by the extrema, as polynomials in the
/// spacing variables; `result[k]` multiplies xᵏ for k = 1 … N−2.
/// Entries 0 (free constant term) and N−1 (identically zero) are zero, entry N is one.
pub fn derivative_coefficients_mpoly(n: usize, convention: Convention) -> (Vec<String>, Vec<MPoly<RBig>>) {
    let (names, xs) = extrema_mpoly(n);
    let k = names.len();
    let mut prod: Vec<MPoly<RBig>> = vec![MPoly::one(k)];
    for x in &xs {
        let mut next = vec![MPoly::zero(k); prod.len() + 1];
        for (j, c) in prod.iter().enumerate() {
            next[j + 1] = &next[j + 1] + c;
            next[j] = &next[j] - &(c * x);
        }
        prod = next;
    }
    let mut out = vec![MPoly::zero(k); n + 1];
    for kk in 1..n - 1 {
        let c = &prod[kk - 1];
        out[kk] = match convention {
            Convention::Secular => c.scale(&(RBig::from(n as i64) / RBig::from(kk as i64))),
            Convention::Monic => c.clone(),
        };
    }
    out[n] = MPoly::one(k);
    (names, out)
}

#[derive(Clone, Debug)]
pub struct DerivativeFactorization {
    pub n: usize,
    pub convention: Convention,
    pub extrema: Vec<RBig>,
    /// φ′/N = Π(x − xᵢ).
    pub derivative: RationalPoly,
    /// Implied secular coefficients; index k multiplies xᵏ, index 0 is the free constant (reported as 0).
    pub coefficients: Vec<RBig>,
    /// N = 3: φ′/3 = x² − p. N = 4: φ′/4 = x³ − 3p·x + 2q.
    pub p: Option<RBig>,
    pub q: Option<RBig>,
}

pub fn derivative_factorization(params: &ExtremumParams, convention: Convention) -> Result<DerivativeFactorization> {
    let n = params.n;
    ExtremumParams::new(n, params.spacings.clone())?;
    let extrema = params.extrema();
    let derivative = RationalPoly::from_roots(&extrema);
    let (_, polys) = derivative_coefficients_mpoly(n, convention);
    let coefficients: Vec<RBig> = polys.iter().map(|p| p.eval(&params.spacings)).collect();
    let (p, q) = match n {
        3 => (Some(-derivative.coeff(0)), None),
        4 => (Some(-derivative.coeff(1) / RBig::from(3)), Some(derivative.coeff(0) / RBig::from(2))),
        _ => (None, None),
    };
    Ok(DerivativeFactorization { n, convention, extrema, derivative, coefficients, p, q })
}

/// Linear parts (in the shifts) of the E^(N−2) and E^(N−3) coefficients.
/// Coupling X_k = EPN_k − s_k flips the sign of every linear coefficient.
fn top_rows(n: usize) -> Result<(Vec<RBig>, Vec<RBig>)> {
    let s = symbolic_charpoly(n)?;
    let row = |k: usize| -> Vec<RBig> { s.coeffs[k].linear_part().into_iter().map(|c| -c).collect() };
    Ok((row(n - 2), row(n - 3)))
}

/// The N = 5 eliminations of `w` and `m` as polynomials in (a, b, c, n, v).
#[derive(Clone, Debug)]
pub struct N5Eliminations {
    pub convention: Convention,
    pub w: MPoly<RBig>,
    pub m: MPoly<RBig>,
}

impl N5Eliminations {
    pub const VARS: [&'static str; 5] = ["a", "b", "c", "n", "v"];

    pub fn eval(&self, a: &RBig, b: &RBig, c: &RBig, n: &RBig, v: &RBig) -> (RBig, RBig) {
        let x = [a.clone(), b.clone(), c.clone(), n.clone(), v.clone()];
        (self.w.eval(&x), self.m.eval(&x))
    }
}

pub fn n5_eliminations(convention: Convention) -> Result<N5Eliminations> {
    let (r1, r2) = top_rows(5)?;
    let (_, coeffs) = derivative_coefficients_mpoly(5, convention);
    let lift = |p: &MPoly<RBig>| MPoly::from_terms(5, p.terms().map(|(e, c)| (vec![e[0], e[1], e[2], 0, 0], c.clone())));
    let nv = MPoly::<RBig>::var(5, 3);
    let vv = MPoly::<RBig>::var(5, 4);
    // shifts are (m, n, v, w) = indices 0..3
    let rhs = |row: &[RBig], t: &MPoly<RBig>| &(&lift(t) - &nv.scale(&row[1])) - &vv.scale(&row[2]);
    let t1 = rhs(&r1, &coeffs[3]);
    let t2 = rhs(&r2, &coeffs[2]);
    let det = &r1[0] * &r2[3] - &r1[3] * &r2[0];
    if det == RBig::ZERO {
        return Err(Error::Domain("w/m elimination is singular".into()));
    }
    let inv = RBig::ONE / det;
    let m = (&t1.scale(&r2[3]) - &t2.scale(&r1[3])).scale(&inv);
    let w = (&t2.scale(&r1[0]) - &t1.scale(&r2[0])).scale(&inv);
    Ok(N5Eliminations { convention, w, m })
}

/// Affine map `t ↦ c0 + c1·t`.
#[derive(Clone, Debug)]
pub struct Affine {
    pub c0: Real,
    pub c1: Real,
}

impl Affine {
    pub fn at(&self, t: &Real) -> Real {
        &self.c0 + &(&self.c1 * t)
    }
}

/// Admissible `n` near EP4 for extremum spacings `a, b`.
#[derive(Clone, Debug)]
pub struct Lemma2Interval {
    pub a: RBig,
    pub b: RBig,
    pub convention: Convention,
    /// Shifts `m(n)` and `v(n)` forced by the two linear secular coefficients.
    pub m_of_n: Affine,
    pub v_of_n: Affine,
    /// Constant term `r(n) = r[0] + r[1]·n + r[2]·n²`.
    pub r: [Real; 3],
    /// `r(n)` must exceed `lower_level` and stay below `upper_level`.
    pub lower_level: Real,
    pub upper_level: Real,
    /// Admissible `n` on the branch of `r` attached to EP4 (small |n|);
    /// `None` when empty.
    pub interval: Option<(Real, Real)>,
    /// Second admissible component on the far side of the vertex of `r`,
    /// present only when `r` dips below the lower level there.
    pub left_interval: Option<(Real, Real)>,
    pub anchor: Vec<Real>,
    pub bits: usize,
}

impl Lemma2Interval {
    pub fn is_empty(&self) -> bool {
        self.interval.is_none()
    }

    pub fn width(&self) -> Option<Real> {
        self.interval.as_ref().map(|(lo, hi)| hi - lo)
    }

    pub fn shifts_at(&self, n: &Real) -> [Real; 3] {
        [self.m_of_n.at(n), n.clone(), self.v_of_n.at(n)]
    }

    /// Couplings `(A, B, C)` at shift `n`.
    pub fn couplings_at(&self, n: &Real) -> Vec<Real> {
        self.shifts_at(n).iter().zip(&self.anchor).map(|(s, a)| a - s).collect()
    }

    pub fn r_at(&self, n: &Real) -> Real {
        &self.r[0] + &(n * &(&self.r[1] + &(n * &self.r[2])))
    }
}

/// Real roots `(t₋, t₊)` of `c2 t² + c1 t + c0 = 0` with c2 > 0.
fn quadratic_roots(c2: &Real, c1: &Real, c0: &Real, bits: usize) -> Option<(Real, Real)> {
    let four = real::from_int(4, bits);
    let disc = c1 * c1 - &(&four * &(c2 * c0));
    if real::sign(&disc) < 0 {
        return None;
    }
    let two = real::from_int(2, bits);
    let sq = real::sqrt(&disc);
    let den = &two * c2;
    Some((&(&-sq.clone() - c1) / &den, &(&sq - c1) / &den))
}

/// Signs of φ = F + const at sorted extrema alternate, the largest being a minimum.
/// Returns (levels the constant must exceed, levels it must stay below).
fn extremum_levels(f: &[Real], extrema: &[Real], bits: usize) -> (Vec<Real>, Vec<Real>) {
    let eval = |x: &Real| -> Real {
        let mut acc = real::zero(bits);
        for c in f.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    };
    let mut above = Vec::new();
    let mut below = Vec::new();
    let k = extrema.len();
    for (i, x) in extrema.iter().enumerate() {
        let level = -eval(x);
        if (k - 1 - i).is_multiple_of(2) {
            below.push(level);
        } else {
            above.push(level);
        }
    }
    (above, below)
}

/// Lemma-2 interval: solve the two linear coefficients for `m(n)`, `v(n)`, form
/// the quadratic constant term `r(n)`, and intersect the alternating-sign
/// conditions at the extrema with coupling positivity. `r` is convex; the
/// branch to the right of its vertex is the one attached to EP4.
pub fn lemma2_interval(a: &RBig, b: &RBig, convention: Convention, bits: usize) -> Result<Lemma2Interval> {
    let params = ExtremumParams::new(4, vec![a.clone(), b.clone()])?;
    if real::rational_sign(a) <= 0 || real::rational_sign(b) <= 0 {
        return Err(Error::InvalidArgument("a and b must be positive".into()));
    }
    let work = bits + 32;
    let ep = cached_epn(4)?;
    let anchor: Vec<Real> = ep.values(work);
    let sec = shifted_secular(&ep, work)?;
    let fact = derivative_factorization(&params, convention)?;
    let c: Vec<Real> = fact.coefficients.iter().map(|x| real::from_rational(x, work)).collect();
    let l2 = sec[2].linear_part();
    let l1 = sec[1].linear_part();
    let solve_mv = |t: &Real| -> Result<(Real, Real)> {
        let mat = vec![vec![l2[0].clone(), l2[2].clone()], vec![l1[0].clone(), l1[2].clone()]];
        let rhs = vec![&c[2] - &(&l2[1] * t), &c[1] - &(&l1[1] * t)];
        let s = real::solve_linear(&mat, &rhs, work)?;
        Ok((s[0].clone(), s[1].clone()))
    };
    let zero = real::zero(work);
    let one = real::from_int(1, work);
    let (m0, v0) = solve_mv(&zero)?;
    let (m1, v1) = solve_mv(&one)?;
    let m_of_n = Affine { c0: m0.clone(), c1: &m1 - &m0 };
    let v_of_n = Affine { c0: v0.clone(), c1: &v1 - &v0 };
    let r_at = |t: &Real| sec[0].eval(&[m_of_n.at(t), t.clone(), v_of_n.at(t)]);
    let (rm, r0, rp) = (r_at(&-one.clone()), r_at(&zero), r_at(&one));
    let two = real::from_int(2, work);
    let r = [r0.clone(), (&rp - &rm) / &two, &(&(&rp + &rm) / &two) - &r0];
    let f: Vec<Real> = (0..4).map(|k| if k == 0 { zero.clone() } else { c[k].clone() }).chain([one.clone()]).collect();
    let extrema: Vec<Real> = match convention {
        Convention::Secular => fact.extrema.iter().map(|x| real::from_rational(x, work)).collect(),
        Convention::Monic => vec![real::from_rational(a, work), real::from_rational(&(a + b), work)],
    };
    let (above, below) = extremum_levels(&f, &extrema, work);
    let lower_level = above.into_iter().fold(None, |acc: Option<Real>, x| Some(acc.map_or(x.clone(), |a| a.max(x)))).unwrap();
    let upper_level = below.into_iter().fold(None, |acc: Option<Real>, x| Some(acc.map_or(x.clone(), |a| a.min(x)))).unwrap();
    // {L < r(n) < U}: one interval when r stays above L, else two branches
    let (branch_lo, branch_hi, left) = match quadratic_roots(&r[2], &r[1], &(&r[0] - &upper_level), work) {
        None => (None, None, None),
        Some((u_minus, u_plus)) => match quadratic_roots(&r[2], &r[1], &(&r[0] - &lower_level), work) {
            None => (Some(u_minus), Some(u_plus), None),
            Some((l_minus, l_plus)) => (Some(l_plus), Some(u_plus), Some((u_minus, l_minus))),
        },
    };
    // positivity of A, B, C along the affine family: anchor_k − (c0 + c1 n) > 0
    let mut pos_lo: Option<Real> = None;
    let mut pos_hi: Option<Real> = None;
    let mut feasible = true;
    let fams = [&m_of_n, &Affine { c0: zero.clone(), c1: one.clone() }, &v_of_n];
    for (fam, a_k) in fams.iter().zip(&anchor) {
        let slack = a_k - &fam.c0;
        match real::sign(&fam.c1) {
            0 => feasible &= real::sign(&slack) > 0,
            s => {
                let t = &slack / &fam.c1;
                if s > 0 {
                    pos_hi = Some(pos_hi.map_or(t.clone(), |h| h.min(t)));
                } else {
                    pos_lo = Some(pos_lo.map_or(t.clone(), |l| l.max(t)));
                }
            }
        }
    }
    let clip = |lo: Real, hi: Real| -> Option<(Real, Real)> {
        if !feasible {
            return None;
        }
        let lo = pos_lo.clone().map_or(lo.clone(), |p| lo.clone().max(p));
        let hi = pos_hi.clone().map_or(hi.clone(), |p| hi.clone().min(p));
        (hi > lo).then(|| (lo.with_precision(bits).value(), hi.with_precision(bits).value()))
    };
    let interval = match (branch_lo, branch_hi) {
        (Some(lo), Some(hi)) => clip(lo, hi),
        _ => None,
    };
    let left_interval = left.and_then(|(lo, hi)| clip(lo, hi));
    Ok(Lemma2Interval {
        a: a.clone(),
        b: b.clone(),
        convention,
        m_of_n,
        v_of_n,
        r,
        lower_level,
        upper_level,
        interval,
        left_interval,
        anchor,
        bits,
    })
}

/// Result of walking from an interior point along a ray.
#[derive(Clone, Debug)]
pub enum RayOutcome {
    /// First non-RealSimple point bracketed in `(t_lo, t_hi]`.
    Boundary {
        t_lo: RBig,
        t_hi: RBig,
        couplings: Vec<RBig>,
        class: SpectrumClass,
        /// Size of the largest eigenvalue cluster at the bracket (2 = doublet, N = EPN).
        order: usize,
        clusters: Vec<RootCluster>,
    },
    /// A coupling reaches zero at `t_exit` before any degeneracy.
    ExitsBranch { t_exit: RBig },
}

fn point(interior: &[RBig], dir: &[RBig], t: &RBig) -> Vec<RBig> {
    interior.iter().zip(dir).map(|(x, d)| x + d * t).collect()
}

/// Bisection on `t ≥ 0` for the first point where the spectrum stops being
/// real and simple, after a 256-step scan that brackets it.
pub fn boundary_along_ray(n: usize, interior: &[RBig], direction: &[RBig], tol: &RBig, bits: usize) -> Result<RayOutcome> {
    if interior.len() != n - 1 || direction.len() != n - 1 {
        return Err(Error::InvalidArgument(format!("expected {} coordinates", n - 1)));
    }
    if real::rational_sign(tol) <= 0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if direction.iter().all(|d| d == &RBig::ZERO) {
        return Err(Error::InvalidArgument("direction is zero".into()));
    }
    if interior.iter().any(|c| real::rational_sign(c) <= 0) {
        return Err(Error::Domain("interior point must have positive couplings".into()));
    }
    if classify(n, interior)?.tag != SpectrumTag::RealSimple {
        return Err(Error::InvalidArgument("starting point is not RealSimple".into()));
    }
    let simple = |t: &RBig| -> Result<bool> { Ok(classify(n, &point(interior, direction, t))?.tag == SpectrumTag::RealSimple) };
    let t_exit = interior.iter().zip(direction).filter(|(_, d)| real::rational_sign(d) < 0).map(|(x, d)| -(x / d)).min();
    const STEPS: i64 = 256;
    let span = match &t_exit {
        Some(t) => t.clone(),
        None => {
            let mut t = RBig::ONE;
            let mut found = false;
            for _ in 0..128 {
                if !simple(&t)? {
                    found = true;
                    break;
                }
                t *= RBig::from(2);
            }
            if !found {
                return Err(Error::Domain("no spectral transition found along the ray".into()));
            }
            t
        }
    };
    let mut bracket = None;
    let mut prev = RBig::ZERO;
    for i in 1..=STEPS {
        let t = &span * RBig::from(i) / RBig::from(STEPS);
        if !simple(&t)? {
            bracket = Some((prev, t));
            break;
        }
        prev = t;
    }
    let Some((mut lo, mut hi)) = bracket else {
        return Ok(RayOutcome::ExitsBranch { t_exit: t_exit.unwrap_or(span) });
    };
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / RBig::from(2);
        if simple(&mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let couplings = point(interior, direction, &hi);
    let class = classify(n, &couplings)?;
    let mid = (&lo + &hi) / RBig::from(2);
    let at_mid: Vec<Real> = point(interior, direction, &mid).iter().map(|c| real::from_rational(c, bits)).collect();
    let coeffs = evaluate_charpoly_real(n, &at_mid, bits)?;
    let roots = complex_roots(&coeffs, bits)?;
    let scale = real::max_abs(roots.iter().map(|z| &z.re)).max(real::from_int(1, bits));
    let tol_f = real::to_f64(&real::from_rational(tol, 64)).max(1e-300);
    let radius = &scale * &real::from_f64(10.0 * tol_f.powf(1.0 / n as f64), bits)?;
    let clusters = cluster_roots(&roots, &radius);
    let order = clusters.iter().map(|c| c.size).max().unwrap_or(1);
    Ok(RayOutcome::Boundary { t_lo: lo, t_hi: hi, couplings, class, order, clusters })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> RBig {
        RBig::from(x)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(2, &[q(1, 2)]).unwrap().tag, SpectrumTag::RealSimple);
        assert_eq!(classify(2, &[r(1)]).unwrap().tag, SpectrumTag::RealDegenerate);
        assert_eq!(classify(2, &[r(2)]).unwrap().tag, SpectrumTag::ComplexPresent);
        let c = classify(3, &[q(27, 7), q(64, 7)]).unwrap();
        assert_eq!((c.tag, c.real_root_count, c.distinct_root_count), (SpectrumTag::RealDegenerate, 3, 1));
        assert_eq!(classify_f64(3, &[0.0, 0.0]).unwrap().tag, SpectrumTag::RealSimple);
    }

    #[test]
    fn root_gap() {
        let p = evaluate_charpoly(3, &[r(0), r(0)]).unwrap();
        let g = min_real_root_gap(&p, 64).unwrap().unwrap();
        assert_eq!(real::to_f64(&g), 2.0);
        let p = evaluate_charpoly(2, &[r(1)]).unwrap();
        assert!(real::is_zero(&min_real_root_gap(&p, 64).unwrap().unwrap()));
    }

    #[test]
    fn lemma1_values() {
        let b = lemma1_bounds(&r(1), 128).unwrap();
        assert!((real::to_f64(&b.n_lo) - 10.0 / 7.0).abs() < 1e-15);
        assert!((real::to_f64(&b.n_hi) - 2.0).abs() < 1e-15);
        let b = lemma1_bounds(&r(4), 128).unwrap();
        assert!((real::to_f64(&b.n_lo) - 32.0 / 7.0).abs() < 1e-15);
        assert!((real::to_f64(&b.n_hi) - 64.0 / 7.0).abs() < 1e-15);
        assert!(b.within_caps);
        assert!(lemma1_bounds(&r(0), 64).is_err());
    }

    #[test]
    fn factorization_examples() {
        let f = derivative_factorization(&ExtremumParams::new(4, vec![r(1), r(1)]).unwrap(), Convention::Secular).unwrap();
        assert_eq!(f.p, Some(q(7, 3)));
        assert_eq!(f.q, Some(r(3)));
        assert_eq!(f.extrema, vec![r(-3), r(1), r(2)]);
        let f3 = derivative_factorization(&ExtremumParams::new(3, vec![r(2)]).unwrap(), Convention::Secular).unwrap();
        assert_eq!(f3.p, Some(r(4)));
        assert_eq!(f3.coefficients[1], r(-12));
        assert!(ExtremumParams::new(5, vec![r(1), r(1), r(1)]).is_err());
        let bad = ExtremumParams { n: 5, spacings: vec![r(0); 3] };
        assert!(derivative_factorization(&bad, Convention::Secular).is_err());
    }

    #[test]
    fn gap_extrema_sum_to_zero() {
        let p = ExtremumParams::new(6, vec![r(1), r(2), r(3), r(4)]).unwrap();
        let x = p.extrema();
        assert_eq!(x.iter().fold(RBig::ZERO, |a, b| a + b), RBig::ZERO);
        assert_eq!(&x[1] - &x[0], r(1));
        assert_eq!(&x[4] - &x[3], r(4));
    }

    #[test]
    fn n5_elimination_coefficients() {
        let e = n5_eliminations(Convention::Monic).unwrap();
        let coef = |p: &MPoly<RBig>, ex: [u32; 5]| p.coeff(&ex);
        assert_eq!(coef(&e.w, [0, 0, 0, 0, 1]), q(-20, 39));
        assert_eq!(coef(&e.w, [0, 0, 0, 1, 0]), q(-7, 39));
        assert_eq!(coef(&e.m, [0, 0, 0, 1, 0]), q(-32, 39));
        assert_eq!(coef(&e.m, [0, 0, 0, 0, 1]), q(-19, 39));
        // c²-coefficient of w: −(2/39)a − (1/39)b + 6/13
        assert_eq!(coef(&e.w, [1, 0, 2, 0, 0]), q(-2, 39));
        assert_eq!(coef(&e.w, [0, 1, 2, 0, 0]), q(-1, 39));
        assert_eq!(coef(&e.w, [0, 0, 2, 0, 0]), q(6, 13));
        // m: (7/13 + 2a/39 + b/39) c²
        assert_eq!(coef(&e.m, [0, 0, 2, 0, 0]), q(7, 13));
        assert_eq!(coef(&e.m, [1, 0, 2, 0, 0]), q(2, 39));
        let (w, m) = e.eval(&r(0), &r(0), &r(0), &r(0), &r(0));
        assert_eq!((w, m), (RBig::ZERO, RBig::ZERO));
    }

    #[test]
    fn lemma2_small_spacings() {
        let a = q(1, 10);
        let l = lemma2_interval(&a, &a, Convention::Secular, 256).unwrap();
        let (lo, hi) = l.interval.clone().unwrap();
        assert!(hi > lo);
        let mid = (&lo + &hi) / &real::from_int(2, 256);
        assert_eq!(classify_real(4, &l.couplings_at(&mid)).unwrap().tag, SpectrumTag::RealSimple);
        let w = &hi - &lo;
        let eps = &w * &real::pow2(-20, 64);
        let out_hi = &hi + &eps;
        let out_lo = &lo - &eps;
        assert_ne!(classify_real(4, &l.couplings_at(&out_hi)).unwrap().tag, SpectrumTag::RealSimple);
        assert_ne!(classify_real(4, &l.couplings_at(&out_lo)).unwrap().tag, SpectrumTag::RealSimple);
        // r(n) is quadratic with leading coefficient 91/400 and slope 3√949 at the origin for a = b = 0
        assert!((real::to_f64(&l.r[2]) - 91.0 / 400.0).abs() < 1e-12);
    }

    #[test]
    fn ray_to_ep2() {
        let out = boundary_along_ray(2, &[q(1, 2)], &[r(1)], &q(1, 1_000_000_000_000), 256).unwrap();
        match out {
            RayOutcome::Boundary { t_hi, order, .. } => {
                assert!((real::to_f64(&real::from_rational(&t_hi, 64)) - 0.5).abs() < 1e-11);
                assert_eq!(order, 2);
            }
            _ => panic!("expected boundary"),
        }
    }

    #[test]
    fn ray_exits_branch() {
        let out = boundary_along_ray(3, &[r(1), r(1)], &[r(-1), r(0)], &q(1, 1_000_000), 128).unwrap();
        assert!(matches!(out, RayOutcome::ExitsBranch { t_exit } if t_exit == r(1)));
    }
}
