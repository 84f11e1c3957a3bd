//! Near-EPN unitarity corridors: closed forms at N = 3 and N = 4, and the
//! order-by-order linear machinery `C z = ω` for larger N.
//!
//! Shifts `z = (m, n, v, …)` are measured from the EPN anchor
//! (coupling = anchor − shift). The extremum spacings are rescaled:
//! the actual spacing is `λ·α`, so the secular targets of `E^k` scale as
//! `λ^(N−k)` and the free constant term is `λ^N τ₀`.

use dashu::integer::IBig;
use dashu::rational::RBig;

use crate::algebra::mpoly::MPoly;
use crate::algebra::real::{self, Real};
use crate::charpoly::symbolic_charpoly;
use crate::epn::{cached_epn, shifted_secular, EPNSolution};
use crate::error::{Error, Result};
use crate::hamiltonian::shift_names;
use crate::reality::{derivative_coefficients_mpoly, derivative_factorization, spacing_names, Convention, ExtremumParams};
use crate::spectra::diagonal;

/// Exact N = 3 corridor: `n = λ²β + λ³γ`, `m = 3λ²α² − n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorridorN3 {
    pub alpha: RBig,
    pub beta: RBig,
    pub gamma_lo: RBig,
    pub gamma_hi: RBig,
}

impl CorridorN3 {
    /// Shifts `(m, n)` at scale `λ` and subdominant coefficient `γ`.
    pub fn shifts(&self, lambda: &RBig, gamma: &RBig) -> [RBig; 2] {
        let l2 = lambda * lambda;
        let n = &l2 * &self.beta + &l2 * lambda * gamma;
        let m = RBig::from(3) * &l2 * &self.alpha * &self.alpha - &n;
        [m, n]
    }

    pub fn couplings(&self, lambda: &RBig, gamma: &RBig) -> Vec<RBig> {
        let [m, n] = self.shifts(lambda, gamma);
        vec![RBig::from_parts(IBig::from(27), 7u8.into()) - m, RBig::from_parts(IBig::from(64), 7u8.into()) - n]
    }
}

/// `β = 12α²/7`, `γ ∈ (−2α³/7, 2α³/7)`. Exact, not only leading order.
pub fn corridor_n3(alpha: &RBig) -> Result<CorridorN3> {
    if real::rational_sign(alpha) <= 0 {
        return Err(Error::InvalidArgument("alpha must be positive".into()));
    }
    let seven = RBig::from(7);
    let beta = RBig::from(12) * alpha * alpha / &seven;
    let g = RBig::from(2) * alpha * alpha * alpha / &seven;
    Ok(CorridorN3 { alpha: alpha.clone(), beta, gamma_lo: -g.clone(), gamma_hi: g })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OmegaMode {
    /// `Ω = m₂v₂`, making the n₄ bounds linear.
    #[default]
    Leading,
    /// `Ω = (m₂ + λ²m₄)(v₂ + λ²v₄)`, solved as a quadratic in n₄.
    Exact,
}

#[derive(Clone, Debug)]
pub struct N4Options {
    pub convention: Convention,
    /// When absent the `λν` terms of the second row are dropped (pure leading order).
    pub lambda: Option<RBig>,
    pub omega: OmegaMode,
    pub bits: usize,
}

impl Default for N4Options {
    fn default() -> Self {
        Self { convention: Convention::Monic, lambda: None, omega: OmegaMode::Leading, bits: real::DEFAULT_PRECISION }
    }
}

#[derive(Clone, Debug)]
pub struct CorridorN4 {
    pub alpha: RBig,
    pub beta: RBig,
    pub options: N4Options,
    /// `μ = 2β² + 6α² + 6αβ`.
    pub mu: RBig,
    /// `ν = 8α³ + 12α²β + 4αβ²`.
    pub nu: RBig,
    /// Order-λ² total `m₂ + n₂ + v₂` and the right side of the second row.
    pub total: RBig,
    pub second: RBig,
    /// Coefficients of (m, n, v) in the linear part of the constant term.
    pub constant_row: [Real; 3],
    pub n2: Real,
    pub m2: Real,
    pub v2: Real,
    /// `m₄ = dm·n₄`, `v₄ = dv·n₄`.
    pub dm: Real,
    pub dv: Real,
    /// Coefficient of n₄ in `f`; equals 3√949.
    pub n4_coefficient: Real,
    pub omega0: Real,
    /// Bounds on `f = 3√949·n₄ + Ω`.
    pub f_range: (Real, Real),
    pub n4_range: Option<(Real, Real)>,
}

impl CorridorN4 {
    /// Full shifts at scale `λ` for a given `n₄`.
    pub fn shifts(&self, lambda: &Real, n4: &Real) -> [Real; 3] {
        let l2 = lambda * lambda;
        let l4 = &l2 * &l2;
        [&(&l2 * &self.m2) + &(&l4 * &(&self.dm * n4)), &(&l2 * &self.n2) + &(&l4 * n4), &(&l2 * &self.v2) + &(&l4 * &(&self.dv * n4))]
    }

    pub fn couplings(&self, lambda: &Real, n4: &Real) -> Result<Vec<Real>> {
        let ep = cached_epn(4)?;
        let anchor = ep.values(self.options.bits + 32);
        Ok(anchor.iter().zip(self.shifts(lambda, n4)).map(|(a, s)| a - &s).collect())
    }
}

/// Affine solution `(m, v) = (m0 + m1·n, v0 + v1·n)` of rows
/// `Σ shifts = t1`, `row2·shifts = t2`.
fn solve_affine(r2: &[Real], t1: &Real, t2: &Real, bits: usize) -> Result<[Real; 4]> {
    let one = real::from_int(1, bits);
    let mat = vec![vec![one.clone(), one.clone()], vec![r2[0].clone(), r2[2].clone()]];
    let at = |n: &Real| real::solve_linear(&mat, &[t1 - n, t2 - &(&r2[1] * n)], bits);
    let s0 = at(&real::zero(bits))?;
    let s1 = at(&one)?;
    Ok([s0[0].clone(), &s1[0] - &s0[0], s0[1].clone(), &s1[1] - &s0[1]])
}

pub fn corridor_n4(alpha: &RBig, beta: &RBig, options: &N4Options) -> Result<CorridorN4> {
    if real::rational_sign(alpha) <= 0 || real::rational_sign(beta) <= 0 {
        return Err(Error::InvalidArgument("alpha and beta must be positive".into()));
    }
    let bits = options.bits + 32;
    let ep = cached_epn(4)?;
    let sec = shifted_secular(&ep, bits)?;
    let fact = derivative_factorization(&ExtremumParams::new(4, vec![alpha.clone(), beta.clone()])?, options.convention)?;
    let (a, b) = (alpha, beta);
    let mu = RBig::from(2) * b * b + RBig::from(6) * a * a + RBig::from(6) * a * b;
    let nu = RBig::from(8) * a * a * a + RBig::from(12) * a * a * b + RBig::from(4) * a * b * b;
    let total = -fact.coefficients[2].clone();
    let second = fact.coefficients[1].clone();
    let r2 = sec[1].linear_part();
    let r3 = sec[0].linear_part();
    let lam = options.lambda.as_ref().map(|l| real::from_rational(l, bits));
    let t2 = match &lam {
        Some(l) => l * &real::from_rational(&second, bits),
        None => real::zero(bits),
    };
    let [m0, m1, v0, v1] = solve_affine(&r2, &real::from_rational(&total, bits), &t2, bits)?;
    let slope = &(&(&r3[0] * &m1) + &r3[1]) + &(&r3[2] * &v1);
    let offset = &(&r3[0] * &m0) + &(&r3[2] * &v0);
    let n2 = -(&offset / &slope);
    let m2 = &m0 + &(&m1 * &n2);
    let v2 = &v0 + &(&v1 * &n2);
    let nl = sec[0].nonlinear_part();
    let omega0 = nl.eval(&[m2.clone(), n2.clone(), v2.clone()]);

    // sign pattern of φ at the rescaled extrema
    let coeffs: Vec<Real> = (0..=4)
        .map(|k| match k {
            0 => real::zero(bits),
            4 => real::from_int(1, bits),
            _ => real::from_rational(&fact.coefficients[k], bits),
        })
        .collect();
    let (lo, hi) = match options.convention {
        Convention::Secular => {
            let extrema: Vec<Real> = fact.extrema.iter().map(|x| real::from_rational(x, bits)).collect();
            let (lo, hi) = free_constant_levels(&coeffs, &extrema, bits);
            (lo.unwrap(), hi.unwrap())
        }
        Convention::Monic => {
            // displayed form: G(α) < f < G(α+β) with G(ξ) = ξ⁴ + μξ² + νξ
            let g = |x: &RBig| real::from_rational(&(x * x * x * x + &mu * x * x + &nu * x), bits);
            (g(a), g(&(a + b)))
        }
    };

    let n4_at = |level: &Real| -> Option<Real> {
        match (options.omega, &lam) {
            (OmegaMode::Exact, Some(l)) => {
                let l2 = l * l;
                let omega = |t: &Real| {
                    let s = [&m2 + &(&l2 * &(&m1 * t)), &n2 + &(&l2 * t), &v2 + &(&l2 * &(&v1 * t))];
                    nl.eval(&s)
                };
                // f(t) = slope·t + Ω(t) is quadratic in t
                let one = real::from_int(1, bits);
                let (fm, f0, fp) = (omega(&-one.clone()), omega(&real::zero(bits)), omega(&one));
                let two = real::from_int(2, bits);
                let c2 = &(&(&fp + &fm) / &two) - &f0;
                let c1 = &(&(&fp - &fm) / &two) + &slope;
                let c0 = &f0 - level;
                let guess = &(level - &omega0) / &slope;
                if real::is_zero(&c2) {
                    return Some(-(&c0 / &c1));
                }
                let disc = &(&c1 * &c1) - &(&real::from_int(4, bits) * &(&c2 * &c0));
                if real::sign(&disc) < 0 {
                    return None;
                }
                let sq = real::sqrt(&disc);
                let r1 = &(&sq - &c1) / &(&two * &c2);
                let r2 = &(&-sq - &c1) / &(&two * &c2);
                let d1 = real::abs(&(&r1 - &guess));
                let d2 = real::abs(&(&r2 - &guess));
                Some(if d1 <= d2 { r1 } else { r2 })
            }
            _ => Some(&(level - &omega0) / &slope),
        }
    };
    let n4_range = match (n4_at(&lo), n4_at(&hi)) {
        (Some(x), Some(y)) => {
            let (x, y) = if x <= y { (x, y) } else { (y, x) };
            (y > x).then(|| (x.with_precision(options.bits).value(), y.with_precision(options.bits).value()))
        }
        _ => None,
    };
    Ok(CorridorN4 {
        alpha: a.clone(),
        beta: b.clone(),
        options: options.clone(),
        mu,
        nu,
        total,
        second,
        constant_row: [r3[0].clone(), r3[1].clone(), r3[2].clone()],
        n2,
        m2,
        v2,
        dm: m1,
        dv: v1,
        n4_coefficient: slope,
        omega0,
        f_range: (lo, hi),
        n4_range,
    })
}

/// Levels for the free constant `t` of `φ = F + t` such that φ alternates in
/// sign at the sorted extrema (largest one a minimum): `(lower, upper)`.
pub fn free_constant_levels(f: &[Real], extrema: &[Real], bits: usize) -> (Option<Real>, Option<Real>) {
    let eval = |x: &Real| -> Real {
        let mut acc = real::zero(bits);
        for c in f.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    };
    let mut lower: Option<Real> = None;
    let mut upper: Option<Real> = None;
    let k = extrema.len();
    for (i, x) in extrema.iter().enumerate() {
        let level = -eval(x);
        if (k - 1 - i).is_multiple_of(2) {
            upper = Some(upper.map_or(level.clone(), |u| u.min(level)));
        } else {
            lower = Some(lower.map_or(level.clone(), |l| l.max(level)));
        }
    }
    (lower, upper)
}

/// The linear system `C z = ω` near an EPN.
///
/// Row r (1-based) belongs to the coefficient of `E^(N−1−r)`; rows ≥ 2 are
/// the linear parts of the shifted secular coefficients, row 1 is their
/// negative so that it reads `m + n + … = μλ²`.
#[derive(Clone, Debug)]
pub struct CMatrix {
    pub n: usize,
    pub rows: Vec<Vec<Real>>,
    pub row2: Vec<IBig>,
    /// Sign relating row r to the secular coefficient (−1 for row 1).
    pub signs: Vec<i32>,
    pub bits: usize,
}

impl CMatrix {
    pub fn inverse(&self) -> Result<Vec<Vec<Real>>> {
        real::invert(&self.rows, self.bits)
    }
}

/// `C₂,ₖ = −(E_k + E_{k+1})` from the traceless diagonal.
pub fn row2_closed_form(n: usize) -> Result<Vec<i64>> {
    let d = diagonal(n)?;
    Ok(d.windows(2).map(|w| -(w[0] + w[1])).collect())
}

/// Row 2 read off the symbolic secular polynomial; exact because the
/// E^(N−3) coefficient is linear in the couplings.
pub fn row2_from_charpoly(n: usize) -> Result<Vec<IBig>> {
    if n < 3 {
        return Err(Error::InvalidArgument("C matrix needs N ≥ 3".into()));
    }
    let sym = symbolic_charpoly(n)?;
    sym.coeffs[n - 3]
        .linear_part()
        .into_iter()
        .map(|c| {
            let (num, den) = (-c).into_parts();
            if den != dashu::integer::UBig::ONE {
                return Err(Error::Precision("non-integer second row".into()));
            }
            Ok(num)
        })
        .collect()
}

pub fn c_matrix(n: usize, bits: usize) -> Result<CMatrix> {
    if n < 3 {
        return Err(Error::InvalidArgument("C matrix needs N ≥ 3".into()));
    }
    let ep = cached_epn(n)?;
    c_matrix_for(&ep, bits)
}

pub fn c_matrix_for(anchor: &EPNSolution, bits: usize) -> Result<CMatrix> {
    let n = anchor.n;
    if n < 3 {
        return Err(Error::InvalidArgument("C matrix needs N ≥ 3".into()));
    }
    let limit = real::pow2(-(anchor.precision_bits as isize) / 2, 64);
    if real::abs(&anchor.numeric_residual) > limit {
        return Err(Error::Precision("EPN anchor residual too large".into()));
    }
    let sec = shifted_secular(anchor, bits)?;
    let mut rows = Vec::with_capacity(n - 1);
    let mut signs = Vec::with_capacity(n - 1);
    for r in 1..n {
        let k = n - 1 - r;
        let s = if r == 1 { -1 } else { 1 };
        rows.push(sec[k].linear_part().into_iter().map(|c| if s < 0 { -c } else { c }).collect());
        signs.push(s);
    }
    let row2 = row2_from_charpoly(n)?;
    Ok(CMatrix { n, rows, row2, signs, bits })
}

/// Leading-order shifts `z₂ = μ(spacings)·C⁻¹e₁`, as quadratic forms in the spacings.
#[derive(Clone, Debug)]
pub struct LeadingOrder {
    pub n: usize,
    pub convention: Convention,
    pub spacing_names: Vec<String>,
    pub shift_names: Vec<String>,
    pub mu: MPoly<RBig>,
    pub shifts: Vec<MPoly<Real>>,
}

impl LeadingOrder {
    pub fn coefficient(&self, shift: usize, exponents: &[u32]) -> Real {
        self.shifts[shift].coeff(exponents)
    }

    pub fn eval(&self, spacings: &[Real]) -> Vec<Real> {
        self.shifts.iter().map(|p| p.eval(spacings)).collect()
    }
}

pub fn leading_order(n: usize, convention: Convention, bits: usize) -> Result<LeadingOrder> {
    let c = c_matrix(n, bits)?;
    let inv = c.inverse()?;
    let (names, coeffs) = derivative_coefficients_mpoly(n, convention);
    let mu = -&coeffs[n - 2];
    let mu_r = mu.to_real(bits);
    let shifts = inv.iter().map(|row| mu_r.scale(&row[0])).collect();
    Ok(LeadingOrder { n, convention, spacing_names: names, shift_names: shift_names(n), mu, shifts })
}

/// Monomial order of the displayed N = 5 prescriptions: ac, cb, a², ab, b², c².
pub const N5_MONOMIALS: [[u32; 3]; 6] = [[1, 0, 1], [0, 1, 1], [2, 0, 0], [1, 1, 0], [0, 2, 0], [0, 0, 2]];

/// 4 × 6 table of the N = 5 leading-order prescriptions for (m, n, v, w).
pub fn n5_leading_table(bits: usize) -> Result<Vec<Vec<Real>>> {
    let lo = leading_order(5, Convention::Secular, bits)?;
    Ok((0..4).map(|s| N5_MONOMIALS.iter().map(|e| lo.coefficient(s, e)).collect()).collect())
}

#[derive(Clone, Debug)]
pub struct CorridorOptions {
    pub lambda: RBig,
    pub max_iters: usize,
    /// Max-norm change in the shifts; default `2^(−bits/2)`.
    pub tol: Option<Real>,
    /// Rescaled free constant; default the midpoint of the admissible interval.
    pub tau0: Option<Real>,
    pub bits: usize,
}

impl CorridorOptions {
    pub fn new(lambda: RBig) -> Self {
        Self { lambda, max_iters: 50, tol: None, tau0: None, bits: real::DEFAULT_PRECISION }
    }
}

/// One sweep of the fixed-point iteration. Ω, Σ, Π are the nonlinear parts
/// of rows 3, 4, 5 divided by λ⁴.
#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub iteration: usize,
    pub omega: Option<Real>,
    pub sigma: Option<Real>,
    pub pi: Option<Real>,
    pub change: Real,
}

#[derive(Clone, Debug)]
pub struct CorridorSolution {
    pub n: usize,
    pub params: ExtremumParams,
    pub lambda: RBig,
    pub shift_names: Vec<String>,
    /// Rescaled targets per row: μ, ν, ρ, σ, …; the last row holds τ₀.
    pub targets: Vec<Real>,
    /// `orders[j − 2][i]` is the λʲ coefficient of shift i, j = 2 … N.
    pub orders: Vec<Vec<Real>>,
    /// Admissible rescaled free constant τ₀.
    pub tau0_interval: (Real, Real),
    pub tau0: Real,
    /// Converged full shifts at `tau0`.
    pub shifts: Vec<Real>,
    pub couplings: Vec<Real>,
    pub trace: Vec<IterationRecord>,
    pub bits: usize,
}

impl CorridorSolution {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }

    /// Truncated series `Σ λʲ z_j`.
    pub fn series_shifts(&self) -> Vec<Real> {
        let lam = real::from_rational(&self.lambda, self.bits + 32);
        let mut out = vec![real::zero(self.bits + 32); self.n - 1];
        let mut pw = &lam * &lam;
        for z in &self.orders {
            for (o, zi) in out.iter_mut().zip(z) {
                *o = &*o + &(&pw * zi);
            }
            pw = &pw * &lam;
        }
        out
    }

    /// Couplings at another value of the free constant.
    pub fn couplings_at(&self, tau0: &Real) -> Result<Vec<Real>> {
        let opts = CorridorOptions { lambda: self.lambda.clone(), max_iters: 50, tol: None, tau0: Some(tau0.clone()), bits: self.bits };
        Ok(corridor_solve(&self.params, &opts)?.couplings)
    }
}

type Series = Vec<Real>;

fn series_mul(a: &Series, b: &Series, bits: usize) -> Series {
    let len = a.len();
    let mut out = vec![real::zero(bits); len];
    for (i, x) in a.iter().enumerate() {
        if real::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn eval_series(p: &MPoly<Real>, z: &[Series], len: usize, bits: usize) -> Series {
    let mut out = vec![real::zero(bits); len];
    for (e, c) in p.terms() {
        let mut t: Series = vec![real::zero(bits); len];
        t[0] = c.clone();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = series_mul(&t, &z[i], bits);
            }
        }
        for (o, x) in out.iter_mut().zip(&t) {
            *o = &*o + x;
        }
    }
    out
}

/// Order-by-order coefficients followed by the full fixed-point solve.
pub fn corridor_solve(params: &ExtremumParams, options: &CorridorOptions) -> Result<CorridorSolution> {
    let n = params.n;
    if !(3..=6).contains(&n) {
        return Err(Error::InvalidArgument("corridor_solve supports N = 3 … 6".into()));
    }
    if real::rational_sign(&options.lambda) <= 0 {
        return Err(Error::InvalidArgument("lambda must be positive".into()));
    }
    let bits = options.bits + 64;
    let ep = cached_epn(n)?;
    let sec = shifted_secular(&ep, bits)?;
    let cm = c_matrix_for(&ep, bits)?;
    let inv = cm.inverse()?;
    let fact = derivative_factorization(params, Convention::Secular)?;
    let dim = n - 1;
    let row_power = |r: usize| n - 1 - r; // r is 1-based

    // rescaled F(ξ) = ξᴺ + Σ c_k ξᵏ and the admissible τ₀
    let mut f: Vec<Real> = fact.coefficients.iter().map(|c| real::from_rational(c, bits)).collect();
    f[0] = real::zero(bits);
    let extrema: Vec<Real> = fact.extrema.iter().map(|x| real::from_rational(x, bits)).collect();
    let (lo, hi) = free_constant_levels(&f, &extrema, bits);
    let (lo, hi) = (lo.unwrap(), hi.unwrap());
    if hi <= lo {
        return Err(Error::Domain("spacings admit no real-spectrum constant term".into()));
    }
    let tau0 = match &options.tau0 {
        Some(t) => t.clone(),
        None => &(&lo + &hi) / &real::from_int(2, bits),
    };
    let mut targets: Vec<Real> = (1..dim).map(|r| f[row_power(r)].clone()).collect();
    targets.push(tau0.clone());
    let scaled_targets: Vec<Real> = targets.iter().zip(&cm.signs).map(|(t, &s)| if s < 0 { -t.clone() } else { t.clone() }).collect();

    let nl: Vec<MPoly<Real>> = (1..=dim).map(|r| sec[row_power(r)].nonlinear_part()).collect();
    let lam = real::from_rational(&options.lambda, bits);

    // order-by-order: target of row r enters at λ^(r+1)
    let len = n + 1;
    let mut series: Vec<Series> = vec![vec![real::zero(bits); len]; dim];
    let mut orders = Vec::new();
    for j in 2..=n {
        let rhs: Vec<Real> = (1..=dim)
            .map(|r| {
                let nlj = eval_series(&nl[r - 1], &series, len, bits)[j].clone();
                let t = if j == r + 1 { &targets[r - 1] - &nlj } else { -nlj };
                if cm.signs[r - 1] < 0 {
                    -t
                } else {
                    t
                }
            })
            .collect();
        let zj = real::mat_vec(&inv, &rhs, bits);
        for (s, x) in series.iter_mut().zip(&zj) {
            s[j] = x.clone();
        }
        orders.push(zj.iter().map(|x| x.clone().with_precision(options.bits).value()).collect::<Vec<_>>());
    }

    // full fixed point z = C⁻¹ s⊙(target(λ) − NL(z))
    let full_targets: Vec<Real> = (1..=dim)
        .map(|r| {
            let mut p = real::from_int(1, bits);
            for _ in 0..r + 1 {
                p = &p * &lam;
            }
            &targets[r - 1] * &p
        })
        .collect();
    let tol = options.tol.clone().unwrap_or_else(|| real::pow2(-(options.bits as isize) / 2, 64));
    let lam4 = {
        let l2 = &lam * &lam;
        &l2 * &l2
    };
    let mut z = vec![real::zero(bits); dim];
    let mut trace = Vec::new();
    let mut converged = false;
    for it in 0..options.max_iters.max(1) {
        let nlv: Vec<Real> = nl.iter().map(|p| p.eval(&z)).collect();
        let rhs: Vec<Real> = (0..dim)
            .map(|i| {
                let t = &full_targets[i] - &nlv[i];
                if cm.signs[i] < 0 {
                    -t
                } else {
                    t
                }
            })
            .collect();
        let next = real::mat_vec(&inv, &rhs, bits);
        let change = real::max_abs(next.iter().zip(&z).map(|(a, b)| a - b).collect::<Vec<_>>().iter());
        let aux = |r: usize| (r <= dim).then(|| &nlv[r - 1] / &lam4);
        trace.push(IterationRecord { iteration: it + 1, omega: aux(3), sigma: aux(4), pi: aux(5), change: change.clone() });
        z = next;
        if change < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        let last = trace.last().map(|t| real::to_scientific(&t.change, 6)).unwrap_or_default();
        return Err(Error::NonConvergence {
            iterations: trace.len(),
            last_change: last,
            trace: trace.iter().map(|t| real::to_scientific(&t.change, 6)).collect(),
        });
    }
    let anchor = ep.values(bits);
    let couplings: Vec<Real> = anchor.iter().zip(&z).map(|(a, s)| a - s).collect();
    if couplings.iter().any(|c| real::sign(c) <= 0) {
        return Err(Error::Domain("reconstructed couplings leave the non-Hermitian branch".into()));
    }
    let round = |x: &Real| x.clone().with_precision(options.bits).value();
    Ok(CorridorSolution {
        n,
        params: params.clone(),
        lambda: options.lambda.clone(),
        shift_names: shift_names(n),
        targets: scaled_targets.iter().map(round).collect(),
        orders,
        tau0_interval: (round(&lo), round(&hi)),
        tau0: round(&tau0),
        shifts: z.iter().map(round).collect(),
        couplings: couplings.iter().map(round).collect(),
        trace,
        bits: options.bits,
    })
}

/// Names of the spacing parameters accepted by `corridor_solve` at dimension N.
pub fn corridor_spacing_names(n: usize) -> Vec<String> {
    spacing_names(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reality::{classify_real, SpectrumTag};

    fn q(p: i64, d: u64) -> RBig {
        RBig::from_parts(IBig::from(p), d.into())
    }

    fn f(x: &Real) -> f64 {
        real::to_f64(x)
    }

    #[test]
    fn n3_closed_form() {
        let c = corridor_n3(&RBig::from(7)).unwrap();
        assert_eq!(c.beta, RBig::from(84));
        assert_eq!((c.gamma_lo.clone(), c.gamma_hi.clone()), (RBig::from(-98), RBig::from(98)));
        let c = corridor_n3(&RBig::ONE).unwrap();
        assert_eq!(c.beta, q(12, 7));
        let cp = c.couplings(&q(1, 100), &RBig::ZERO);
        assert_eq!(crate::reality::classify(3, &cp).unwrap().tag, SpectrumTag::RealSimple);
        let edge = c.couplings(&q(1, 100), &c.gamma_hi);
        assert_eq!(crate::reality::classify(3, &edge).unwrap().tag, SpectrumTag::RealDegenerate);
    }

    #[test]
    fn n4_leading_values() {
        let c = corridor_n4(&RBig::ONE, &RBig::ONE, &N4Options::default()).unwrap();
        assert!((f(&c.n2) - 2.8231).abs() < 1e-4);
        assert!((f(&c.n4_coefficient) - 3.0 * 949f64.sqrt()).abs() < 1e-12);
        assert!((f(&c.constant_row[0]) + 41.0904).abs() < 1e-4);
        assert!((f(&c.constant_row[2]) + 33.4536).abs() < 1e-4);
        assert!(c.n4_range.is_some());
    }

    #[test]
    fn n4_exact_endpoints_degenerate() {
        let lam = q(1, 100);
        let opts = N4Options { convention: Convention::Secular, lambda: Some(lam.clone()), omega: OmegaMode::Exact, bits: 256 };
        let c = corridor_n4(&RBig::ONE, &RBig::ONE, &opts).unwrap();
        let (lo, hi) = c.n4_range.clone().unwrap();
        let l = real::from_rational(&lam, 256);
        let mid = &(&lo + &hi) / &real::from_int(2, 256);
        assert_eq!(classify_real(4, &c.couplings(&l, &mid).unwrap()).unwrap().tag, SpectrumTag::RealSimple);
        let eps = &(&hi - &lo) * &real::pow2(-30, 64);
        for x in [&hi + &eps, &lo - &eps] {
            assert_ne!(classify_real(4, &c.couplings(&l, &x).unwrap()).unwrap().tag, SpectrumTag::RealSimple);
        }
        for x in [&hi - &eps, &lo + &eps] {
            assert_eq!(classify_real(4, &c.couplings(&l, &x).unwrap()).unwrap().tag, SpectrumTag::RealSimple);
        }
    }

    #[test]
    fn row2_matches_extraction() {
        for n in 3..=6 {
            let c = c_matrix(n, 128).unwrap();
            let closed = row2_closed_form(n).unwrap();
            assert_eq!(c.row2, closed.iter().map(|&x| IBig::from(x)).collect::<Vec<_>>());
            for (x, y) in c.rows[1].iter().zip(&closed) {
                assert!((f(x) - *y as f64).abs() < 1e-20);
            }
            assert!(c.rows[0].iter().all(|x| (f(x) - 1.0).abs() < 1e-20));
        }
        assert_eq!(row2_closed_form(7).unwrap(), vec![40, 33, 20, 1, -24, -55]);
        let seven: Vec<IBig> = [40, 33, 20, 1, -24, -55].iter().map(|&x| IBig::from(x)).collect();
        assert_eq!(row2_from_charpoly(7).unwrap(), seven);
    }

    #[test]
    fn n5_third_row() {
        let c = c_matrix(5, 128).unwrap();
        let want = [-174.62, 52.49, 189.33, -203.38];
        for (x, w) in c.rows[2].iter().zip(want) {
            assert!((f(x) - w).abs() < 0.005, "{} vs {w}", f(x));
        }
    }

    #[test]
    fn n5_leading_table_values() {
        let t = n5_leading_table(128).unwrap();
        let m = [-0.5042, -0.2521, 0.7564, 0.7564, 0.2521, 0.2521];
        let v = [-1.0838, -0.5419, 1.6257, 1.6257, 0.5419, 0.5419];
        for (x, w) in t[0].iter().zip(m) {
            assert!((f(x) - w).abs() < 1e-4);
        }
        for (x, w) in t[2].iter().zip(v) {
            assert!((f(x) - w).abs() < 1e-4);
        }
    }

    #[test]
    fn solve_n5_small() {
        let p = ExtremumParams::new(5, vec![q(1, 100), q(1, 100), q(1, 200)]).unwrap();
        let s = corridor_solve(&p, &CorridorOptions::new(q(1, 100))).unwrap();
        assert!(s.iterations() <= 10);
        assert_eq!(classify_real(5, &s.couplings).unwrap().tag, SpectrumTag::RealSimple);
        // the series agrees with the full solution to the order kept
        let ser = s.series_shifts();
        for (a, b) in ser.iter().zip(&s.shifts) {
            assert!(f(&real::abs(&(a - b))) < 1e-20);
        }
    }
}
