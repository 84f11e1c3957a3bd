//! Exceptional points of order N: conditions, certified localization and the
//! Jordan chain at the EPN.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use dashu::rational::RBig;

use crate::algebra::algebraic::{AlgebraicNumber, NumberField, QuadraticSurd};
use crate::algebra::elimination::{back_substitute_field, eliminate_full, EliminationMethod, EliminationOptions, PolySystem};
use crate::algebra::mpoly::MPoly;
use crate::algebra::real::{self, Real};
use crate::algebra::upoly::RationalPoly;
use crate::charpoly::{evaluate_charpoly_real, shifted_charpoly, shifted_to_real, symbolic_charpoly};
use crate::error::{Error, Result};
use crate::hamiltonian::{coupling_names, dense_from_reals};

/// The N−1 conditions "coefficient of E^k vanishes", k = 0 … N−2.
pub fn epn_system(n: usize) -> Result<PolySystem> {
    let s = symbolic_charpoly(n)?;
    PolySystem::new(coupling_names(n), s.coeffs[..n - 1].to_vec())
}

/// Kept variable used by default: B at N = 5, A otherwise.
pub fn default_keep(n: usize) -> usize {
    if n == 5 {
        1
    } else {
        0
    }
}

#[derive(Clone, Debug)]
pub struct EpnOptions {
    pub precision_bits: usize,
    pub keep: Option<usize>,
    pub elimination: EliminationOptions,
}

impl Default for EpnOptions {
    fn default() -> Self {
        Self { precision_bits: real::DEFAULT_PRECISION, keep: None, elimination: EliminationOptions::default() }
    }
}

/// A real root of the eliminant that was discarded, with the reason.
#[derive(Clone, Debug)]
pub struct RejectedRoot {
    pub keep_value: Real,
    pub couplings: Vec<Real>,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct EPNSolution {
    pub n: usize,
    pub names: Vec<String>,
    pub keep: usize,
    pub method: EliminationMethod,
    /// Square-free primitive eliminant in the kept coupling.
    pub eliminant: RationalPoly,
    /// `Q(θ)` with θ the kept coupling at the physical EPN.
    pub field: NumberField,
    /// Couplings as elements of `field`.
    pub elements: Vec<RationalPoly>,
    pub couplings: Vec<AlgebraicNumber>,
    /// Zero when every condition vanishes identically in `field`; otherwise a numeric bound.
    pub residual_bound: Real,
    /// Largest |coefficient| of the secular polynomial below E^N, evaluated in big-floats.
    pub numeric_residual: Real,
    pub precision_bits: usize,
    pub rejected: Vec<RejectedRoot>,
    /// Further all-positive solutions, if any (the first one found is reported above).
    pub other_positive: Vec<Vec<Real>>,
}

impl EPNSolution {
    pub fn values(&self, bits: usize) -> Vec<Real> {
        self.elements.iter().map(|e| self.field.eval(e, bits)).collect()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values(64).iter().map(real::to_f64).collect()
    }

    /// Exact values when every coupling is rational.
    pub fn rational_values(&self) -> Option<Vec<RBig>> {
        self.couplings.iter().map(|c| c.as_rational()).collect()
    }

    pub fn minimal_polynomials(&self) -> Vec<RationalPoly> {
        self.couplings.iter().map(|c| c.polynomial().clone()).collect()
    }

    pub fn surd_forms(&self) -> Vec<Option<QuadraticSurd>> {
        self.couplings.iter().map(|c| c.quadratic_surd()).collect()
    }

    pub fn is_exact(&self) -> bool {
        real::is_zero(&self.residual_bound)
    }
}

impl fmt::Display for EPNSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.values(self.precision_bits);
        let parts: Vec<String> = self.names.iter().zip(&v).map(|(n, x)| format!("{n} = {}", real::to_decimal(x, 10))).collect();
        write!(f, "EP{}: {}", self.n, parts.join(", "))
    }
}

/// Localizes the EPN: eliminates, back-substitutes each real root of the
/// eliminant, keeps the all-positive coupling vector and logs the rest.
pub fn locate_epn(n: usize, opts: &EpnOptions) -> Result<EPNSolution> {
    let sys = epn_system(n)?;
    let keep = opts.keep.unwrap_or_else(|| default_keep(n));
    if keep >= n - 1 {
        return Err(Error::InvalidArgument(format!("keep index {keep} out of range")));
    }
    let bits = opts.precision_bits.max(64);
    let elim = eliminate_full(&sys, keep, opts.elimination)?;
    if !elim.in_shape_position() {
        let missing =
            elim.relations.iter().enumerate().find(|(_, r)| r.is_none()).map(|(i, _)| if i >= keep { i + 1 } else { i }).unwrap_or(0);
        return Err(Error::AmbiguousVariable(sys.vars[missing].clone()));
    }
    let names = sys.vars.clone();
    let mut chosen: Option<(NumberField, Vec<RationalPoly>)> = None;
    let mut rejected = Vec::new();
    let mut other_positive = Vec::new();
    for theta in AlgebraicNumber::roots_of(&elim.eliminant) {
        let (field, coords) = back_substitute_field(&elim, &theta)?;
        let signs: Vec<i32> = coords.iter().map(|c| field.sign(c)).collect();
        let vals: Vec<Real> = coords.iter().map(|c| field.eval(c, bits)).collect();
        if signs.iter().all(|&s| s > 0) {
            if chosen.is_none() {
                chosen = Some((field, coords));
            } else {
                other_positive.push(vals);
            }
            continue;
        }
        let reason = if signs[keep] <= 0 {
            format!("{} = {} is not positive", names[keep], real::to_decimal(&vals[keep], 4))
        } else {
            let bad: Vec<String> = signs
                .iter()
                .enumerate()
                .filter(|(_, &s)| s <= 0)
                .map(|(i, _)| format!("{} = {}", names[i], real::to_decimal(&vals[i], 4)))
                .collect();
            format!("leads to nonpositive {}", bad.join(", "))
        };
        rejected.push(RejectedRoot { keep_value: vals[keep].clone(), couplings: vals, reason });
    }
    let (field, elements) = chosen.ok_or(Error::NoPhysicalEpn(n))?;
    let exact = sys.polys.iter().all(|p| field.is_zero_at_theta(&field.eval_mpoly(p, &elements)));
    let values: Vec<Real> = elements.iter().map(|e| field.eval(e, bits)).collect();
    let coeffs = evaluate_charpoly_real(n, &values, bits)?;
    let numeric_residual = real::max_abs(coeffs[..n].iter());
    let residual_bound = if exact { real::zero(bits) } else { numeric_residual.clone() };
    let couplings = elements.iter().map(|e| field.to_algebraic(e)).collect();
    Ok(EPNSolution {
        n,
        names,
        keep,
        method: elim.method,
        eliminant: elim.eliminant,
        field,
        elements,
        couplings,
        residual_bound,
        numeric_residual,
        precision_bits: bits,
        rejected,
        other_positive,
    })
}

/// EPN at default options, computed once per dimension and shared.
pub fn cached_epn(n: usize) -> Result<Arc<EPNSolution>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<EPNSolution>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&n) {
        return Ok(s.clone());
    }
    let s = Arc::new(locate_epn(n, &EpnOptions::default())?);
    cache.lock().unwrap().insert(n, s.clone());
    Ok(s)
}

/// Secular coefficients (`result[k]` multiplies `E^k`) as polynomials in the
/// shifts `s_k = EPN_k − coupling_k`, with big-float coefficients.
pub fn shifted_secular(epn: &EPNSolution, bits: usize) -> Result<Vec<MPoly<Real>>> {
    let exact = shifted_charpoly(epn.n, &epn.field, &epn.elements)?;
    Ok(exact.iter().map(|p| shifted_to_real(&epn.field, p, bits)).collect())
}

/// Columns `q₁ … q_N` of a Jordan chain with `H q₁ = 0`, `H q_{k+1} = q_k`.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    pub n: usize,
    /// `q[i][j]` is row i of column j.
    pub q: Vec<Vec<Real>>,
    /// Nilpotent Jordan block with ones on the superdiagonal.
    pub j: Vec<Vec<i32>>,
    /// max |H Q − Q J|.
    pub residual: Real,
}

/// Jordan chain at an EPN. The top vector is `q_N = e₁`, and `q_k = H q_{k+1}`.
///
/// The chain ends in the kernel because `H` is nilpotent at the EPN; a
/// single Jordan block is confirmed by checking that `q₁` is nonzero relative
/// to the threshold `2^(−bits/3)`.
pub fn transition_matrix(epn: &EPNSolution, bits: usize) -> Result<TransitionMatrix> {
    let n = epn.n;
    let work = bits + 64;
    let h = dense_from_reals(n, &epn.values(work), work)?;
    let matvec = |v: &[Real]| -> Vec<Real> { real::mat_vec(&h, v, work) };
    let mut cols: Vec<Vec<Real>> = vec![Vec::new(); n];
    let mut v: Vec<Real> = (0..n).map(|i| real::from_int((i == 0) as i64, work)).collect();
    cols[n - 1] = v.clone();
    for k in (0..n - 1).rev() {
        v = matvec(&v);
        cols[k] = v.clone();
    }
    let scale = real::max_abs(h.iter().flatten()).max(real::from_int(1, work));
    let q1 = real::max_abs(cols[0].iter());
    let thresh = &scale.clone() * &real::pow2(-((bits / 3) as isize), work);
    if q1 <= thresh {
        return Err(Error::Precision("Jordan chain collapsed; geometric multiplicity exceeds one".into()));
    }
    let mut residual = real::zero(work);
    for k in 0..n {
        let hq = matvec(&cols[k]);
        for i in 0..n {
            let target = if k == 0 { real::zero(work) } else { cols[k - 1][i].clone() };
            let r = real::abs(&(&hq[i] - &target));
            if r > residual {
                residual = r;
            }
        }
    }
    let q = (0..n).map(|i| (0..n).map(|k| cols[k][i].clone().with_precision(bits).value()).collect()).collect();
    let j = (0..n).map(|r| (0..n).map(|c| (c == r + 1) as i32).collect()).collect();
    Ok(TransitionMatrix { n, q, j, residual: residual.with_precision(bits).value() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dashu::integer::{IBig, UBig};

    fn q(p: i64, d: u64) -> RBig {
        RBig::from_parts(IBig::from(p), UBig::from(d))
    }

    #[test]
    fn systems() {
        let s3 = epn_system(3).unwrap();
        assert_eq!(s3.polys.len(), 2);
        assert_eq!(s3.polys[1].display_with(&["A", "B"]), "A + B - 13");
        assert_eq!(s3.polys[0].display_with(&["A", "B"]), "-4*A + 3*B - 12");
        let s2 = epn_system(2).unwrap();
        assert_eq!(s2.polys[0].display_with(&["A"]), "A - 1");
    }

    #[test]
    fn ep2_and_ep3_exact() {
        let e2 = locate_epn(2, &EpnOptions::default()).unwrap();
        assert_eq!(e2.rational_values().unwrap(), vec![RBig::ONE]);
        let e3 = locate_epn(3, &EpnOptions::default()).unwrap();
        assert_eq!(e3.rational_values().unwrap(), vec![q(27, 7), q(64, 7)]);
        assert!(e3.is_exact());
    }

    #[test]
    fn ep4_surd() {
        let e4 = locate_epn(4, &EpnOptions::default()).unwrap();
        assert_eq!(e4.eliminant.integer_coeffs(), vec![IBig::from(-16848), IBig::from(1716), IBig::from(7)]);
        assert_eq!(e4.surd_forms()[0].as_ref().unwrap().to_string(), "-858/7+(30/7)*sqrt(949)");
        assert!(e4.is_exact());
    }

    #[test]
    fn chain_n2() {
        let e2 = locate_epn(2, &EpnOptions::default()).unwrap();
        let t = transition_matrix(&e2, 128).unwrap();
        let col1: Vec<f64> = t.q.iter().map(|r| real::to_f64(&r[0])).collect();
        assert_eq!(col1, vec![-1.0, -1.0]);
        assert!(real::is_zero(&t.residual));
    }

    fn close(x: &Real, y: f64, tol: f64) -> bool {
        (real::to_f64(x) - y).abs() < tol
    }

    #[test]
    fn ep5_values_and_rejections() {
        let e5 = locate_epn(5, &EpnOptions::default()).unwrap();
        let want = [1288938668811264i64, -23755497730560, -35083975824, 42197064, 41405];
        assert_eq!(e5.eliminant.integer_coeffs(), want.iter().map(|&c| IBig::from(c)).collect::<Vec<_>>());
        let v = e5.values(128);
        for (x, y) in v.iter().zip([18.6720, 50.7046, 80.1181, 77.5053]) {
            assert!(close(x, y, 1e-4));
        }
        assert_eq!(e5.rejected.len(), 3);
        assert!(close(&e5.rejected[2].couplings[0], -511.0383, 1e-3));
        assert!(e5.is_exact());
        assert!(e5.other_positive.is_empty());
    }

    #[test]
    fn ep6_values_and_sum() {
        let e6 = locate_epn(6, &EpnOptions::default()).unwrap();
        assert_eq!(e6.eliminant.degree(), Some(11));
        let v = e6.values(256);
        for (x, y) in v.iter().zip([32.3950, 86.6542, 146.7324, 183.1682, 153.0502]) {
            assert!(close(x, y, 1e-4));
        }
        let sum = v.iter().fold(real::zero(256), |acc, x| &acc + x);
        assert!(close(&sum, 602.0, 1e-12));
        assert!(e6.is_exact());
        assert!(e6.other_positive.is_empty());
    }

    #[test]
    fn chain_n3_matches_closed_form() {
        let e3 = locate_epn(3, &EpnOptions::default()).unwrap();
        let t = transition_matrix(&e3, 256).unwrap();
        let r21 = 21f64.sqrt();
        let want = [[36.0 / 7.0, -3.0, 1.0], [12.0 * r21 / 7.0, -3.0 * r21 / 7.0, 0.0], [24.0 * 3f64.sqrt() / 7.0, 0.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((real::to_f64(&t.q[i][j]) - want[i][j]).abs() < 1e-12);
            }
        }
        assert!(real::to_f64(&t.residual) < 1e-60);
    }
}
