//! Shared inputs for the criterion benchmarks in `benches/`.

use epkit::RBig;

/// Rational couplings `k/7 + 1` for `k = 1 … n−1`: strictly positive and away from any EPN.
pub fn generic_couplings(n: usize) -> Vec<RBig> {
    (1..n).map(|k| RBig::from(k as i64) / RBig::from(7) + RBig::ONE).collect()
}

/// Extremum spacings used by the corridor benchmarks.
pub fn corridor_spacings(n: usize) -> Vec<RBig> {
    let h = RBig::from(1) / RBig::from(100);
    match n {
        5 => vec![h.clone(), h.clone(), &h / RBig::from(2)],
        _ => vec![h; n - 2],
    }
}
