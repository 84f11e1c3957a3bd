//! Secular polynomials det(E·I − H⁽ᴺ⁾), numerically and symbolically.
//!
//! All variants use the three-term recurrence
//! `p₀ = 1, p₁ = E − d₁, p_k = (E − d_k) p_{k−1} + X_{k−1} p_{k−2}`.

use dashu::rational::RBig;

use crate::algebra::algebraic::NumberField;
use crate::algebra::mpoly::{Coeff, MPoly};
use crate::algebra::real::{self, Real};
use crate::algebra::upoly::RationalPoly;
use crate::error::{Error, Result};
use crate::hamiltonian::coupling_names;
use crate::spectra;

/// Largest dimension accepted by the symbolic expansion.
pub const MAX_SYMBOLIC_N: usize = 16;

/// Monic secular polynomial whose `E^k` coefficients are polynomials in the couplings.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicCharPoly {
    pub n: usize,
    /// `coeffs[k]` multiplies `E^k`; variables are the couplings A, B, …
    pub coeffs: Vec<MPoly<RBig>>,
}

impl SymbolicCharPoly {
    pub fn variable_names(&self) -> Vec<String> {
        coupling_names(self.n)
    }

    pub fn coefficient(&self, k: usize) -> &MPoly<RBig> {
        &self.coeffs[k]
    }

    pub fn evaluate(&self, couplings: &[RBig]) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| c.eval(couplings)).collect())
    }

    pub fn display(&self) -> String {
        let names = self.variable_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mut parts = Vec::new();
        for k in (0..=self.n).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let body = c.display_with(&refs);
            let e = match k {
                0 => String::new(),
                1 => "E".into(),
                _ => format!("E^{k}"),
            };
            parts.push(match (k, c.len() == 1 && c.constant_term() == RBig::ONE) {
                (0, _) => format!("({body})"),
                (_, true) => e,
                _ => format!("({body})*{e}"),
            });
        }
        parts.join(" + ")
    }
}

/// Recurrence over polynomials in `E` whose coefficients live in `MPoly<C>`.
fn recurrence_mpoly<C: Coeff>(nvars: usize, diag: &[C], links: &[MPoly<C>]) -> Vec<MPoly<C>> {
    let n = diag.len();
    let zero = MPoly::<C>::zero(nvars);
    let mut prev2 = vec![MPoly::one(nvars)];
    let mut prev = vec![MPoly::constant(nvars, diag[0].neg()), MPoly::one(nvars)];
    for k in 1..n {
        let mut next = vec![zero.clone(); k + 2];
        for (j, c) in prev.iter().enumerate() {
            next[j + 1] = &next[j + 1] + c;
            next[j] = &next[j] - &c.scale(&diag[k]);
        }
        for (j, c) in prev2.iter().enumerate() {
            next[j] = &next[j] + &(&links[k - 1] * c);
        }
        prev2 = prev;
        prev = next;
    }
    prev
}

pub fn symbolic_charpoly(n: usize) -> Result<SymbolicCharPoly> {
    if !(2..=MAX_SYMBOLIC_N).contains(&n) {
        return Err(Error::InvalidArgument(format!("dimension must lie in 2..={MAX_SYMBOLIC_N}")));
    }
    let diag: Vec<RBig> = spectra::diagonal(n)?.into_iter().map(RBig::from).collect();
    let nv = n - 1;
    let links: Vec<MPoly<RBig>> = (0..nv).map(|k| MPoly::var(nv, k)).collect();
    Ok(SymbolicCharPoly { n, coeffs: recurrence_mpoly(nv, &diag, &links) })
}

/// Secular polynomial at rational couplings (any sign).
pub fn evaluate_charpoly(n: usize, couplings: &[RBig]) -> Result<RationalPoly> {
    let diag = spectra::diagonal(n)?;
    if couplings.len() != n - 1 {
        return Err(Error::InvalidArgument(format!("expected {} couplings, got {}", n - 1, couplings.len())));
    }
    let mut prev2 = RationalPoly::one();
    let mut prev = RationalPoly::from_ints(&[-diag[0], 1]);
    for k in 1..n {
        let lin = RationalPoly::from_ints(&[-diag[k], 1]);
        let next = &(&lin * &prev) + &prev2.scale(&couplings[k - 1]);
        prev2 = prev;
        prev = next;
    }
    Ok(prev)
}

/// Secular polynomial coefficients (ascending powers) at big-float couplings.
pub fn evaluate_charpoly_real(n: usize, couplings: &[Real], bits: usize) -> Result<Vec<Real>> {
    let diag = spectra::diagonal(n)?;
    if couplings.len() != n - 1 {
        return Err(Error::InvalidArgument(format!("expected {} couplings, got {}", n - 1, couplings.len())));
    }
    let z = real::zero(bits);
    let mut prev2 = vec![real::from_int(1, bits)];
    let mut prev = vec![real::from_int(-diag[0], bits), real::from_int(1, bits)];
    for k in 1..n {
        let d = real::from_int(diag[k], bits);
        let mut next = vec![z.clone(); k + 2];
        for (j, c) in prev.iter().enumerate() {
            next[j + 1] = &next[j + 1] + c;
            next[j] = &next[j] - &(&d * c);
        }
        for (j, c) in prev2.iter().enumerate() {
            next[j] = &next[j] + &(&couplings[k - 1] * c);
        }
        prev2 = prev;
        prev = next;
    }
    Ok(prev)
}

/// Secular polynomial in the shifts `s_k`, with couplings `anchor_k − s_k` and
/// anchors given as elements of a number field. Coefficients are reduced modulo
/// the field's defining polynomial; `result[k]` multiplies `E^k`.
pub fn shifted_charpoly(n: usize, field: &NumberField, anchor: &[RationalPoly]) -> Result<Vec<MPoly<RationalPoly>>> {
    if anchor.len() != n - 1 {
        return Err(Error::InvalidArgument(format!("expected {} anchor values, got {}", n - 1, anchor.len())));
    }
    let diag: Vec<RationalPoly> = spectra::diagonal(n)?.into_iter().map(|d| RationalPoly::constant(RBig::from(d))).collect();
    let nv = n - 1;
    let links: Vec<MPoly<RationalPoly>> =
        anchor.iter().enumerate().map(|(k, a)| &MPoly::constant(nv, a.clone()) - &MPoly::var(nv, k)).collect();
    let raw = recurrence_mpoly(nv, &diag, &links);
    Ok(raw.iter().map(|c| c.map_coeffs(|p| field.reduce(p))).collect())
}

/// Evaluates every field coefficient of a shifted polynomial to big-floats.
pub fn shifted_to_real(field: &NumberField, p: &MPoly<RationalPoly>, bits: usize) -> MPoly<Real> {
    p.map_coeffs(|c| field.eval(c, bits))
}
