//! Real tridiagonal non-Hermitian Hamiltonians H⁽ᴺ⁾(A, B, …).
//!
//! Site k couples to site k+1 through `+√X_k` above and `−√X_k` below the
//! diagonal. Couplings are stored as `X_k`, so exact code never meets a square root.

use dashu::rational::RBig;

use crate::algebra::real::{self, Real};
use crate::error::{Error, Result};
use crate::spectra;

/// Coupling names in order, skipping `E` (reserved for the energy): A, B, C, D, F, G, …
pub fn coupling_names(n: usize) -> Vec<String> {
    let letters: Vec<char> = ('A'..='Z').filter(|&c| c != 'E').collect();
    (0..n.saturating_sub(1)).map(|k| if k < letters.len() { letters[k].to_string() } else { format!("X{}", k + 1) }).collect()
}

/// Names of the shifts away from the EPN: m, n, v, w, y, z, then s7, s8, …
pub fn shift_names(n: usize) -> Vec<String> {
    let base = ["m", "n", "v", "w", "y", "z"];
    (0..n.saturating_sub(1)).map(|k| if k < base.len() { base[k].to_string() } else { format!("s{}", k + 1) }).collect()
}

/// Symbolic matrix entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    Diagonal(i64),
    /// `+√X_k` at position (k, k+1).
    Upper(usize),
    /// `−√X_k` at position (k+1, k).
    Lower(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalHamiltonian {
    pub n: usize,
    pub diagonal: Vec<i64>,
    pub couplings: Vec<RBig>,
}

fn check_positive(vals: impl Iterator<Item = (usize, bool)>, n: usize) -> Result<()> {
    let names = coupling_names(n);
    for (k, ok) in vals {
        if !ok {
            return Err(Error::Domain(format!(
                "coupling {} (index {k}) must be strictly positive; the Hermitian/complex branch is outside the model",
                names[k]
            )));
        }
    }
    Ok(())
}

/// Builds H⁽ᴺ⁾ for strictly positive rational couplings.
pub fn build(n: usize, couplings: &[RBig]) -> Result<TridiagonalHamiltonian> {
    let diagonal = spectra::diagonal(n)?;
    if couplings.len() != n - 1 {
        return Err(Error::InvalidArgument(format!("expected {} couplings, got {}", n - 1, couplings.len())));
    }
    check_positive(couplings.iter().enumerate().map(|(k, c)| (k, c > &RBig::ZERO)), n)?;
    Ok(TridiagonalHamiltonian { n, diagonal, couplings: couplings.to_vec() })
}

impl TridiagonalHamiltonian {
    pub fn entry(&self, i: usize, j: usize) -> Entry {
        if i == j {
            Entry::Diagonal(self.diagonal[i])
        } else if j == i + 1 {
            Entry::Upper(i)
        } else if i == j + 1 {
            Entry::Lower(j)
        } else {
            Entry::Zero
        }
    }

    pub fn trace(&self) -> i64 {
        self.diagonal.iter().sum()
    }

    /// Exact product of the paired off-diagonal entries around link k, i.e. `−X_k`.
    pub fn link_product(&self, k: usize) -> RBig {
        -self.couplings[k].clone()
    }

    pub fn entry_real(&self, i: usize, j: usize, bits: usize) -> Real {
        match self.entry(i, j) {
            Entry::Zero => real::zero(bits),
            Entry::Diagonal(d) => real::from_int(d, bits),
            Entry::Upper(k) => real::sqrt(&real::from_rational(&self.couplings[k], bits)),
            Entry::Lower(k) => -real::sqrt(&real::from_rational(&self.couplings[k], bits)),
        }
    }

    pub fn dense(&self, bits: usize) -> Vec<Vec<Real>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry_real(i, j, bits)).collect()).collect()
    }

    pub fn dense_f64(&self) -> Vec<Vec<f64>> {
        self.dense(64).iter().map(|r| r.iter().map(real::to_f64).collect()).collect()
    }
}

/// Dense matrix for big-float couplings (e.g. irrational EPN values).
pub fn dense_from_reals(n: usize, couplings: &[Real], bits: usize) -> Result<Vec<Vec<Real>>> {
    let diag = spectra::diagonal(n)?;
    if couplings.len() != n - 1 {
        return Err(Error::InvalidArgument(format!("expected {} couplings, got {}", n - 1, couplings.len())));
    }
    check_positive(couplings.iter().enumerate().map(|(k, c)| (k, real::sign(c) > 0)), n)?;
    let mut m = vec![vec![real::zero(bits); n]; n];
    for i in 0..n {
        m[i][i] = real::from_int(diag[i], bits);
    }
    for k in 0..n - 1 {
        let s = real::sqrt(&couplings[k].clone().with_precision(bits).value());
        m[k][k + 1] = s.clone();
        m[k + 1][k] = -s;
    }
    Ok(m)
}

/// `coupling_k = anchor_k − shift_k`, rejecting any nonpositive result.
pub fn shifted_couplings(anchor: &[RBig], shifts: &[RBig]) -> Result<Vec<RBig>> {
    if anchor.len() != shifts.len() {
        return Err(Error::InvalidArgument("anchor and shift lengths differ".into()));
    }
    let out: Vec<RBig> = anchor.iter().zip(shifts).map(|(a, s)| a - s).collect();
    check_positive(out.iter().enumerate().map(|(k, c)| (k, c > &RBig::ZERO)), anchor.len() + 1)?;
    Ok(out)
}

/// Big-float variant of [`shifted_couplings`].
pub fn shifted_couplings_real(anchor: &[Real], shifts: &[Real]) -> Result<Vec<Real>> {
    if anchor.len() != shifts.len() {
        return Err(Error::InvalidArgument("anchor and shift lengths differ".into()));
    }
    let out: Vec<Real> = anchor.iter().zip(shifts).map(|(a, s)| a - s).collect();
    check_positive(out.iter().enumerate().map(|(k, c)| (k, real::sign(c) > 0)), anchor.len() + 1)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dashu::integer::{IBig, UBig};

    fn q(p: i64, d: u64) -> RBig {
        RBig::from_parts(IBig::from(p), UBig::from(d))
    }

    #[test]
    fn two_by_two_at_unit_coupling() {
        let h = build(2, &[RBig::ONE]).unwrap();
        assert_eq!(h.dense_f64(), vec![vec![-1.0, 1.0], vec![-1.0, 1.0]]);
    }

    #[test]
    fn antisymmetric_off_diagonal() {
        let h = build(4, &[q(1, 3), RBig::from(2), q(7, 5)]).unwrap();
        let d = h.dense(128);
        for k in 0..3 {
            assert!(real::is_zero(&(&d[k][k + 1] + &d[k + 1][k])));
            assert_eq!(h.link_product(k), -h.couplings[k].clone());
        }
        assert_eq!(h.trace(), 0);
        assert_eq!(h.entry(0, 2), Entry::Zero);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(matches!(build(3, &[RBig::ZERO, RBig::ONE]), Err(Error::Domain(_))));
        assert!(build(3, &[RBig::ONE]).is_err());
    }

    #[test]
    fn shifts() {
        let anchor = [q(27, 7), q(64, 7)];
        assert_eq!(shifted_couplings(&anchor, &[RBig::ZERO, RBig::ZERO]).unwrap(), anchor.to_vec());
        assert!(matches!(shifted_couplings(&anchor, &anchor), Err(Error::Domain(_))));
        assert_eq!(shifted_couplings(&anchor, &[RBig::from(-1), RBig::ZERO]).unwrap(), vec![q(34, 7), q(64, 7)]);
    }

    #[test]
    fn names() {
        assert_eq!(coupling_names(6), vec!["A", "B", "C", "D", "F"]);
        assert_eq!(shift_names(6), vec!["m", "n", "v", "w", "y"]);
    }
}
