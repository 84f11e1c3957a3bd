//! Square-well-like unperturbed spectra and their traceless shifts.

use crate::error::{Error, Result};

/// Largest supported dimension; keeps every energy well inside `i64`.
pub const MAX_DIMENSION: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnperturbedSpectrum {
    pub n: usize,
    /// Ẽ₁ … Ẽ_N.
    pub tilded: Vec<i64>,
    /// Spectral average Δ_N.
    pub shift: i64,
    /// E₁ … E_N, summing to zero.
    pub traceless: Vec<i64>,
}

/// Ẽₙ = 1 + (n−1)(3n−2)/2.
pub fn tilded_energy(n: usize) -> i64 {
    let n = n as i64;
    1 + (n - 1) * (3 * n - 2) / 2
}

/// Δ_N = N(N−1)/2 + 1.
pub fn spectral_shift(n: usize) -> i64 {
    let n = n as i64;
    n * (n - 1) / 2 + 1
}

/// Eₙ⁽ᴺ⁾ = (−N² + N + 2 − 5n + 3n²)/2.
pub fn traceless_energy(dim: usize, n: usize) -> i64 {
    let (dn, n) = (dim as i64, n as i64);
    (-dn * dn + dn + 2 - 5 * n + 3 * n * n) / 2
}

pub fn tilded_spectrum(count: usize) -> Result<Vec<i64>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    if count > MAX_DIMENSION {
        return Err(Error::InvalidArgument(format!("count exceeds {MAX_DIMENSION}")));
    }
    Ok((1..=count).map(tilded_energy).collect())
}

pub fn unperturbed_spectrum(n: usize) -> Result<UnperturbedSpectrum> {
    if n < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let tilded = tilded_spectrum(n)?;
    let shift = spectral_shift(n);
    let traceless = (1..=n).map(|k| traceless_energy(n, k)).collect();
    Ok(UnperturbedSpectrum { n, tilded, shift, traceless })
}

/// Traceless diagonal of the N-dimensional Hamiltonian.
pub fn diagonal(n: usize) -> Result<Vec<i64>> {
    Ok(unperturbed_spectrum(n)?.traceless)
}
