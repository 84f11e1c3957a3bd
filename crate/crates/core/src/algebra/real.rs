//! Big-float helpers on top of `dashu`.

use dashu::base::{Abs, Sign};
use dashu::float::round::mode::HalfEven;
use dashu::float::FBig;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use crate::error::{Error, Result};

/// Binary big-float with round-half-even.
pub type Real = FBig<HalfEven, 2>;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 256;

pub fn zero(bits: usize) -> Real {
    Real::ZERO.with_precision(bits).value()
}

pub fn from_int(v: i64, bits: usize) -> Real {
    Real::from(v).with_precision(bits).value()
}

pub fn from_ibig(v: &IBig, bits: usize) -> Real {
    Real::from(v.clone()).with_precision(bits).value()
}

pub fn from_rational(r: &RBig, bits: usize) -> Real {
    r.to_float::<HalfEven, 2>(bits).value()
}

/// Exact value of a float as a rational.
pub fn to_rational(x: &Real) -> RBig {
    let (sig, exp) = x.repr().clone().into_parts();
    if exp >= 0 {
        RBig::from(sig << exp as usize)
    } else {
        RBig::from_parts(sig, UBig::ONE << (-exp) as usize)
    }
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Exact rational value of a finite `f64`.
pub fn rational_from_f64(v: f64) -> Result<RBig> {
    RBig::try_from(v).map_err(|_| Error::InvalidArgument(format!("non-finite value {v}")))
}

pub fn from_f64(v: f64, bits: usize) -> Result<Real> {
    Ok(from_rational(&rational_from_f64(v)?, bits))
}

pub fn sqrt(x: &Real) -> Real {
    use dashu::base::SquareRoot;
    x.sqrt()
}

pub fn abs(x: &Real) -> Real {
    x.clone().abs()
}

pub fn sign(x: &Real) -> i32 {
    if x.repr().is_zero() {
        0
    } else if x.sign() == Sign::Negative {
        -1
    } else {
        1
    }
}

pub fn is_zero(x: &Real) -> bool {
    x.repr().is_zero()
}

/// 2^e at the given precision.
pub fn pow2(e: isize, bits: usize) -> Real {
    Real::from_parts(IBig::ONE, e).with_precision(bits).value()
}

pub fn max_abs<'a>(xs: impl IntoIterator<Item = &'a Real>) -> Real {
    let mut best = Real::ZERO;
    for x in xs {
        let a = abs(x);
        if a > best {
            best = a;
        }
    }
    best
}

/// Gcd that treats zero as the identity (`dashu` panics on `gcd(0, 0)`).
pub fn gcd_ubig(a: &UBig, b: &UBig) -> UBig {
    use dashu::base::Gcd;
    if a == &UBig::ZERO {
        b.clone()
    } else if b == &UBig::ZERO {
        a.clone()
    } else {
        a.gcd(b)
    }
}

pub fn rational_sign(r: &RBig) -> i32 {
    if r.is_zero() {
        0
    } else if r.sign() == Sign::Negative {
        -1
    } else {
        1
    }
}

pub fn rational_abs(r: &RBig) -> RBig {
    r.clone().abs()
}

/// Parses `p/q`, an integer, or a decimal with optional exponent into an exact rational.
pub fn parse_rational(s: &str) -> Result<RBig> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse number '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: IBig = p.trim().parse().map_err(|_| bad())?;
        let q: IBig = q.trim().parse().map_err(|_| bad())?;
        if q == IBig::ZERO {
            return Err(bad());
        }
        return Ok(RBig::from_parts_signed(p, q));
    }
    if let Ok(i) = t.parse::<IBig>() {
        return Ok(RBig::from(i));
    }
    let d: dashu::float::DBig = t.parse().map_err(|_| bad())?;
    RBig::try_from(d).map_err(|_| bad())
}

/// Renders a rational as `p/q` (or `p` when integral).
pub fn rational_string(r: &RBig) -> String {
    if r.denominator() == &UBig::ONE {
        r.numerator().to_string()
    } else {
        format!("{}/{}", r.numerator(), r.denominator())
    }
}

/// Fixed-point decimal rendering of a rational with `digits` fractional digits.
pub fn rational_to_decimal(r: &RBig, digits: usize) -> String {
    let scale = IBig::from(10u8).pow(digits);
    let scaled = (r * RBig::from(scale)).round();
    let neg = scaled < IBig::ZERO;
    let mag = if neg { -scaled } else { scaled }.to_string();
    let (int_part, frac_part) = if digits == 0 {
        (mag, String::new())
    } else if mag.len() > digits {
        let (a, b) = mag.split_at(mag.len() - digits);
        (a.to_string(), b.to_string())
    } else {
        ("0".to_string(), format!("{mag:0>digits$}"))
    };
    let mut out = String::new();
    if neg && (int_part.chars().any(|c| c != '0') || frac_part.chars().any(|c| c != '0')) {
        out.push('-');
    }
    out.push_str(&int_part);
    if digits > 0 {
        out.push('.');
        out.push_str(&frac_part);
    }
    out
}

/// Fixed-point decimal rendering of a float.
pub fn to_decimal(x: &Real, digits: usize) -> String {
    rational_to_decimal(&to_rational(x), digits)
}

/// Scientific rendering with `sig` significant digits, for values spanning many magnitudes.
pub fn to_scientific(x: &Real, sig: usize) -> String {
    if is_zero(x) {
        return "0".to_string();
    }
    let r = to_rational(x);
    let a = rational_abs(&r);
    let approx = to_f64(&abs(x));
    let mut e = if approx.is_finite() && approx > 0.0 { approx.log10().floor() as i64 } else { 0 };
    let ten = RBig::from(10u8);
    let pow = |k: i64| -> RBig {
        if k >= 0 {
            RBig::from(IBig::from(10u8).pow(k as usize))
        } else {
            RBig::ONE / RBig::from(IBig::from(10u8).pow((-k) as usize))
        }
    };
    let mut mant = &a / pow(e);
    if mant >= ten {
        e += 1;
        mant = &a / pow(e);
    } else if mant < RBig::ONE {
        e -= 1;
        mant = &a / pow(e);
    }
    let digits = sig.saturating_sub(1);
    let mut body = rational_to_decimal(&mant, digits);
    if body.starts_with("10") {
        e += 1;
        body = rational_to_decimal(&(&a / pow(e)), digits);
    }
    let sgn = if rational_sign(&r) < 0 { "-" } else { "" };
    format!("{sgn}{body}e{e}")
}

/// Solves `m x = rhs` by Gaussian elimination with partial pivoting.
/// Fails when a pivot falls below `2^-(bits/3)` relative to the matrix scale.
pub fn solve_linear(m: &[Vec<Real>], rhs: &[Real], bits: usize) -> Result<Vec<Real>> {
    let n = m.len();
    if rhs.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("linear system shape mismatch".into()));
    }
    let mut a: Vec<Vec<Real>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r: Vec<Real> = row.iter().map(|x| x.clone().with_precision(bits).value()).collect();
            r.push(b.clone().with_precision(bits).value());
            r
        })
        .collect();
    let scale = max_abs(m.iter().flatten());
    let threshold = &scale * pow2(-((bits / 3) as isize), bits);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| abs(&a[i][col]).partial_cmp(&abs(&a[j][col])).unwrap()).unwrap();
        if abs(&a[piv][col]) <= threshold {
            return Err(Error::Precision(format!("singular matrix at column {col}")));
        }
        a.swap(col, piv);
        for row in col + 1..n {
            if is_zero(&a[row][col]) {
                continue;
            }
            let f = &a[row][col] / &a[col][col];
            for k in col..=n {
                let t = &f * &a[col][k];
                a[row][k] = &a[row][k] - &t;
            }
        }
    }
    let mut x = vec![zero(bits); n];
    for i in (0..n).rev() {
        let mut s = a[i][n].clone();
        for k in i + 1..n {
            s = &s - &(&a[i][k] * &x[k]);
        }
        x[i] = &s / &a[i][i];
    }
    Ok(x)
}

/// Inverts a square matrix (same pivoting rule as [`solve_linear`]).
pub fn invert(m: &[Vec<Real>], bits: usize) -> Result<Vec<Vec<Real>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Real> = (0..n).map(|i| from_int((i == j) as i64, bits)).collect();
        cols.push(solve_linear(m, &e, bits)?);
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn mat_vec(m: &[Vec<Real>], v: &[Real], bits: usize) -> Vec<Real> {
    m.iter().map(|row| row.iter().zip(v).fold(zero(bits), |acc, (a, b)| &acc + &(a * b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let r = RBig::from_parts(IBig::from(27), UBig::from(7u8));
        let x = from_rational(&r, 200);
        let back = to_rational(&x);
        let err = rational_abs(&(&back - &r));
        assert!(err < RBig::from_parts(IBig::ONE, UBig::ONE << 190));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("27/7").unwrap(), RBig::from_parts(IBig::from(27), UBig::from(7u8)));
        assert_eq!(parse_rational("-3").unwrap(), RBig::from(-3));
        assert_eq!(parse_rational("1.5e-3").unwrap(), RBig::from_parts(IBig::from(3), UBig::from(2000u32)));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn decimal_rendering() {
        let r = RBig::from_parts(IBig::from(-27), UBig::from(7u8));
        assert_eq!(rational_to_decimal(&r, 4), "-3.8571");
        assert_eq!(rational_to_decimal(&RBig::from_parts(IBig::from(1), UBig::from(200u8)), 2), "0.01");
        assert_eq!(rational_to_decimal(&RBig::from(5), 0), "5");
        let x = from_rational(&RBig::from_parts(IBig::from(3), UBig::from(20000u32)), 128);
        assert_eq!(to_scientific(&x, 3), "1.50e-4");
    }

    #[test]
    fn solves_small_system() {
        let m = vec![vec![from_int(2, 128), from_int(1, 128)], vec![from_int(1, 128), from_int(3, 128)]];
        let x = solve_linear(&m, &[from_int(3, 128), from_int(5, 128)], 128).unwrap();
        let third = from_rational(&RBig::from_parts(IBig::from(4), UBig::from(5u8)), 128);
        assert!(abs(&(&x[0] - &third)) < pow2(-120, 128));
        let sing = vec![vec![from_int(1, 128), from_int(2, 128)], vec![from_int(2, 128), from_int(4, 128)]];
        assert!(solve_linear(&sing, &[from_int(1, 128), from_int(1, 128)], 128).is_err());
    }
}
