//! Independent oracles and property tests.

use dashu::integer::IBig;
use dashu::rational::RBig;
use epkit::algebra::real::{self, Real};
use epkit::algebra::upoly::RationalPoly;
use epkit::charpoly::{evaluate_charpoly, symbolic_charpoly};
use epkit::corridor::{corridor_n3, corridor_solve, leading_order, CorridorOptions};
use epkit::epn::{cached_epn, shifted_secular};
use epkit::hamiltonian::build;
use epkit::reality::{
    boundary_along_ray, classify, classify_f64, derivative_factorization, lemma1_bounds, Convention, ExtremumParams, RayOutcome,
    SpectrumTag,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn q(p: i64, d: u64) -> RBig {
    RBig::from_parts(IBig::from(p), d.into())
}

fn f(x: &Real) -> f64 {
    real::to_f64(x)
}

/// Eigenvalues of the dense f64 matrix via nalgebra.
fn dense_eigenvalues(n: usize, couplings: &[f64]) -> Vec<(f64, f64)> {
    let d = epkit::spectra::diagonal(n).unwrap();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = d[i] as f64;
    }
    for (k, &c) in couplings.iter().enumerate() {
        let s = c.sqrt();
        m[(k, k + 1)] = s;
        m[(k + 1, k)] = -s;
    }
    m.complex_eigenvalues().iter().map(|z| (z.re, z.im)).collect()
}

#[test]
fn classification_agrees_with_dense_eigenvalues() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..300 {
        let n = rng.gen_range(2..=5);
        let c: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.0..12.0)).collect();
        let ev = dense_eigenvalues(n, &c);
        let max_im = ev.iter().map(|z| z.1.abs()).fold(0.0, f64::max);
        let mut re: Vec<f64> = ev.iter().map(|z| z.0).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let min_gap = re.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        let tag = classify_f64(n, &c).unwrap().tag;
        // skip points too close to the boundary for f64 eigenvalues
        if max_im > 1e-3 {
            assert_eq!(tag, SpectrumTag::ComplexPresent, "{c:?}");
            checked += 1;
        } else if max_im == 0.0 && min_gap > 1e-3 {
            assert_eq!(tag, SpectrumTag::RealSimple, "{c:?}");
            checked += 1;
        }
    }
    assert!(checked > 250);
}

#[test]
fn hamiltonian_charpoly_matches_dense_determinant() {
    let c = [q(3, 2), q(5, 1), q(7, 3)];
    let p = evaluate_charpoly(4, &c).unwrap();
    let cf: Vec<f64> = c.iter().map(|x| f(&real::from_rational(x, 64))).collect();
    for (re, im) in dense_eigenvalues(4, &cf) {
        // |p(λ)| small at every eigenvalue
        let coeffs: Vec<f64> = p.coeffs().iter().map(|x| f(&real::from_rational(x, 64))).collect();
        let (mut pr, mut pi) = (0.0, 0.0);
        for c in coeffs.iter().rev() {
            let nr = pr * re - pi * im + c;
            pi = pr * im + pi * re;
            pr = nr;
        }
        assert!((pr * pr + pi * pi).sqrt() < 1e-8);
    }
    assert!(build(4, &c).is_ok());
}

#[test]
fn discriminant_matches_root_differences() {
    let roots = [q(-3, 1), q(-1, 1), q(4, 1), q(5, 2)];
    for k in 2..=4 {
        let r = &roots[..k];
        let p = RationalPoly::from_roots(r);
        let mut prod = RBig::ONE;
        for i in 0..k {
            for j in i + 1..k {
                let d = &r[i] - &r[j];
                prod = prod * &d * &d;
            }
        }
        assert_eq!(p.discriminant(), prod);
    }
    assert_eq!(RationalPoly::from_ints(&[-12, -13, 0, 1]).discriminant(), RBig::from(4900));
}

#[test]
fn ray_toward_ep3_meets_lower_doublet_first() {
    let start = [RBig::ONE, RBig::ONE];
    let dir = [q(20, 7), q(57, 7)];
    let out = boundary_along_ray(3, &start, &dir, &q(1, 1_000_000_000_000), 256).unwrap();
    // independent: shifts shrink as (1−t); crossing where n = (2p/7)(6+√p)
    let g = |t: f64| {
        let s = 1.0 - t;
        let (p, n) = (11.0 / 3.0 * s, 57.0 / 7.0 * s);
        n - 2.0 * p / 7.0 * (6.0 + p.sqrt())
    };
    let (mut lo, mut hi) = (0.0, 0.5);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    match out {
        RayOutcome::Boundary { t_hi, order, class, .. } => {
            let t = f(&real::from_rational(&t_hi, 64));
            assert!((t - lo).abs() < 1e-10, "{t} vs {lo}");
            assert!((t - 0.1427).abs() < 1e-3);
            assert_eq!(order, 2);
            assert_ne!(class.tag, SpectrumTag::RealSimple);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn first_two_rows_reproduce_linear_relations() {
    let p = ExtremumParams::new(5, vec![q(1, 100), q(2, 100), q(1, 200)]).unwrap();
    let lam = q(1, 100);
    let s = corridor_solve(&p, &CorridorOptions::new(lam.clone())).unwrap();
    let fact = derivative_factorization(&p, Convention::Secular).unwrap();
    let l = real::from_rational(&lam, 256);
    let mu = -f(&real::from_rational(&fact.coefficients[3], 256));
    let nu = f(&real::from_rational(&fact.coefficients[2], 256));
    let z: Vec<f64> = s.shifts.iter().map(f).collect();
    let lf = f(&l);
    assert!(((z[0] + z[1] + z[2] + z[3]) / (mu * lf * lf) - 1.0).abs() < 1e-12);
    assert!(((18.0 * z[0] + 11.0 * z[1] - 2.0 * z[2] - 21.0 * z[3]) / (nu * lf.powi(3)) - 1.0).abs() < 1e-10);
}

#[test]
fn iteration_contracts() {
    for (n, sp) in [(5, vec![q(1, 100), q(1, 100), q(1, 200)]), (6, vec![q(1, 100); 4])] {
        let p = ExtremumParams::new(n, sp).unwrap();
        let s = corridor_solve(&p, &CorridorOptions::new(q(1, 100))).unwrap();
        let om: Vec<f64> = s.trace.iter().map(|t| f(t.omega.as_ref().unwrap())).collect();
        let d: Vec<f64> = om.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        for w in d.windows(2) {
            if w[0] > 1e-60 {
                assert!(w[1] / w[0] < 0.5, "N={n}: {d:?}");
            }
        }
        let ch: Vec<f64> = s.trace.iter().map(|t| f(&t.change)).collect();
        for w in ch.windows(2).skip(1) {
            assert!(w[1] < 0.5 * w[0] || w[1] == 0.0, "N={n}: {ch:?}");
        }
    }
}

#[test]
fn n6_auxiliary_constraints() {
    let ep = cached_epn(6).unwrap();
    let sec = shifted_secular(&ep, 128).unwrap();
    // (m, n, v, w, y) exponents
    let omega = sec[2].nonlinear_part();
    for e in [[1, 0, 1, 0, 0], [1, 0, 0, 1, 0], [1, 0, 0, 0, 1], [0, 1, 0, 1, 0], [0, 1, 0, 0, 1], [0, 0, 1, 0, 1]] {
        assert!((f(&omega.coeff(&e)) - 1.0).abs() < 1e-30);
    }
    assert_eq!(omega.len(), 6);
    let sigma = sec[1].nonlinear_part();
    let want = [
        (-36.0, [1, 0, 1, 0, 0]),
        (-17.0, [1, 0, 0, 1, 0]),
        (8.0, [1, 0, 0, 0, 1]),
        (-10.0, [0, 1, 0, 1, 0]),
        (15.0, [0, 1, 0, 0, 1]),
        (28.0, [0, 0, 1, 0, 1]),
    ];
    for (c, e) in want {
        assert!((f(&sigma.coeff(&e)) - c).abs() < 1e-30);
    }
    let pi = sec[0].nonlinear_part();
    assert!((f(&pi.coeff(&[1, 0, 1, 0, 1])) + 1.0).abs() < 1e-30);
    assert!(real::is_zero(&pi.coeff(&[1, 0, 0, 1, 1])));
    assert!(pi.terms().any(|(_, c)| f(c).fract().abs() > 1e-6));
}

#[test]
fn symbolic_charpoly_evaluates_consistently() {
    let s = symbolic_charpoly(5).unwrap();
    let c = [q(1, 3), q(2, 1), q(5, 7), q(11, 2)];
    assert_eq!(s.evaluate(&c), evaluate_charpoly(5, &c).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ep2_boundary(num in 0i64..400) {
        let a = q(num, 200);
        let tag = classify(2, std::slice::from_ref(&a)).unwrap().tag;
        let want = match a.cmp(&RBig::ONE) {
            std::cmp::Ordering::Less => SpectrumTag::RealSimple,
            std::cmp::Ordering::Equal => SpectrumTag::RealDegenerate,
            std::cmp::Ordering::Greater => SpectrumTag::ComplexPresent,
        };
        prop_assert_eq!(tag, want);
    }

    #[test]
    fn lemma1_contains_midline(num in 1i64..4000) {
        let p = q(num, 1000);
        let b = lemma1_bounds(&p, 128).unwrap();
        let mid = f(&real::from_rational(&(RBig::from(12) * &p / RBig::from(7)), 64));
        prop_assert!(f(&b.n_lo) < mid && mid < f(&b.n_hi));
    }

    #[test]
    fn corridor_n3_edges_are_degenerate(an in 1i64..50, ln in 1i64..20) {
        let c = corridor_n3(&q(an, 10)).unwrap();
        let lam = q(ln, 1000);
        prop_assert_eq!(classify(3, &c.couplings(&lam, &c.gamma_hi)).unwrap().tag, SpectrumTag::RealDegenerate);
        prop_assert_eq!(classify(3, &c.couplings(&lam, &c.gamma_lo)).unwrap().tag, SpectrumTag::RealDegenerate);
        prop_assert_eq!(classify(3, &c.couplings(&lam, &RBig::ZERO)).unwrap().tag, SpectrumTag::RealSimple);
    }

    #[test]
    fn derivative_vanishes_at_extrema(a in 1i64..30, b in 1i64..30, c in 0i64..30) {
        prop_assume!(c < a);
        let p = ExtremumParams::new(5, vec![RBig::from(a), RBig::from(b), RBig::from(c)]).unwrap();
        let d = derivative_factorization(&p, Convention::Secular).unwrap();
        // φ′ from the implied coefficients
        let mut phi = d.coefficients.clone();
        phi[0] = RBig::ZERO;
        let dphi = RationalPoly::new(phi).derivative();
        for x in &d.extrema {
            prop_assert_eq!(dphi.eval(x), RBig::ZERO);
        }
        prop_assert_eq!(d.extrema.iter().fold(RBig::ZERO, |s, x| s + x), RBig::ZERO);
    }

    #[test]
    fn n5_leading_shifts_positive(a in 2i64..40, b in 1i64..40, c in 0i64..40) {
        prop_assume!(c < a);
        let lo = leading_order(5, Convention::Secular, 128).unwrap();
        let x: Vec<Real> = [a, b, c].iter().map(|&v| real::from_int(v, 128)).collect();
        for s in lo.eval(&x) {
            prop_assert!(real::sign(&s) > 0);
        }
    }
}
