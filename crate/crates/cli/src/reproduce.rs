//! Replays the published tables and constants.

use epkit::algebra::real::{self, Real};
use epkit::algebra::sturm::{isolate_real_roots, refine_root};
use epkit::corridor::{corridor_n4, n5_leading_table, row2_from_charpoly, N4Options};
use epkit::epn::{cached_epn, transition_matrix};
use epkit::reality::lemma1_bounds;
use epkit::spectra::{tilded_spectrum, unperturbed_spectrum};
use epkit::{IBig, RBig};
use serde_json::json;

use crate::{Failure, Outcome, RunConfig};

struct Check {
    name: &'static str,
    expected: String,
    got: String,
    tol: Option<f64>,
    pass: bool,
}

fn exact(name: &'static str, expected: String, got: String) -> Check {
    let pass = expected == got;
    Check { name, expected, got, tol: None, pass }
}

fn close(name: &'static str, expected: &[f64], got: &[f64], tol: f64) -> Check {
    let pass = expected.len() == got.len() && expected.iter().zip(got).all(|(a, b)| (a - b).abs() <= tol);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", ");
    Check { name, expected: fmt(expected), got: fmt(got), tol: Some(tol), pass }
}

fn f(x: &Real) -> f64 {
    real::to_f64(x)
}

fn positive_leading(c: Vec<IBig>) -> Vec<IBig> {
    if c.last().map(|x| *x < IBig::ZERO).unwrap_or(false) {
        c.into_iter().map(|x| -x).collect()
    } else {
        c
    }
}

fn ints(c: &[IBig]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn checks(bits: usize) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();

    let t = tilded_spectrum(10)?;
    out.push(exact("tilded energies 1..10", "[1, 3, 8, 16, 27, 41, 58, 78, 101, 127]".into(), format!("{t:?}")));
    let table: [&[i64]; 6] =
        [&[-1, 1], &[-3, -1, 4], &[-6, -4, 1, 9], &[-10, -8, -3, 5, 16], &[-15, -13, -8, 0, 11, 25], &[-21, -19, -14, -6, 5, 19, 36]];
    let got: Vec<Vec<i64>> = (2..=7).map(|n| unperturbed_spectrum(n).map(|s| s.traceless)).collect::<Result<_, _>>()?;
    out.push(exact("traceless spectra N=2..7", format!("{table:?}"), format!("{got:?}")));

    let ep3 = cached_epn(3)?;
    let v3 = ep3.rational_values().map(|v| v.iter().map(real::rational_string).collect::<Vec<_>>().join(", ")).unwrap_or_default();
    out.push(exact("EP3 couplings", "27/7, 64/7".into(), v3));

    let tm = transition_matrix(&ep3, bits)?;
    let (s21, s3) = (21f64.sqrt(), 3f64.sqrt());
    let want_q = [36.0 / 7.0, -3.0, 1.0, 12.0 * s21 / 7.0, -3.0 * s21 / 7.0, 0.0, 24.0 * s3 / 7.0, 0.0, 0.0];
    let got_q: Vec<f64> = tm.q.iter().flat_map(|r| r.iter().map(f)).collect();
    out.push(close("transition matrix Q3", &want_q, &got_q, 1e-12));

    let ep4 = cached_epn(4)?;
    out.push(exact("EP4 eliminant", "-16848, 1716, 7".into(), ints(&positive_leading(ep4.eliminant.integer_coeffs()))));
    out.push(close("EP4 couplings", &[9.4536, 25.4560, 32.0904], &ep4.values_f64(), 5e-5));
    let surd = ep4.surd_forms()[0].as_ref().map(|s| s.to_string()).unwrap_or_default();
    out.push(exact("EP4 coupling A in radicals", "-858/7+(30/7)*sqrt(949)".into(), surd));

    let ep5 = cached_epn(5)?;
    out.push(exact(
        "EP5 eliminant",
        "1288938668811264, -23755497730560, -35083975824, 42197064, 41405".into(),
        ints(&positive_leading(ep5.eliminant.integer_coeffs())),
    ));
    let roots: Vec<f64> = isolate_real_roots(&ep5.eliminant)
        .iter()
        .map(|iv| refine_root(&ep5.eliminant, iv, 128).map(|x| f(&x)))
        .collect::<Result<_, _>>()?;
    out.push(close("EP5 eliminant real roots", &[-1318.1571, -569.5091, 50.7046, 817.8319], &roots, 5e-5));
    out.push(close("EP5 couplings", &[18.6720, 50.7046, 80.1181, 77.5053], &ep5.values_f64(), 5e-5));
    let rejected = ep5.rejected.iter().filter_map(|r| r.couplings.first().map(f)).find(|a| (a + 511.0383).abs() < 1e-3);
    out.push(close("EP5 rejected solution A", &[-511.0383], &rejected.into_iter().collect::<Vec<_>>(), 5e-5));

    let ep6 = cached_epn(6)?;
    out.push(close("EP6 couplings", &[32.3950, 86.6542, 146.7324, 183.1682, 153.0502], &ep6.values_f64(), 5e-5));
    let sum = ep6.values(bits).iter().fold(real::zero(bits), |a, b| &a + b);
    out.push(close("EP6 coupling sum", &[602.0], &[f(&sum)], 1e-12));

    let row2: [&[i64]; 5] = [&[4, -3], &[10, 3, -10], &[18, 11, -2, -21], &[28, 21, 8, -11, -36], &[40, 33, 20, 1, -24, -55]];
    let got: Vec<Vec<i64>> = (3..=7)
        .map(|n| row2_from_charpoly(n).map(|r| r.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect()))
        .collect::<Result<_, _>>()?;
    out.push(exact("second rows of C, N=3..7", format!("{row2:?}"), format!("{got:?}")));

    let lead = n5_leading_table(bits)?;
    let want = [
        [-0.5042, -0.2521, 0.7564, 0.7564, 0.2521, 0.2521],
        [-0.9295, -0.4647, 1.3942, 1.3942, 0.4647, 0.4647],
        [-1.0838, -0.5419, 1.6257, 1.6257, 0.5419, 0.5419],
        [-0.8159, -0.4079, 1.2238, 1.2238, 0.4079, 0.4079],
    ];
    let got: Vec<f64> = lead.iter().flat_map(|r| r.iter().map(f)).collect();
    out.push(close("N=5 leading-order shift table", &want.concat(), &got, 5e-5));

    let c4 = corridor_n4(&RBig::ONE, &RBig::ONE, &N4Options { bits, ..N4Options::default() })?;
    out.push(close("N=4 corridor n2 at alpha=beta=1", &[2.8231], &[f(&c4.n2)], 5e-5));
    out.push(close("N=4 corridor n4 coefficient 3*sqrt(949)", &[3.0 * 949f64.sqrt()], &[f(&c4.n4_coefficient)], 1e-10));

    let l1 = lemma1_bounds(&RBig::ONE, bits)?;
    let mid = 12.0 / 7.0;
    let ok = f(&l1.n_lo) < mid && mid < f(&l1.n_hi) && l1.within_caps;
    out.push(Check {
        name: "EP3 admissible n at p=1 brackets 12p/7",
        expected: format!("n_lo < {mid:.4} < n_hi"),
        got: format!("({:.6}, {:.6})", f(&l1.n_lo), f(&l1.n_hi)),
        tol: None,
        pass: ok,
    });

    Ok(out)
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, Failure> {
    let list = checks(cfg.precision)?;
    let passed = list.iter().filter(|c| c.pass).count();
    let total = list.len();
    let mut text = String::new();
    for c in &list {
        let tol = c.tol.map(|t| format!(" (tol {t:e})")).unwrap_or_default();
        text.push_str(&format!("{} {}: got [{}] expected [{}]{tol}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.got, c.expected));
    }
    text.push_str(&format!("{passed}/{total} checks passed\n"));
    let result = json!({
        "checks": list.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "expected": c.expected,
            "got": c.got,
            "tolerance": c.tol,
        })).collect::<Vec<_>>(),
        "passed": passed,
        "total": total,
    });
    Ok(Outcome { result, csv: None, text: Some(text), ok: passed == total })
}
