//! One handler per subcommand.

use epkit::algebra::elimination::{EliminationMethod, EliminationOptions};
use epkit::algebra::real::{self, Real};
use epkit::charpoly::{evaluate_charpoly, symbolic_charpoly};
use epkit::corridor::{c_matrix, corridor_n3, corridor_n4, corridor_solve, CorridorOptions, N4Options, OmegaMode};
use epkit::epn::{locate_epn, EpnOptions};
use epkit::hamiltonian::{build, coupling_names, Entry};
use epkit::reality::{
    boundary_along_ray, classify_poly, lemma1_bounds, lemma2_interval, min_real_root_gap, Convention, ExtremumParams, RayOutcome,
    SpectrumClass,
};
use epkit::spectra::{tilded_spectrum, unperturbed_spectrum};
use epkit::RBig;
use serde_json::{json, Value};

use crate::report::{dec, decs, int, named, rat, sci};
use crate::{Command, ConventionArg, Failure, Method, OmegaArg, Outcome, RunConfig};

pub fn parse_q(s: &str, what: &str) -> Result<RBig, Failure> {
    real::parse_rational(s.trim()).map_err(|_| Failure::Usage(format!("cannot parse {what} `{s}` as a rational or decimal")))
}

fn parse_all(xs: &[String], what: &str) -> Result<Vec<RBig>, Failure> {
    xs.iter().map(|s| parse_q(s, what)).collect()
}

fn expect_len(xs: &[RBig], len: usize, what: &str) -> Result<(), Failure> {
    if xs.len() == len {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{what} needs {len} values, got {}", xs.len())))
    }
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n < 2 {
        Err(Failure::Usage("n must be at least 2".into()))
    } else {
        Ok(())
    }
}

fn convention(c: ConventionArg) -> Convention {
    match c {
        ConventionArg::Secular => Convention::Secular,
        ConventionArg::Monic => Convention::Monic,
    }
}

fn class_json(c: &SpectrumClass) -> Value {
    json!({
        "class": c.tag.as_str(),
        "degree": c.degree,
        "real_roots": c.real_root_count,
        "distinct_real_roots": c.distinct_root_count,
    })
}

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let bits = cfg.precision;
    match cmd {
        Command::Spectrum { n, tilded } => {
            check_n(*n)?;
            let v = if *tilded { tilded_spectrum(*n)? } else { unperturbed_spectrum(*n)?.traceless };
            Ok(Outcome::value(json!(v)))
        }
        Command::Build { n, couplings } => {
            check_n(*n)?;
            let c = parse_all(couplings, "coupling")?;
            let h = build(*n, &c)?;
            let entry = |i: usize, j: usize| match h.entry(i, j) {
                Entry::Zero => "0".to_string(),
                Entry::Diagonal(d) => d.to_string(),
                Entry::Upper(k) => format!("sqrt({})", real::rational_string(&h.couplings[k])),
                Entry::Lower(k) => format!("-sqrt({})", real::rational_string(&h.couplings[k])),
            };
            let matrix: Vec<Vec<String>> = (0..*n).map(|i| (0..*n).map(|j| entry(i, j)).collect()).collect();
            let dense = h.dense(bits);
            Ok(Outcome::value(json!({
                "n": n,
                "diagonal": h.diagonal,
                "couplings": named(&coupling_names(*n), h.couplings.iter().map(rat)),
                "matrix": matrix,
                "numeric": dense.iter().map(|r| decs(r, cfg)).collect::<Vec<_>>(),
            })))
        }
        Command::Charpoly { n, couplings } => {
            check_n(*n)?;
            match couplings {
                None => {
                    let s = symbolic_charpoly(*n)?;
                    let names = s.variable_names();
                    let refs: Vec<&str> = names.iter().map(|x| x.as_str()).collect();
                    let coeffs: Vec<Value> =
                        (0..=*n).rev().map(|k| json!({"power": k, "coefficient": s.coeffs[k].display_with(&refs)})).collect();
                    Ok(Outcome::value(json!({"n": n, "variables": names, "coefficients": coeffs, "display": s.display()})))
                }
                Some(cs) => {
                    let c = parse_all(cs, "coupling")?;
                    expect_len(&c, n - 1, "--couplings")?;
                    let p = evaluate_charpoly(*n, &c)?;
                    let class = classify_poly(&p);
                    Ok(Outcome::value(json!({
                        "n": n,
                        "couplings": named(&coupling_names(*n), c.iter().map(rat)),
                        "coefficients": p.coeffs().iter().map(rat).collect::<Vec<_>>(),
                        "display": p.display_with("E"),
                        "discriminant": rat(&p.discriminant()),
                        "class": class.tag.as_str(),
                    })))
                }
            }
        }
        Command::Epn { n, exact, keep, method } => epn(*n, *exact, keep.as_deref(), *method, cfg),
        Command::Physical { n, couplings } => {
            check_n(*n)?;
            let c = parse_all(couplings, "coupling")?;
            expect_len(&c, n - 1, "--couplings")?;
            let p = evaluate_charpoly(*n, &c)?;
            let class = classify_poly(&p);
            let gap = min_real_root_gap(&p, bits)?;
            let mut v = class_json(&class);
            v["couplings"] = named(&coupling_names(*n), c.iter().map(rat));
            v["positive_couplings"] = json!(c.iter().all(|x| real::rational_sign(x) > 0));
            v["min_gap"] = gap.map(|g| sci(&g, cfg)).unwrap_or(Value::Null);
            v["discriminant_sign"] = json!(real::rational_sign(&p.discriminant()));
            Ok(Outcome::value(v))
        }
        Command::Boundary { n, from, dir, tol } => {
            check_n(*n)?;
            let a = parse_all(from, "--from value")?;
            let d = parse_all(dir, "--dir value")?;
            expect_len(&a, n - 1, "--from")?;
            expect_len(&d, n - 1, "--dir")?;
            let tol = parse_q(tol, "--tol")?;
            if real::rational_sign(&tol) <= 0 {
                return Err(Failure::Usage("--tol must be positive".into()));
            }
            let names = coupling_names(*n);
            match boundary_along_ray(*n, &a, &d, &tol, bits)? {
                RayOutcome::Boundary { t_lo, t_hi, couplings, class, order, clusters } => {
                    let to_real = |x: &RBig| real::from_rational(x, bits);
                    let mut v = class_json(&class);
                    v["outcome"] = json!("boundary");
                    v["t_lo"] = dec(&to_real(&t_lo), cfg);
                    v["t_hi"] = dec(&to_real(&t_hi), cfg);
                    v["couplings"] = named(&names, couplings.iter().map(|x| dec(&to_real(x), cfg)));
                    v["order"] = json!(order);
                    v["clusters"] = json!(clusters
                        .iter()
                        .map(|c| json!({"size": c.size, "re": dec(&c.center.re, cfg), "im": dec(&c.center.im, cfg)}))
                        .collect::<Vec<_>>());
                    Ok(Outcome::value(v))
                }
                RayOutcome::ExitsBranch { t_exit } => Ok(Outcome::value(json!({
                    "outcome": "exits_branch",
                    "t_exit": rat(&t_exit),
                    "message": "a coupling reaches zero before any degeneracy",
                }))),
            }
        }
        Command::Lemma1 { p } => {
            let p = parse_q(p, "--p")?;
            let b = lemma1_bounds(&p, bits)?;
            Ok(Outcome::value(json!({
                "p": rat(&b.p),
                "n_lo": dec(&b.n_lo, cfg),
                "n_hi": dec(&b.n_hi, cfg),
                "within_caps": b.within_caps,
            })))
        }
        Command::Lemma2 { a, b, convention: conv } => {
            let a = parse_q(a, "--a")?;
            let b = parse_q(b, "--b")?;
            let l = lemma2_interval(&a, &b, convention(*conv), bits)?;
            let pair = |p: &Option<(Real, Real)>| p.as_ref().map(|(x, y)| json!([dec(x, cfg), dec(y, cfg)])).unwrap_or(Value::Null);
            Ok(Outcome::value(json!({
                "a": rat(&l.a),
                "b": rat(&l.b),
                "convention": format!("{:?}", l.convention),
                "interval": pair(&l.interval),
                "left_interval": pair(&l.left_interval),
                "width": l.width().map(|w| dec(&w, cfg)).unwrap_or(Value::Null),
                "m_of_n": [dec(&l.m_of_n.c0, cfg), dec(&l.m_of_n.c1, cfg)],
                "v_of_n": [dec(&l.v_of_n.c0, cfg), dec(&l.v_of_n.c1, cfg)],
                "r": decs(&l.r, cfg),
                "levels": [dec(&l.lower_level, cfg), dec(&l.upper_level, cfg)],
            })))
        }
        Command::Corridor { n, spacings, lambda, iters, tol, tau0, convention: conv, omega } => {
            corridor(*n, spacings, lambda.as_deref(), *iters, tol.as_deref(), tau0.as_deref(), *conv, *omega, cfg)
        }
        Command::Cmatrix { n } => {
            let c = c_matrix(*n, bits)?;
            let inv = c.inverse()?;
            Ok(Outcome::value(json!({
                "n": n,
                "rows": c.rows.iter().map(|r| decs(r, cfg)).collect::<Vec<_>>(),
                "row2": c.row2.iter().map(int).collect::<Vec<_>>(),
                "signs": c.signs,
                "inverse": inv.iter().map(|r| decs(r, cfg)).collect::<Vec<_>>(),
            })))
        }
        Command::Sweep { n, over, axes, base, out } => crate::sweep::run(*n, *over, axes, base.as_deref(), out.as_deref(), cfg),
        Command::Reproduce => crate::reproduce::run(cfg),
    }
}

fn epn(n: usize, exact: bool, keep: Option<&str>, method: Method, cfg: &RunConfig) -> Result<Outcome, Failure> {
    check_n(n)?;
    let names = coupling_names(n);
    let keep = match keep {
        None => None,
        Some(k) => Some(names.iter().position(|x| x == k).ok_or_else(|| Failure::Usage(format!("unknown coupling `{k}`")))?),
    };
    let method = match method {
        Method::Auto => EliminationMethod::Auto,
        Method::Groebner => EliminationMethod::Groebner,
        Method::Resultant => EliminationMethod::Resultant,
    };
    let opts = EpnOptions { precision_bits: cfg.precision, keep, elimination: EliminationOptions { method, term_cap: cfg.term_cap } };
    let ep = locate_epn(n, &opts)?;
    let values = ep.values(cfg.precision);
    let couplings: Vec<Value> = if exact {
        ep.couplings
            .iter()
            .map(|c| {
                if let Some(r) = c.as_rational() {
                    rat(&r)
                } else if let Some(s) = c.quadratic_surd() {
                    Value::String(s.to_string())
                } else {
                    let iv = c.interval();
                    Value::String(format!(
                        "root of {} in ({}, {})",
                        c.polynomial().display_with("x"),
                        real::rational_string(&iv.lo),
                        real::rational_string(&iv.hi)
                    ))
                }
            })
            .collect()
    } else {
        values.iter().map(|x| dec(x, cfg)).collect()
    };
    let mut v = json!({
        "n": n,
        "couplings": named(&names, couplings),
        "keep": names[ep.keep],
        "method": format!("{:?}", ep.method),
        "eliminant": {
            "variable": names[ep.keep],
            "coefficients": ep.eliminant.integer_coeffs().iter().map(int).collect::<Vec<_>>(),
        },
        "exact": ep.is_exact(),
        "residual_bound": sci(&ep.residual_bound, cfg),
        "numeric_residual": sci(&ep.numeric_residual, cfg),
        "sum": dec(&values.iter().fold(real::zero(cfg.precision), |a, b| &a + b), cfg),
        "rejected": ep.rejected.iter().map(|r| json!({
            "keep_value": dec(&r.keep_value, cfg),
            "couplings": decs(&r.couplings, cfg),
            "reason": r.reason,
        })).collect::<Vec<_>>(),
    });
    if !ep.other_positive.is_empty() {
        v["other_positive"] = json!(ep.other_positive.iter().map(|c| decs(c, cfg)).collect::<Vec<_>>());
    }
    if exact {
        v["minimal_polynomials"] = named(&names, ep.minimal_polynomials().iter().zip(&names).map(|(p, x)| p.display_with(x)));
    }
    Ok(Outcome::value(v))
}

#[allow(clippy::too_many_arguments)]
fn corridor(
    n: usize,
    spacings: &[String],
    lambda: Option<&str>,
    iters: usize,
    tol: Option<&str>,
    tau0: Option<&str>,
    conv: Option<ConventionArg>,
    omega: OmegaArg,
    cfg: &RunConfig,
) -> Result<Outcome, Failure> {
    let bits = cfg.precision;
    let s = parse_all(spacings, "spacing")?;
    let lambda = lambda.map(|l| parse_q(l, "--lambda")).transpose()?;
    let names = coupling_names(n);
    match n {
        3 => {
            expect_len(&s, 1, "--spacings (alpha)")?;
            let c = corridor_n3(&s[0])?;
            let mut v = json!({
                "alpha": rat(&c.alpha),
                "beta": rat(&c.beta),
                "gamma_range": [rat(&c.gamma_lo), rat(&c.gamma_hi)],
            });
            if let Some(l) = &lambda {
                v["lambda"] = rat(l);
                v["shifts_at_gamma_0"] = json!(c.shifts(l, &RBig::ZERO).iter().map(rat).collect::<Vec<_>>());
                v["couplings_at_gamma_0"] = named(&names, c.couplings(l, &RBig::ZERO).iter().map(rat));
            }
            Ok(Outcome::value(v))
        }
        4 => {
            expect_len(&s, 2, "--spacings (alpha,beta)")?;
            let opts = N4Options {
                convention: conv.map(convention).unwrap_or(Convention::Monic),
                lambda: lambda.clone(),
                omega: match omega {
                    OmegaArg::Leading => OmegaMode::Leading,
                    OmegaArg::Exact => OmegaMode::Exact,
                },
                bits,
            };
            let c = corridor_n4(&s[0], &s[1], &opts)?;
            let mut v = json!({
                "alpha": rat(&c.alpha),
                "beta": rat(&c.beta),
                "convention": format!("{:?}", c.options.convention),
                "mu": rat(&c.mu),
                "nu": rat(&c.nu),
                "total": rat(&c.total),
                "second": rat(&c.second),
                "m2": dec(&c.m2, cfg),
                "n2": dec(&c.n2, cfg),
                "v2": dec(&c.v2, cfg),
                "dm": dec(&c.dm, cfg),
                "dv": dec(&c.dv, cfg),
                "n4_coefficient": dec(&c.n4_coefficient, cfg),
                "omega0": dec(&c.omega0, cfg),
                "f_range": [dec(&c.f_range.0, cfg), dec(&c.f_range.1, cfg)],
                "n4_range": c.n4_range.as_ref().map(|(a, b)| json!([dec(a, cfg), dec(b, cfg)])).unwrap_or(Value::Null),
            });
            if let (Some(l), Some((a, b))) = (&lambda, &c.n4_range) {
                let mid = &(a + b) / &real::from_int(2, bits);
                let lr = real::from_rational(l, bits);
                v["n4_mid"] = dec(&mid, cfg);
                v["couplings_at_mid"] = named(&names, c.couplings(&lr, &mid)?.iter().map(|x| dec(x, cfg)));
            }
            Ok(Outcome::value(v))
        }
        5 | 6 => {
            if matches!(conv, Some(ConventionArg::Monic)) {
                return Err(Failure::Usage("N >= 5 corridors use the secular convention only".into()));
            }
            let lambda = lambda.ok_or_else(|| Failure::Usage("--lambda is required for N >= 5".into()))?;
            let params = ExtremumParams::new(n, s)?;
            let opts = CorridorOptions {
                lambda,
                max_iters: iters,
                tol: tol.map(|t| parse_q(t, "--tol").map(|q| real::from_rational(&q, bits))).transpose()?,
                tau0: tau0.map(|t| parse_q(t, "--tau0").map(|q| real::from_rational(&q, bits))).transpose()?,
                bits,
            };
            let sol = corridor_solve(&params, &opts)?;
            let opt = |x: &Option<Real>| x.as_ref().map(|y| dec(y, cfg)).unwrap_or(Value::Null);
            Ok(Outcome::value(json!({
                "n": n,
                "lambda": rat(&sol.lambda),
                "spacings": sol.params.spacings.iter().map(rat).collect::<Vec<_>>(),
                "targets": decs(&sol.targets, cfg),
                "orders": sol.orders.iter().enumerate().map(|(j, z)| json!({"power": j + 2, "shifts": named(&sol.shift_names, z.iter().map(|x| dec(x, cfg)))})).collect::<Vec<_>>(),
                "tau0_interval": [dec(&sol.tau0_interval.0, cfg), dec(&sol.tau0_interval.1, cfg)],
                "tau0": dec(&sol.tau0, cfg),
                "shifts": named(&sol.shift_names, sol.shifts.iter().map(|x| dec(x, cfg))),
                "couplings": named(&names, sol.couplings.iter().map(|x| dec(x, cfg))),
                "iterations": sol.iterations(),
                "trace": sol.trace.iter().map(|r| json!({
                    "iteration": r.iteration,
                    "omega": opt(&r.omega),
                    "sigma": opt(&r.sigma),
                    "pi": opt(&r.pi),
                    "change": sci(&r.change, cfg),
                })).collect::<Vec<_>>(),
            })))
        }
        _ => Err(Failure::Usage("corridors are available for N = 3 … 6".into())),
    }
}
