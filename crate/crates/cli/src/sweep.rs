//! Grid classification with deterministic row order.

use std::path::Path;

use epkit::algebra::real::{self, Real};
use epkit::charpoly::evaluate_charpoly;
use epkit::epn::cached_epn;
use epkit::hamiltonian::{coupling_names, shift_names};
use epkit::reality::{classify_poly, min_real_root_gap};
use epkit::RBig;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::{Failure, Outcome, Over, RunConfig};

/// Bits used for the per-point gap refinement; the gap is printed to 10 digits.
const GAP_BITS: usize = 64;

#[derive(Debug, Clone)]
pub struct Axis {
    pub index: usize,
    pub name: String,
    pub lo: RBig,
    pub hi: RBig,
    pub count: usize,
}

impl Axis {
    pub fn parse(text: &str, names: &[String]) -> Result<Self, Failure> {
        let parts: Vec<&str> = text.split(':').collect();
        let [name, lo, hi, count] = parts[..] else {
            return Err(Failure::Usage(format!("axis `{text}` must look like NAME:LO:HI:COUNT")));
        };
        let index = names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Failure::Usage(format!("unknown axis `{name}`; expected one of {}", names.join(", "))))?;
        let count = count.parse::<usize>().map_err(|_| Failure::Usage(format!("axis count `{count}` is not a non-negative integer")))?;
        Ok(Self {
            index,
            name: name.to_string(),
            lo: crate::commands::parse_q(lo, "axis lower end")?,
            hi: crate::commands::parse_q(hi, "axis upper end")?,
            count,
        })
    }

    /// Evenly spaced exact points, endpoints included.
    pub fn points(&self) -> Vec<RBig> {
        match self.count {
            0 => vec![],
            1 => vec![self.lo.clone()],
            c => {
                let step = (&self.hi - &self.lo) / RBig::from(c - 1);
                (0..c).map(|i| &self.lo + &step * RBig::from(i)).collect()
            }
        }
    }
}

pub fn run(
    n: usize,
    over: Over,
    axes: &[String],
    base: Option<&[String]>,
    out: Option<&Path>,
    cfg: &RunConfig,
) -> Result<Outcome, Failure> {
    if n < 2 {
        return Err(Failure::Usage("sweep needs n >= 2".into()));
    }
    let names = match over {
        Over::Couplings => coupling_names(n),
        Over::Shifts => shift_names(n),
    };
    if axes.is_empty() || axes.len() > 2 {
        return Err(Failure::Usage("give one or two --axis options".into()));
    }
    let axes: Vec<Axis> = axes.iter().map(|s| Axis::parse(s, &names)).collect::<Result<_, _>>()?;
    if axes.len() == 2 && axes[0].index == axes[1].index {
        return Err(Failure::Usage("the two axes must differ".into()));
    }
    let free: Vec<usize> = (0..names.len()).filter(|i| axes.iter().all(|a| a.index != *i)).collect();
    let fixed: Vec<RBig> = match base {
        Some(b) => {
            if b.len() != free.len() {
                return Err(Failure::Usage(format!(
                    "--base needs {} values for {}",
                    free.len(),
                    free.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(", ")
                )));
            }
            b.iter().map(|s| crate::commands::parse_q(s, "base value")).collect::<Result<_, _>>()?
        }
        None if free.is_empty() || matches!(over, Over::Shifts) => vec![RBig::ZERO; free.len()],
        None => {
            return Err(Failure::Usage(format!(
                "--base must fix {}",
                free.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(", ")
            )))
        }
    };
    let anchor: Option<Vec<RBig>> = match over {
        Over::Couplings => None,
        Over::Shifts => {
            let ep = cached_epn(n)?;
            // exact when the EPN is rational, otherwise a precision-bit approximation
            Some(ep.rational_values().unwrap_or_else(|| ep.values(cfg.precision).iter().map(real::to_rational).collect()))
        }
    };

    let grids: Vec<Vec<RBig>> = axes.iter().map(Axis::points).collect();
    let mut coords: Vec<Vec<RBig>> = Vec::new();
    match grids.len() {
        1 => coords.extend(grids[0].iter().map(|x| vec![x.clone()])),
        _ => {
            for x in &grids[0] {
                for y in &grids[1] {
                    coords.push(vec![x.clone(), y.clone()]);
                }
            }
        }
    }

    let rows: Vec<Result<Vec<String>, Failure>> = coords
        .par_iter()
        .map(|c| {
            let mut v = vec![RBig::ZERO; names.len()];
            for (i, &k) in free.iter().enumerate() {
                v[k] = fixed[i].clone();
            }
            for (a, x) in axes.iter().zip(c) {
                v[a.index] = x.clone();
            }
            let couplings: Vec<RBig> = match &anchor {
                None => v,
                Some(ep) => ep.iter().zip(&v).map(|(a, s)| a - s).collect(),
            };
            let p = evaluate_charpoly(n, &couplings)?;
            let class = classify_poly(&p);
            let gap = min_real_root_gap(&p, GAP_BITS)?;
            let disc = real::rational_sign(&p.discriminant());
            let mut row: Vec<String> = c.iter().map(|x| crate::report::short_decimal(x, 15)).collect();
            row.push(class.tag.as_str().to_string());
            row.push(gap.as_ref().map(|g: &Real| real::to_scientific(g, 10)).unwrap_or_default());
            row.push(disc.to_string());
            Ok(row)
        })
        .collect();

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = axes.iter().map(|a| a.name.clone()).collect();
    header.extend(["class", "min_gap", "disc_sign"].map(String::from));
    w.write_record(&header).map_err(|e| Failure::Io(e.to_string()))?;
    let mut counts = Map::new();
    for r in rows {
        let r = r?;
        let tag = r[axes.len()].clone();
        let c = counts.entry(tag).or_insert(json!(0));
        *c = json!(c.as_u64().unwrap_or(0) + 1);
        w.write_record(&r).map_err(|e| Failure::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))?;

    match out {
        None => Ok(Outcome { result: Value::Null, csv: Some(text), text: None, ok: true }),
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(Outcome::value(json!({
                "n": n,
                "over": match over { Over::Couplings => "couplings", Over::Shifts => "shifts" },
                "axes": axes.iter().map(|a| json!({"name": a.name, "lo": crate::report::rat(&a.lo), "hi": crate::report::rat(&a.hi), "count": a.count})).collect::<Vec<_>>(),
                "rows": coords.len(),
                "counts": counts,
                "out": path.display().to_string(),
            })))
        }
    }
}
