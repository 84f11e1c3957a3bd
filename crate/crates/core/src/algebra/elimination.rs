//! Elimination for zero-dimensional systems and back-substitution into `Q(θ)`.

use dashu::rational::RBig;

use super::algebraic::{AlgebraicNumber, NumberField};
use super::groebner::{shape, GroebnerBasis, DEFAULT_TERM_CAP};
use super::mpoly::MPoly;
use super::resultant::eliminate_by_resultants;
use super::upoly::RationalPoly;
use crate::error::{Error, Result};

/// Polynomial equations `p = 0` over named variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    pub vars: Vec<String>,
    pub polys: Vec<MPoly<RBig>>,
}

impl PolySystem {
    pub fn new(vars: Vec<String>, polys: Vec<MPoly<RBig>>) -> Result<Self> {
        if polys.iter().any(|p| p.is_zero()) {
            return Err(Error::InvalidArgument("system contains a zero polynomial".into()));
        }
        if polys.iter().any(|p| p.nvars() != vars.len()) {
            return Err(Error::InvalidArgument("variable count mismatch".into()));
        }
        Ok(Self { vars, polys })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Variable precedence used for lex elimination: natural order with `keep` moved last.
    pub fn lex_order(&self, keep: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..self.nvars()).filter(|&v| v != keep).collect();
        o.push(keep);
        o
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationMethod {
    /// Gröbner first, iterated resultants if the term cap is hit.
    Auto,
    Groebner,
    Resultant,
}

#[derive(Clone, Copy, Debug)]
pub struct EliminationOptions {
    pub method: EliminationMethod,
    pub term_cap: usize,
}

impl Default for EliminationOptions {
    fn default() -> Self {
        Self { method: EliminationMethod::Auto, term_cap: DEFAULT_TERM_CAP }
    }
}

/// `lhs(θ) * x_var = rhs(θ)` where `θ` is the kept variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub var: usize,
    pub lhs: RationalPoly,
    pub rhs: RationalPoly,
}

#[derive(Clone, Debug)]
pub struct Elimination {
    pub keep: usize,
    /// Square-free, primitive integer eliminant in the kept variable.
    pub eliminant: RationalPoly,
    /// One entry per variable other than `keep`; `None` if the basis has no linear relation for it.
    pub relations: Vec<Option<Relation>>,
    /// Variables removed up front through equations linear in them, as `(var, expression)`.
    /// Later entries never mention earlier variables, so evaluation runs in reverse.
    pub substitutions: Vec<(usize, MPoly<RBig>)>,
    pub method: EliminationMethod,
    /// Basis of the reduced system (over the variables left after substitution).
    pub basis: Option<GroebnerBasis>,
}

impl Elimination {
    /// Whether every eliminated variable can be recovered linearly.
    pub fn in_shape_position(&self) -> bool {
        let n = self.relations.len() + 1;
        let mut rel = self.relations.iter();
        (0..n).filter(|&v| v != self.keep).all(|v| rel.next().unwrap().is_some() || self.substitutions.iter().any(|(w, _)| *w == v))
    }
}

/// Repeatedly solves equations of the form `c·x + (terms free of x) = 0` with
/// rational `c` and substitutes, which shrinks the lex problem considerably.
fn linear_reduction(polys: &[MPoly<RBig>], keep: usize) -> Result<(Vec<MPoly<RBig>>, Vec<(usize, MPoly<RBig>)>)> {
    let mut polys: Vec<MPoly<RBig>> = polys.to_vec();
    let mut subs = Vec::new();
    loop {
        polys.retain(|p| !p.is_zero());
        if polys.iter().any(|p| p.total_degree() == 0) {
            return Err(Error::InvalidArgument("system has no complex solutions".into()));
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, p) in polys.iter().enumerate() {
            for v in p.support_vars() {
                if v == keep || p.degree_in(v) != 1 {
                    continue;
                }
                let parts = p.as_univariate(v);
                if parts[1].total_degree() != 0 {
                    continue;
                }
                let cost = parts[0].len();
                if best.is_none_or(|(_, _, c)| cost < c) {
                    best = Some((i, v, cost));
                }
            }
        }
        let Some((i, v, _)) = best else { break };
        let p = polys.swap_remove(i);
        let parts = p.as_univariate(v);
        let c = parts[1].constant_term();
        let expr = parts[0].scale(&(-RBig::ONE / c));
        for q in polys.iter_mut() {
            if q.degree_in(v) > 0 {
                *q = q.substitute(v, &expr);
            }
        }
        subs.push((v, expr));
    }
    Ok((polys, subs))
}

fn restrict(p: &MPoly<RBig>, vars: &[usize]) -> MPoly<RBig> {
    MPoly::from_terms(vars.len(), p.terms().map(|(e, c)| (vars.iter().map(|&v| e[v]).collect(), c.clone())))
}

/// Univariate eliminant in `keep` together with back-substitution relations.
pub fn eliminate_full(sys: &PolySystem, keep: usize, opts: EliminationOptions) -> Result<Elimination> {
    let n = sys.nvars();
    if keep >= n {
        return Err(Error::InvalidArgument(format!("keep index {keep} out of range")));
    }
    let (reduced, substitutions) = linear_reduction(&sys.polys, keep)?;
    let substituted: Vec<usize> = substitutions.iter().map(|(v, _)| *v).collect();
    let remaining: Vec<usize> = (0..n).filter(|v| !substituted.contains(v)).collect();
    if reduced.iter().any(|p| p.support_vars().iter().any(|v| !remaining.contains(v))) {
        unreachable!("substituted variable survived reduction");
    }
    let sub_keep = remaining.iter().position(|&v| v == keep).unwrap();
    let sub_polys: Vec<MPoly<RBig>> = reduced.iter().map(|p| restrict(p, &remaining)).collect();
    if sub_polys.is_empty() {
        return Err(Error::NotZeroDimensional);
    }
    let (eliminant, sub_rel, method, basis) = eliminate_core(&sub_polys, remaining.len(), sub_keep, opts)?;
    let mut sub_rel = sub_rel.into_iter();
    let relations = (0..n)
        .filter(|&v| v != keep)
        .map(|v| if substituted.contains(&v) { None } else { sub_rel.next().unwrap().map(|r| Relation { var: v, ..r }) })
        .collect();
    Ok(Elimination { keep, eliminant, relations, substitutions, method, basis })
}

type CoreResult = (RationalPoly, Vec<Option<Relation>>, EliminationMethod, Option<GroebnerBasis>);

fn eliminate_core(polys: &[MPoly<RBig>], nvars: usize, keep: usize, opts: EliminationOptions) -> Result<CoreResult> {
    if nvars == 1 {
        let mut g = RationalPoly::zero();
        for p in polys {
            g = g.gcd(&p.to_upoly(0).unwrap());
        }
        if g.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("system has no complex solutions".into()));
        }
        return Ok((g.square_free(), Vec::new(), EliminationMethod::Groebner, None));
    }
    let mut order: Vec<usize> = (0..nvars).filter(|&v| v != keep).collect();
    order.push(keep);
    let resultant_only = |msg: Option<String>| -> Result<CoreResult> {
        let e = eliminate_by_resultants(polys, keep, opts.term_cap).map_err(|err| msg.map(Error::Resource).unwrap_or(err))?;
        Ok((e, vec![None; nvars - 1], EliminationMethod::Resultant, None))
    };
    if opts.method == EliminationMethod::Resultant {
        return resultant_only(None);
    }
    let sh = match shape(polys, &order, keep, opts.term_cap) {
        Ok(sh) => sh,
        Err(Error::Resource(msg)) if opts.method == EliminationMethod::Auto => return resultant_only(Some(msg)),
        Err(e) => return Err(e),
    };
    let relations = (0..nvars)
        .filter(|&v| v != keep)
        .map(|v| sh.relations[v].clone().map(|r| Relation { var: v, lhs: RationalPoly::one(), rhs: r }))
        .collect();
    Ok((sh.minimal.square_free(), relations, EliminationMethod::Groebner, Some(sh.basis)))
}

/// Square-free primitive univariate polynomial whose roots contain the `keep`
/// coordinates of all solutions.
pub fn eliminate(sys: &PolySystem, keep: usize) -> Result<RationalPoly> {
    Ok(eliminate_full(sys, keep, EliminationOptions::default())?.eliminant)
}

/// All coordinates of the solution whose kept coordinate is the root `θ` of the eliminant,
/// as elements of `Q(θ)` in variable order.
pub fn back_substitute_field(elim: &Elimination, theta: &AlgebraicNumber) -> Result<(NumberField, Vec<RationalPoly>)> {
    let field = NumberField::new(&elim.eliminant, theta.clone())?;
    let n = elim.relations.len() + 1;
    let mut coords = vec![RationalPoly::zero(); n];
    let mut rel = elim.relations.iter();
    for v in 0..n {
        if v == elim.keep {
            coords[v] = field.generator();
            continue;
        }
        let r = rel.next().unwrap();
        if elim.substitutions.iter().any(|(w, _)| *w == v) {
            continue;
        }
        let r = r.as_ref().ok_or_else(|| Error::AmbiguousVariable(format!("x{v}")))?;
        let lhs = field.reduce(&r.lhs);
        if field.is_zero_at_theta(&lhs) {
            return Err(Error::AmbiguousVariable(format!("x{v}")));
        }
        let inv = field.inverse(&lhs).map_err(|_| Error::AmbiguousVariable(format!("x{v}")))?;
        coords[v] = field.mul(&inv, &r.rhs);
    }
    for (v, expr) in elim.substitutions.iter().rev() {
        coords[*v] = field.eval_mpoly(expr, &coords);
    }
    Ok((field, coords))
}

/// Back-substitution returning every coordinate as an algebraic number.
pub fn back_substitute(elim: &Elimination, theta: &AlgebraicNumber) -> Result<Vec<AlgebraicNumber>> {
    let (field, coords) = back_substitute_field(elim, theta)?;
    Ok(coords.iter().map(|c| field.to_algebraic(c)).collect())
}
