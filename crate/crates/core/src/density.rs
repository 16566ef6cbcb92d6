//! Term counts, rational representations and their densities, sparsity
//! checks, and the evaluation cost estimate.

use crate::code::CodeSpec;
use crate::expr::{LocatorExpr, Node, NodeId, Program};
use crate::gf2m::{Field, Gf};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

/// Default cap on the number of monomials of any intermediate polynomial.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("expansion exceeds the budget of {0} monomials")]
    Budget(usize),
    #[error("lookup-backed node {0} has no polynomial form")]
    Lookup(String),
    #[error("the expression has a quotient")]
    NotPolynomial,
}

/// A polynomial variable: the locator variable `z`, a syndrome variable
/// (by program index), or a fresh variable `b_i` of a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Z,
    X(u32),
    B(u32),
}

/// Sorted by symbol, exponents nonzero.
pub type Monomial = Vec<(Sym, u64)>;

/// A polynomial over GF(2^m) in [`Sym`] variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Gf>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Gf) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Poly::constant(Gf::ONE)
    }

    pub fn sym(s: Sym) -> Self {
        Poly::monomial(vec![(s, 1)])
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(m, Gf::ONE);
        p
    }

    /// Number of monomials with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Gf)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    fn insert(&mut self, m: Monomial, c: Gf) {
        let v = *self.terms.get(&m).unwrap_or(&Gf::ZERO) + c;
        if v.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            match out.terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        out.terms.remove(m);
                    }
                }
                None => {
                    out.terms.insert(m.clone(), c);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Poly, field: &Field, budget: usize) -> Result<Poly, DensityError> {
        if self.len().saturating_mul(other.len()) > budget.saturating_mul(64) {
            return Err(DensityError::Budget(budget));
        }
        let mut acc: HashMap<Monomial, Gf> = HashMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                *acc.entry(mono_mul(a, b)).or_insert(Gf::ZERO) += field.mul(ca, cb);
            }
            if acc.len() > budget.saturating_mul(2) {
                return Err(DensityError::Budget(budget));
            }
        }
        let terms: BTreeMap<Monomial, Gf> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.len() > budget {
            return Err(DensityError::Budget(budget));
        }
        Ok(Poly { terms })
    }

    /// `p^(2^k)`: in characteristic 2 each term is raised separately.
    pub fn frobenius(&self, k: u32, field: &Field) -> Poly {
        let e = 1u64 << k;
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| (m.iter().map(|&(s, x)| (s, x * e)).collect(), field.pow_u(c, e)))
            .collect();
        Poly { terms }
    }

    /// `p^e` as a product of Frobenius images, one per set bit of `e`.
    pub fn pow(&self, e: u64, field: &Field, budget: usize) -> Result<Poly, DensityError> {
        if e == 0 {
            return Ok(Poly::one());
        }
        if self.len() == 1 {
            let (m, &c) = self.terms.iter().next().expect("one term");
            let m: Monomial = m.iter().map(|&(s, x)| (s, x * e)).collect();
            let mut p = Poly::zero();
            p.insert(m, field.pow_u(c, e));
            return Ok(p);
        }
        let mut out = Poly::one();
        for k in 0..64 {
            if e >> k & 1 == 1 {
                out = out.mul(&self.frobenius(k, field), field, budget)?;
            }
        }
        Ok(out)
    }
}

/// `(F, {f_i}, {g_i})` with `F` over the `b_i` and `b_i = f_i / g_i`.
///
/// `F` may also mention `z` and syndrome variables directly; each such
/// variable stands for a `b_i` with `f_i` the variable and `g_i = 1`, which
/// contributes nothing beyond its occurrences in `F`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RationalRepresentation {
    pub outer: Poly,
    pub inner: Vec<(Poly, Poly)>,
}

impl RationalRepresentation {
    /// `P = sum b_i` with `b_i` the monomials of `P`.
    pub fn trivial(p: &Poly) -> Self {
        RationalRepresentation {
            outer: p.clone(),
            inner: Vec::new(),
        }
    }

    /// `|F| + sum (|f_i| - 1) + sum over nonconstant g_j of |g_j|`.
    pub fn density(&self) -> usize {
        let inner: usize = self
            .inner
            .iter()
            .map(|(f, g)| f.len().saturating_sub(1) + if g.is_constant() { 0 } else { g.len() })
            .sum();
        self.outer.len() + inner
    }

    /// Every monomial written down: `|F| + sum |f_i| + sum over nonconstant g_j of |g_j|`.
    pub fn monomial_total(&self) -> usize {
        let inner: usize = self
            .inner
            .iter()
            .map(|(f, g)| f.len() + if g.is_constant() { 0 } else { g.len() })
            .sum();
        self.outer.len() + inner
    }
}

struct Expander<'a> {
    program: &'a Program,
    field: &'a Field,
    budget: usize,
    rat: HashMap<NodeId, (Poly, Poly)>,
    outer: HashMap<NodeId, Poly>,
    fresh: HashMap<NodeId, u32>,
    inner: Vec<(Poly, Poly)>,
}

impl<'a> Expander<'a> {
    fn new(program: &'a Program, field: &'a Field, budget: usize) -> Self {
        Expander {
            program,
            field,
            budget,
            rat: HashMap::new(),
            outer: HashMap::new(),
            fresh: HashMap::new(),
            inner: Vec::new(),
        }
    }

    fn check(&self, p: Poly) -> Result<Poly, DensityError> {
        if p.len() > self.budget {
            Err(DensityError::Budget(self.budget))
        } else {
            Ok(p)
        }
    }

    /// The node as a ratio of expanded polynomials.
    fn rational(&mut self, id: NodeId) -> Result<(Poly, Poly), DensityError> {
        if let Some(r) = self.rat.get(&id) {
            return Ok(r.clone());
        }
        let (f, b) = (self.field, self.budget);
        let r = match self.program.node(id) {
            Node::Var(i) => (Poly::sym(Sym::X(*i as u32)), Poly::one()),
            Node::Const(c) => (Poly::constant(*c), Poly::one()),
            Node::Pow(base, e) => {
                let (p, q) = self.rational(*base)?;
                (p.pow(*e, f, b)?, q.pow(*e, f, b)?)
            }
            Node::Sum(xs) => {
                let mut acc = (Poly::zero(), Poly::one());
                for &x in xs {
                    let (p, q) = self.rational(x)?;
                    acc = if q == acc.1 {
                        (self.check(acc.0.add(&p))?, acc.1)
                    } else {
                        let num = acc.0.mul(&q, f, b)?.add(&p.mul(&acc.1, f, b)?);
                        (self.check(num)?, acc.1.mul(&q, f, b)?)
                    };
                }
                acc
            }
            Node::Prod(xs) => {
                let mut acc = (Poly::one(), Poly::one());
                for &x in xs {
                    let (p, q) = self.rational(x)?;
                    acc = (acc.0.mul(&p, f, b)?, acc.1.mul(&q, f, b)?);
                }
                acc
            }
            Node::Quot(n, d) => {
                let (pn, qn) = self.rational(*n)?;
                let (pd, qd) = self.rational(*d)?;
                (pn.mul(&qd, f, b)?, qn.mul(&pd, f, b)?)
            }
            Node::Table(t, _) => return Err(DensityError::Lookup(t.name.clone())),
        };
        self.rat.insert(id, r.clone());
        Ok(r)
    }

    /// The node as a polynomial in syndrome variables and one fresh `b_i`
    /// per maximal quotient.
    fn natural(&mut self, id: NodeId) -> Result<Poly, DensityError> {
        if let Some(p) = self.outer.get(&id) {
            return Ok(p.clone());
        }
        let (f, b) = (self.field, self.budget);
        let p = match self.program.node(id) {
            Node::Var(i) => Poly::sym(Sym::X(*i as u32)),
            Node::Const(c) => Poly::constant(*c),
            Node::Pow(base, e) => self.natural(*base)?.pow(*e, f, b)?,
            Node::Sum(xs) => {
                let mut acc = Poly::zero();
                for &x in xs {
                    let p = self.natural(x)?;
                    acc = self.check(acc.add(&p))?;
                }
                acc
            }
            Node::Prod(xs) => {
                let mut acc = Poly::one();
                for &x in xs {
                    acc = acc.mul(&self.natural(x)?, f, b)?;
                }
                acc
            }
            Node::Quot(_, _) => {
                let k = match self.fresh.get(&id) {
                    Some(&k) => k,
                    None => {
                        let fg = self.rational(id)?;
                        self.inner.push(fg);
                        let k = self.inner.len() as u32 - 1;
                        self.fresh.insert(id, k);
                        k
                    }
                };
                Poly::sym(Sym::B(k))
            }
            Node::Table(t, _) => return Err(DensityError::Lookup(t.name.clone())),
        };
        self.outer.insert(id, p.clone());
        Ok(p)
    }
}

/// Expands a quotient-free expression.
pub fn expand(field: &Field, program: &Program, root: NodeId, budget: usize) -> Result<Poly, DensityError> {
    let mut ex = Expander::new(program, field, budget);
    let p = ex.natural(root)?;
    if ex.inner.is_empty() {
        Ok(p)
    } else {
        Err(DensityError::NotPolynomial)
    }
}

/// Number of monomials of a quotient-free expression.
pub fn term_count(field: &Field, program: &Program, root: NodeId, budget: usize) -> Result<usize, DensityError> {
    expand(field, program, root, budget).map(|p| p.len())
}

/// One fresh variable per maximal quotient, the rest expanded into `F`.
pub fn natural_representation(
    field: &Field,
    program: &Program,
    root: NodeId,
    budget: usize,
) -> Result<RationalRepresentation, DensityError> {
    let mut ex = Expander::new(program, field, budget);
    let outer = ex.natural(root)?;
    Ok(RationalRepresentation { outer, inner: ex.inner })
}

/// The expression collapsed to a single ratio `f/g`, `F = b_1`.
pub fn collapsed_representation(
    field: &Field,
    program: &Program,
    root: NodeId,
    budget: usize,
) -> Result<RationalRepresentation, DensityError> {
    let mut ex = Expander::new(program, field, budget);
    let (f, g) = ex.rational(root)?;
    Ok(collapsed(vec![(Vec::new(), f, g)], None))
}

/// `F = lead + sum_k b_k * w_k` with `b_k = f_k/g_k`; zero coefficients are
/// dropped and polynomial ones written into `F` directly.
fn collapsed(parts: Vec<(Monomial, Poly, Poly)>, lead: Option<Monomial>) -> RationalRepresentation {
    let mut outer = Poly::zero();
    if let Some(m) = lead {
        outer.insert(m, Gf::ONE);
    }
    let mut inner = Vec::new();
    for (w, f, g) in parts {
        if f.is_zero() {
            continue;
        }
        let k = inner.len() as u32;
        outer.insert(mono_mul(&w, &vec![(Sym::B(k), 1)]), Gf::ONE);
        inner.push((f, g));
    }
    RationalRepresentation { outer, inner }
}

/// Locator-level representations of `z^t + a_{t-1} z^{t-1} + ... + a_0`.
pub fn locator_representation(
    field: &Field,
    locator: &LocatorExpr,
    collapse: bool,
    budget: usize,
) -> Result<RationalRepresentation, DensityError> {
    let t = locator.t as u64;
    let zpow = |e: u64| -> Monomial {
        if e == 0 {
            Vec::new()
        } else {
            vec![(Sym::Z, e)]
        }
    };
    let mut ex = Expander::new(&locator.program, field, budget);
    if collapse {
        let mut parts = Vec::new();
        for (k, &root) in locator.coeffs.iter().enumerate() {
            let (f, g) = ex.rational(root)?;
            parts.push((zpow(t - 1 - k as u64), f, g));
        }
        return Ok(collapsed(parts, Some(zpow(t))));
    }
    let mut outer = Poly::monomial(zpow(t));
    for (k, &root) in locator.coeffs.iter().enumerate() {
        let p = ex.natural(root)?;
        let w = Poly::monomial(zpow(t - 1 - k as u64));
        outer = ex.check(outer.add(&p.mul(&w, field, budget)?))?;
    }
    Ok(RationalRepresentation { outer, inner: ex.inner })
}

/// Density of the representation.
pub fn representation_density(rep: &RationalRepresentation) -> usize {
    rep.density()
}

/// The least density among the natural, collapsed and (for polynomials)
/// trivial representations of a single expression. An upper bound on the
/// functional density.
pub fn functional_density_upper(
    field: &Field,
    program: &Program,
    root: NodeId,
    budget: usize,
) -> Result<usize, DensityError> {
    let mut best: Option<usize> = None;
    let mut last_err = None;
    let reps = [
        natural_representation(field, program, root, budget),
        collapsed_representation(field, program, root, budget),
        expand(field, program, root, budget).map(|p| RationalRepresentation::trivial(&p)),
    ];
    for r in reps {
        match r {
            Ok(r) => best = Some(best.map_or(r.density(), |b| b.min(r.density()))),
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.expect("some representation failed"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientDensity {
    pub name: String,
    /// `|f|` when the coefficient is a polynomial.
    pub term_count: Option<usize>,
    /// Monomials written in the coefficient's natural representation.
    pub monomial_total: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub code: String,
    pub label: String,
    pub n: u32,
    pub t: u32,
    pub coefficients: Vec<CoefficientDensity>,
    /// Density of the natural representation of the whole locator.
    pub representation_density: Option<usize>,
    /// Least density over the representations tried; an upper bound.
    pub functional_density_upper: Option<usize>,
    /// Number of primary syndromes the locator reads.
    pub syndromes_used: usize,
    pub eval_cost_estimate: f64,
    /// Why no density could be computed, if none could.
    pub error: Option<String>,
}

/// Densities of a locator for the given code.
pub fn density_report(spec: &CodeSpec, locator: &LocatorExpr, budget: usize) -> DensityReport {
    let field = spec.field();
    let names = locator.coefficient_names();
    let coefficients = locator
        .coeffs
        .iter()
        .zip(names)
        .map(|(&root, name)| {
            let natural = natural_representation(field, &locator.program, root, budget);
            let term_count = match &natural {
                Ok(r) if r.inner.is_empty() => Some(r.outer.len()),
                _ => None,
            };
            CoefficientDensity {
                name,
                term_count,
                monomial_total: natural.as_ref().ok().map(|r| r.monomial_total()),
                error: natural.err().map(|e| e.to_string()),
            }
        })
        .collect();
    let natural = locator_representation(field, locator, false, budget);
    let collapsed = locator_representation(field, locator, true, budget);
    let representation_density = natural.as_ref().ok().map(|r| r.density());
    let functional_density_upper = [&natural, &collapsed]
        .iter()
        .filter_map(|r| r.as_ref().ok().map(|r| r.density()))
        .min();
    let error = match (&natural, &collapsed) {
        (Err(e), Err(_)) => Some(e.to_string()),
        _ => None,
    };
    let syndromes_used = syndromes_used(spec, locator);
    DensityReport {
        code: spec.descriptor(),
        label: locator.label.clone(),
        n: spec.n(),
        t: locator.t,
        coefficients,
        representation_density,
        functional_density_upper,
        syndromes_used,
        eval_cost_estimate: eval_cost_estimate(spec, locator.t, syndromes_used.max(1)),
        error,
    }
}

/// Distinct primary syndromes the locator's variables derive from.
fn syndromes_used(spec: &CodeSpec, locator: &LocatorExpr) -> usize {
    let mut p: Vec<usize> = locator
        .program
        .vars()
        .iter()
        .filter_map(|v| spec.source_of(v.exponent).ok().map(|s| s.primary))
        .collect();
    p.sort_unstable();
    p.dedup();
    p.len()
}

/// `t ((2^m - 1)(r - 1) + (2^m - 1)/n)^(r/2) + n^2`, with `r` syndromes in use.
pub fn eval_cost_estimate(spec: &CodeSpec, t: u32, r: usize) -> f64 {
    let q = spec.field().order() as f64;
    let n = spec.n() as f64;
    let r = r as f64;
    t as f64 * (q * (r - 1.0) + q / n).powf(r / 2.0) + n * n
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparsityVerdict {
    pub code: String,
    pub epsilon: u32,
    /// `n^epsilon`.
    pub bound: u64,
    /// `None` when no density could be computed.
    pub sparse: Option<bool>,
    /// `5n`, compared against each coefficient's monomial total for `t = 3`.
    pub monomial_limit: Option<usize>,
    /// Coefficients whose monomial total exceeds `5n`.
    pub over_limit: Vec<(String, usize)>,
}

/// Compares a report against `n^epsilon`, and for `t = 3` codes with
/// `n < 63` each coefficient's monomial total against `5n`.
pub fn sparsity_check(spec: &CodeSpec, report: &DensityReport, epsilon: u32) -> SparsityVerdict {
    let n = spec.n();
    let bound = (n as u64).pow(epsilon);
    let monomial_limit = (report.t == 3 && n < 63).then_some(5 * n as usize);
    let over_limit = match monomial_limit {
        Some(limit) => report
            .coefficients
            .iter()
            .filter_map(|c| c.monomial_total.filter(|&m| m > limit).map(|m| (c.name.clone(), m)))
            .collect(),
        None => Vec::new(),
    };
    SparsityVerdict {
        code: spec.descriptor(),
        epsilon,
        bound,
        sparse: report.functional_density_upper.map(|d| d as u64 <= bound),
        monomial_limit,
        over_limit,
    }
}

pub const CSV_HEADER: &str =
    "code,label,n,t,representation_density,functional_density_upper,n_cubed,sparse,monomial_totals,five_n,over_five_n,eval_cost_estimate";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One CSV line matching [`CSV_HEADER`].
pub fn csv_row(report: &DensityReport, verdict: &SparsityVerdict) -> String {
    let totals: Vec<String> = report.coefficients.iter().map(|c| opt(c.monomial_total)).collect();
    let over: Vec<String> = verdict.over_limit.iter().map(|(c, m)| format!("{c}={m}")).collect();
    let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{:.1}",
        quote(&report.code),
        quote(&report.label),
        report.n,
        report.t,
        opt(report.representation_density),
        opt(report.functional_density_upper),
        verdict.bound,
        opt(verdict.sparse),
        totals.join(";"),
        opt(verdict.monomial_limit),
        over.join(";"),
        report.eval_cost_estimate
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Field {
        Field::new(5).unwrap()
    }

    fn parsed(text: &str, vars: &[(&str, u32)]) -> (Program, NodeId) {
        let mut p = Program::new();
        let id = p.parse(text, vars).unwrap();
        (p, id)
    }

    #[test]
    fn term_counts() {
        let f = field();
        let v = [("x1", 1), ("x2", 2)];
        let (p, id) = parsed("x1 + x2", &v);
        assert_eq!(term_count(&f, &p, id, DEFAULT_BUDGET), Ok(2));
        let (p, id) = parsed("x1^2", &v);
        assert_eq!(term_count(&f, &p, id, DEFAULT_BUDGET), Ok(1));
        let (p, id) = parsed("(x1 + x2)^2", &v);
        assert_eq!(term_count(&f, &p, id, DEFAULT_BUDGET), Ok(2));
        let (p, id) = parsed("(x1 + x2)^3", &v);
        assert_eq!(term_count(&f, &p, id, DEFAULT_BUDGET), Ok(4));
        let (p, id) = parsed("x1 x2 + x2 x1", &v);
        assert_eq!(term_count(&f, &p, id, DEFAULT_BUDGET), Ok(0));
        let (p, id) = parsed("x1/x2", &v);
        assert_eq!(term_count(&f, &p, id, DEFAULT_BUDGET), Err(DensityError::NotPolynomial));
    }

    #[test]
    fn budget_is_reported() {
        let f = field();
        let (p, id) = parsed("(x1 + x2 + x3 + x4)^255", &[("x1", 1), ("x2", 2), ("x3", 3), ("x4", 4)]);
        assert_eq!(term_count(&f, &p, id, 1000), Err(DensityError::Budget(1000)));
    }

    #[test]
    fn densities() {
        let f = field();
        let (p, id) = parsed("x1", &[("x1", 1)]);
        let r = natural_representation(&f, &p, id, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.density(), 1);
        let v = [("x1", 1), ("x2", 2), ("x3", 3)];
        let (p, id) = parsed("(x1 + x2)/x3 + x1", &v);
        let r = natural_representation(&f, &p, id, DEFAULT_BUDGET).unwrap();
        // F = b1 + x1, f1 = x1 + x2, g1 = x3
        assert_eq!(r.density(), 2 + 1 + 1);
        let c = collapsed_representation(&f, &p, id, DEFAULT_BUDGET).unwrap();
        // f = x1 + x2 + x1 x3, g = x3
        assert_eq!(c.density(), 1 + 2 + 1);
        let (p, id) = parsed("x1^3 + x2 x3 + x1", &v);
        let trivial = RationalRepresentation::trivial(&expand(&f, &p, id, DEFAULT_BUDGET).unwrap());
        assert_eq!(trivial.density(), 3);
        assert!(functional_density_upper(&f, &p, id, DEFAULT_BUDGET).unwrap() <= 3);
    }

    #[test]
    fn nested_quotients_collapse() {
        let f = field();
        let v = [("x1", 1), ("x2", 2), ("x3", 3)];
        let (p, id) = parsed("(x1/x2 + 1)/x3", &v);
        let r = natural_representation(&f, &p, id, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.inner.len(), 1);
        let (num, den) = &r.inner[0];
        assert_eq!((num.len(), den.len()), (2, 1));
    }

    #[test]
    fn cost_estimates() {
        let golay = CodeSpec::new(23, &[1]).unwrap();
        let e = eval_cost_estimate(&golay, 3, 1);
        assert!((e - 23.0 * 23.0 - 3.0 * (2047.0f64 / 23.0).sqrt()).abs() < 1e-9);
        assert!((e - 529.0 - 28.3).abs() < 0.05);
        let bch = CodeSpec::new(15, &[1, 3, 5]).unwrap();
        let e = eval_cost_estimate(&bch, 3, 3) - 225.0;
        assert!((e - 3.0 * 31f64.powf(1.5)).abs() < 1e-9);
        assert!((e - 518.0).abs() < 1.0);
    }

    #[test]
    fn sl_worked_example() {
        let spec = CodeSpec::new(45, &[1, 21]).unwrap();
        let loc = crate::catalog::t2_sl(&spec, 2, 23).unwrap();
        let rep = locator_representation(spec.field(), &loc, false, DEFAULT_BUDGET).unwrap();
        // F = z^2 + x1 z + b^23, f = x2 x4 + x5, g = x3
        assert_eq!(rep.outer.len(), 3);
        assert_eq!(rep.inner.len(), 1);
        assert_eq!(rep.density(), 5);
        let report = density_report(&spec, &loc, DEFAULT_BUDGET);
        assert_eq!(report.functional_density_upper, Some(5));
        assert_eq!(sparsity_check(&spec, &report, 3).sparse, Some(true));
    }

    #[test]
    fn golay_is_sparse() {
        let spec = CodeSpec::new(23, &[1]).unwrap();
        let loc = crate::catalog::t3_139(&spec).unwrap();
        let report = density_report(&spec, &loc, DEFAULT_BUDGET);
        let d = report.functional_density_upper.unwrap();
        assert!((1..=23 * 23 * 23).contains(&d), "{d}");
        assert_eq!(report.error, None);
        assert_eq!(report.syndromes_used, 1);
        assert!((report.eval_cost_estimate - 529.0 - 28.3).abs() < 0.05);
    }
}
