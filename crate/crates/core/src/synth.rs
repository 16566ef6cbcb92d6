//! Locator synthesis by interpolation over the correctable syndromes, and
//! executable checks of the structural facts the catalog relies on.

use crate::code::{binomial, CodeError, CodeSpec};
use crate::expr::{ClassFunction, EvalFault, LocatorExpr, NodeId, Program, Scratch};
use crate::gf2m::{Field, Gf};
use crate::par::Execution;
use itertools::Itertools;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

/// Largest number of error patterns a syndrome table may hold.
pub const TABLE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("{0} error patterns exceed the table budget of 1000000")]
    Budget(u64),
    #[error("patterns {first:?} and {second:?} share a syndrome")]
    Collision { first: Vec<u32>, second: Vec<u32> },
    #[error("univariate interpolation needs a code defined by the coset of 1 alone")]
    NotUnivariate,
    #[error("lambda = {lambda} does not divide n = {n}")]
    LambdaNotDivisor { lambda: u64, n: u32 },
    #[error("degree {delta} is not a multiple of the first defining exponent {i1}")]
    DeltaNotMultiple { delta: u64, i1: u32 },
    #[error("coefficient index {k} outside 1..={t}")]
    BadIndex { k: usize, t: u32 },
    #[error("values disagree inside one class; the lookup structure does not apply")]
    Inconsistent,
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub syndromes: Vec<Gf>,
    pub positions: Vec<u32>,
}

/// All error patterns of weight `<= t` with their primary syndrome vectors,
/// ordered by weight, then lexicographically.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    t: u32,
    entries: Vec<TableEntry>,
    index: HashMap<Vec<Gf>, usize>,
    weight_start: Vec<usize>,
}

impl SyndromeTable {
    /// Builds the table for the code's own capability.
    pub fn build(spec: &CodeSpec, exec: Execution) -> Result<Self, SynthError> {
        Self::build_for(spec, spec.t(), exec)
    }

    /// Builds the table for patterns of weight `<= t`; fails on a collision.
    pub fn build_for(spec: &CodeSpec, t: u32, exec: Execution) -> Result<Self, SynthError> {
        let weights: Vec<u32> = (0..=t).collect();
        Self::build_weights(spec, &weights, exec)
    }

    /// Builds the table for patterns whose weight is listed in `weights`,
    /// e.g. `[0, 2]` for codes that only correct exactly two errors.
    pub fn build_weights(spec: &CodeSpec, weights: &[u32], exec: Execution) -> Result<Self, SynthError> {
        let n = spec.n();
        let t = weights.iter().copied().max().unwrap_or(0);
        let count: u64 = (0..=t)
            .filter(|w| weights.contains(w))
            .map(|w| binomial(n as u64, w as u64))
            .sum();
        if count > TABLE_BUDGET {
            return Err(SynthError::Budget(count));
        }
        let mut patterns: Vec<Vec<u32>> = Vec::with_capacity(count as usize);
        let mut weight_start = Vec::with_capacity(t as usize + 2);
        for w in 0..=t {
            weight_start.push(patterns.len());
            if weights.contains(&w) {
                patterns.extend((0..n).combinations(w as usize));
            }
        }
        weight_start.push(patterns.len());
        let syndromes = exec.map(&patterns, |p| spec.pattern_syndromes(p));
        let mut index = HashMap::with_capacity(patterns.len());
        let mut entries = Vec::with_capacity(patterns.len());
        for (i, (positions, syndromes)) in patterns.into_iter().zip(syndromes).enumerate() {
            if let Some(&j) = index.get(&syndromes) {
                let first: &TableEntry = &entries[j];
                return Err(SynthError::Collision {
                    first: first.positions.clone(),
                    second: positions,
                });
            }
            index.insert(syndromes.clone(), i);
            entries.push(TableEntry { syndromes, positions });
        }
        Ok(SyndromeTable {
            t,
            entries,
            index,
            weight_start,
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    /// Entries of weight exactly `mu` (the set of syndromes of `mu` errors).
    pub fn slice(&self, mu: u32) -> &[TableEntry] {
        if mu > self.t {
            return &[];
        }
        &self.entries[self.weight_start[mu as usize]..self.weight_start[mu as usize + 1]]
    }

    pub fn lookup(&self, syndromes: &[Gf]) -> Option<&TableEntry> {
        self.index.get(syndromes).map(|&i| &self.entries[i])
    }
}

/// `(sigma_1, ..., sigma_t)` of the error locations `alpha^l`, zero-padded to `t`.
pub fn elementary_symmetric(spec: &CodeSpec, positions: &[u32], t: u32) -> Vec<Gf> {
    let f = spec.field();
    // coefficients of prod (z + z_i), highest degree first
    let mut poly = vec![Gf::ONE];
    for &l in positions {
        let z = spec.alpha_pow(l as u64);
        let mut next = poly.clone();
        next.push(Gf::ZERO);
        for (k, &c) in poly.iter().enumerate() {
            next[k + 1] += f.mul(c, z);
        }
        poly = next;
    }
    (1..=t as usize).map(|k| poly.get(k).copied().unwrap_or(Gf::ZERO)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyFailure {
    pub positions: Vec<u32>,
    pub expected: Vec<Gf>,
    /// `None` when evaluation faulted.
    pub got: Option<Vec<Gf>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub label: String,
    pub total: usize,
    pub passed: usize,
    pub faults: usize,
    /// The first failures in table order (at most [`VerifyReport::KEPT`]).
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub const KEPT: usize = 16;

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

/// Checks that at every correctable syndrome the locator's coefficients are
/// the elementary symmetric functions of the zero-padded error locations.
pub fn verify_locator(
    spec: &CodeSpec,
    locator: &LocatorExpr,
    table: &SyndromeTable,
    exec: Execution,
) -> Result<VerifyReport, SynthError> {
    let bound = locator.bind(spec)?;
    let t = locator.t;
    let results = exec.map_init(table.entries(), Scratch::default, |scratch, e| {
        let expected = elementary_symmetric(spec, &e.positions, t);
        match bound.evaluate_with(scratch, &e.syndromes) {
            Ok(got) if got == expected => None,
            Ok(got) => Some(VerifyFailure {
                positions: e.positions.clone(),
                expected,
                got: Some(got),
            }),
            Err(EvalFault { .. }) => Some(VerifyFailure {
                positions: e.positions.clone(),
                expected,
                got: None,
            }),
        }
    });
    let mut report = VerifyReport {
        label: locator.label.clone(),
        total: results.len(),
        passed: 0,
        faults: 0,
        failures: Vec::new(),
    };
    for r in results {
        match r {
            None => report.passed += 1,
            Some(f) => {
                if f.got.is_none() {
                    report.faults += 1;
                }
                if report.failures.len() < VerifyReport::KEPT {
                    report.failures.push(f);
                }
            }
        }
    }
    Ok(report)
}

type Values = Vec<(u32, Result<Gf, EvalFault>)>;

/// Values of a single expression at every entry of the given weights.
fn values_on(
    spec: &CodeSpec,
    program: &Program,
    root: NodeId,
    table: &SyndromeTable,
    weights: &[u32],
    exec: Execution,
) -> Result<Values, SynthError> {
    let single = LocatorExpr::new(1, program.clone(), vec![root], "h");
    let bound = single.bind(spec)?;
    let mut out = Vec::new();
    for &mu in weights {
        let vals = exec.map_init(table.slice(mu), Scratch::default, |s, e| {
            bound.evaluate_with(s, &e.syndromes).map(|v| v[0])
        });
        out.extend(vals.into_iter().map(|v| (mu, v)));
    }
    Ok(out)
}

/// True iff `h` is 0 on the syndromes of at most one error and 1 on those of two.
pub fn check_bordering(
    spec: &CodeSpec,
    program: &Program,
    h: NodeId,
    table: &SyndromeTable,
    exec: Execution,
) -> Result<bool, SynthError> {
    check_bordering_on(spec, program, h, table, &[0, 1, 2], exec)
}

/// The bordering conditions restricted to the listed error weights.
pub fn check_bordering_on(
    spec: &CodeSpec,
    program: &Program,
    h: NodeId,
    table: &SyndromeTable,
    weights: &[u32],
    exec: Execution,
) -> Result<bool, SynthError> {
    Ok(values_on(spec, program, h, table, weights, exec)?
        .into_iter()
        .all(|(mu, v)| match v {
            Ok(v) if mu < 2 => v.is_zero(),
            Ok(v) => v == Gf::ONE,
            Err(_) => false,
        }))
}

/// True iff `wh` is 0 on the syndromes of at most one error and never 0 on those of two.
pub fn check_weakly_bordering(
    spec: &CodeSpec,
    program: &Program,
    wh: NodeId,
    table: &SyndromeTable,
    exec: Execution,
) -> Result<bool, SynthError> {
    Ok(values_on(spec, program, wh, table, &[0, 1, 2], exec)?
        .into_iter()
        .all(|(mu, v)| match v {
            Ok(v) if mu < 2 => v.is_zero(),
            Ok(v) => !v.is_zero(),
            Err(_) => false,
        }))
}

/// Outcome of grouping `sigma_k / x_1^(delta/i_1)` by the class key
/// `(x_1^lambda, x_2 / x_1^{i_2}, ..., x_r / x_1^{i_r})`.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub k: usize,
    pub lambda: u64,
    pub delta: u64,
    pub classes: usize,
    pub max_class: usize,
    pub min_class: usize,
    /// Syndromes with `x_1 = 0`, handled by the tail.
    pub tail_entries: usize,
    pub violations: Vec<String>,
    #[serde(skip)]
    pub values: HashMap<Vec<Gf>, Gf>,
    #[serde(skip)]
    pub tail: HashMap<Vec<Gf>, Gf>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `sigma_k` of the locations, divided by `x_1^(k / i_1)`, is
/// constant on every class, where `x_1` is the syndrome of the first primary
/// exponent `i_1`.
pub fn structure_check(
    spec: &CodeSpec,
    k: usize,
    lambda: u64,
    table: &SyndromeTable,
) -> Result<StructureReport, SynthError> {
    let n = spec.n();
    if lambda == 0 || !(n as u64).is_multiple_of(lambda) {
        return Err(SynthError::LambdaNotDivisor { lambda, n });
    }
    if k == 0 {
        return Err(SynthError::BadIndex { k, t: table.t() });
    }
    let i1 = spec.primary()[0];
    let delta = k as u64;
    if i1 == 0 || !delta.is_multiple_of(i1 as u64) {
        return Err(SynthError::DeltaNotMultiple { delta, i1 });
    }
    let power = delta / i1 as u64;
    let others: Vec<u64> = spec.primary()[1..].iter().map(|&e| e as u64).collect();
    let cf = ClassFunction {
        name: String::new(),
        pivoted: true,
        lambda,
        delta: power,
        other_exponents: others,
        classes: HashMap::new(),
        tail: HashMap::new(),
    };
    let f = spec.field();
    let mut values: HashMap<Vec<Gf>, Gf> = HashMap::new();
    let mut sizes: HashMap<Vec<Gf>, usize> = HashMap::new();
    let mut tail: HashMap<Vec<Gf>, Gf> = HashMap::new();
    let mut violations = Vec::new();
    for e in table.entries() {
        let sigma = elementary_symmetric(spec, &e.positions, k as u32)[k - 1];
        match cf.class_key(f, &e.syndromes) {
            Some(key) => {
                let a = f.div(sigma, f.pow_u(e.syndromes[0], power)).expect("nonzero pivot");
                *sizes.entry(key.clone()).or_default() += 1;
                match values.get(&key) {
                    Some(&prev) if prev != a => {
                        if violations.len() < 16 {
                            violations.push(format!(
                                "pattern {:?}: value {a} differs from class value {prev}",
                                e.positions
                            ));
                        }
                    }
                    Some(_) => {}
                    None => {
                        values.insert(key, a);
                    }
                }
            }
            None => {
                tail.insert(e.syndromes[1..].to_vec(), sigma);
            }
        }
    }
    Ok(StructureReport {
        k,
        lambda,
        delta: power,
        classes: sizes.len(),
        max_class: sizes.values().copied().max().unwrap_or(0),
        min_class: sizes.values().copied().min().unwrap_or(0),
        tail_entries: tail.len(),
        violations,
        values,
        tail,
    })
}

/// A univariate polynomial `sum c_e x^e` over GF(2^m), keyed by exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Univariate {
    pub terms: BTreeMap<u64, Gf>,
}

impl Univariate {
    pub fn term_count(&self) -> usize {
        self.terms.values().filter(|c| !c.is_zero()).count()
    }

    pub fn eval(&self, f: &Field, x: Gf) -> Gf {
        self.terms
            .iter()
            .fold(Gf::ZERO, |acc, (&e, &c)| acc + f.mul(c, f.pow_u(x, e)))
    }

    /// One monomial per line, `c x1^e`, in the data-file style.
    pub fn to_monomial_text(&self, var: &str) -> String {
        let mut s = String::new();
        for (&e, &c) in self.terms.iter().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c == Gf::ONE { String::new() } else { format!("{:#x} ", c.bits()) };
            let mono = match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            s.push_str(&format!("{coeff}{mono}\n"));
        }
        s
    }
}

/// Interpolation of one locator coefficient of a code defined by the coset of 1.
#[derive(Debug, Clone, Serialize)]
pub struct Interpolation {
    pub k: usize,
    /// Zero-completed form: agrees with the coefficient on the correctable
    /// syndromes, vanishes elsewhere, degree below 2^m.
    pub dense: Univariate,
    /// Lagrange interpolation through the attained classes only, written as
    /// `x1^k A(x1^n)`; agrees with the coefficient on the correctable syndromes.
    pub reduced: Univariate,
    pub classes: usize,
    /// `floor(sum_{nu=1..t} C(n,nu) / n)`.
    pub bound: u64,
}

impl Interpolation {
    pub fn within_bound(&self) -> bool {
        self.reduced.term_count() as u64 <= self.bound
    }
}

/// Interpolates coefficient `sigma_k` (k = 1 is `a_{t-1}`) of a code whose
/// only primary syndrome is that of 1.
pub fn interpolate_univariate(
    spec: &CodeSpec,
    table: &SyndromeTable,
    k: usize,
) -> Result<Interpolation, SynthError> {
    if spec.primary() != [1] {
        return Err(SynthError::NotUnivariate);
    }
    let t = table.t();
    if k == 0 || k > t as usize {
        return Err(SynthError::BadIndex { k, t });
    }
    let f = spec.field();
    let n = spec.n() as u64;
    let big_n = f.order() as u64 / n;
    let report = structure_check(spec, k, n, table)?;
    if !report.ok() {
        return Err(SynthError::Inconsistent);
    }
    // class value A(w) for w = x1^n in the n-th power subgroup
    let mut points: Vec<(Gf, Gf)> = report.values.iter().map(|(key, &a)| (key[0], a)).collect();
    points.sort();
    let bound = (1..=t as u64).map(|nu| binomial(n, nu)).sum::<u64>() / n;

    // dense: c_j = sum_w A(w) w^{-j}, j < N (inverse transform over mu_N; 1/N = 1)
    let mut dense = BTreeMap::new();
    for j in 0..big_n {
        let c = points.iter().fold(Gf::ZERO, |acc, &(w, a)| {
            let wj = f.pow(w, -(j as i64)).expect("w is nonzero");
            acc + f.mul(a, wj)
        });
        if !c.is_zero() {
            dense.insert(k as u64 + n * j, c);
        }
    }

    // reduced: Lagrange through the attained classes
    let coeffs = lagrange(f, &points);
    let mut reduced = BTreeMap::new();
    for (j, c) in coeffs.into_iter().enumerate() {
        if !c.is_zero() {
            reduced.insert(k as u64 + n * j as u64, c);
        }
    }
    Ok(Interpolation {
        k,
        dense: Univariate { terms: dense },
        reduced: Univariate { terms: reduced },
        classes: points.len(),
        bound,
    })
}

/// Coefficients (ascending) of the polynomial of degree `< points.len()`
/// through the given points.
pub fn lagrange(f: &Field, points: &[(Gf, Gf)]) -> Vec<Gf> {
    let h = points.len();
    // master = prod (y - w_j), ascending coefficients
    let mut master = vec![Gf::ONE];
    for &(w, _) in points {
        let mut next = vec![Gf::ZERO; master.len() + 1];
        for (i, &c) in master.iter().enumerate() {
            next[i + 1] += c;
            next[i] += f.mul(c, w);
        }
        master = next;
    }
    let mut out = vec![Gf::ZERO; h];
    for &(w, v) in points {
        if v.is_zero() {
            continue;
        }
        // quotient master / (y - w) by synthetic division, descending
        let mut q = vec![Gf::ZERO; h];
        let mut carry = Gf::ZERO;
        for i in (1..=h).rev() {
            carry = master[i] + f.mul(carry, w);
            q[i - 1] = carry;
        }
        let denom = q.iter().rev().fold(Gf::ZERO, |acc, &c| f.mul(acc, w) + c);
        let scale = f.div(v, denom).expect("distinct interpolation points");
        for (o, c) in out.iter_mut().zip(q) {
            *o += f.mul(scale, c);
        }
    }
    out
}

/// A locator exact on every correctable syndrome, built from the table.
///
/// Codes defined by the coset of 1 get sparse univariate polynomials in `x1`;
/// otherwise each coefficient is a class lookup pivoted on the syndrome of 1
/// (or a plain lookup on the whole syndrome vector when 1 is unavailable).
pub fn synthesize_locator(spec: &CodeSpec, table: &SyndromeTable) -> Result<LocatorExpr, SynthError> {
    let t = table.t();
    let mut p = Program::new();
    let mut coeffs = Vec::with_capacity(t as usize);
    if spec.primary() == [1] {
        let x1 = p.var("x1", 1);
        for k in 1..=t as usize {
            let interp = interpolate_univariate(spec, table, k)?;
            coeffs.push(univariate_node(&mut p, x1, &interp.reduced));
        }
        return Ok(LocatorExpr::new(t, p, coeffs, "synthesized"));
    }
    for k in 1..=t as usize {
        let node = synthesize_coefficient(spec, table, &mut p, k)?;
        coeffs.push(node);
    }
    Ok(LocatorExpr::new(t, p, coeffs, "synthesized"))
}

/// Builds `sum c_e x^e` as an expression.
pub fn univariate_node(p: &mut Program, x: NodeId, poly: &Univariate) -> NodeId {
    let mut terms = Vec::new();
    for (&e, &c) in poly.terms.iter().rev() {
        if c.is_zero() {
            continue;
        }
        let pw = p.pow(x, e);
        let term = if c == Gf::ONE {
            pw
        } else {
            let cn = p.constant(c);
            p.mul(&[cn, pw])
        };
        terms.push(term);
    }
    p.add(&terms)
}

/// A node for `sigma_k`: a sparse polynomial in `x1` for codes defined by
/// the coset of 1, a class lookup over the primary syndromes otherwise.
pub fn synthesize_coefficient(
    spec: &CodeSpec,
    table: &SyndromeTable,
    p: &mut Program,
    k: usize,
) -> Result<NodeId, SynthError> {
    let has_one = spec.contains(1);
    if k == 1 && has_one {
        return Ok(p.var("x1", 1));
    }
    if spec.primary() == [1] {
        let interp = interpolate_univariate(spec, table, k)?;
        let x1 = p.var("x1", 1);
        return Ok(univariate_node(p, x1, &interp.reduced));
    }
    let f = spec.field();
    let primaries: Vec<u32> = spec.primary().to_vec();
    let pivot_order: Vec<u32> = if has_one {
        let mut v = vec![1u32];
        v.extend(primaries.iter().copied().filter(|&e| !spec_same_coset(spec, e, 1)));
        v
    } else {
        primaries.clone()
    };
    let args: Vec<NodeId> = pivot_order.iter().map(|&e| p.var(&format!("x{e}"), e)).collect();
    let to_args = |syn: &[Gf]| -> Vec<Gf> {
        pivot_order
            .iter()
            .map(|&e| {
                let src = spec.source_of(e).expect("exponent from the complete set");
                let mut v = syn[src.primary];
                for _ in 0..src.doublings {
                    v = f.square(v);
                }
                v
            })
            .collect()
    };
    let mut cf = ClassFunction {
        name: format!("sigma{k}"),
        pivoted: has_one,
        lambda: spec.n() as u64,
        delta: k as u64,
        other_exponents: pivot_order[1..].iter().map(|&e| e as u64).collect(),
        classes: HashMap::new(),
        tail: HashMap::new(),
    };
    let mut consistent = true;
    for e in table.entries() {
        let sigma = elementary_symmetric(spec, &e.positions, k as u32)[k - 1];
        let a = to_args(&e.syndromes);
        match cf.class_key(f, &a) {
            Some(key) => {
                let val = if cf.pivoted {
                    f.div(sigma, f.pow_u(a[0], cf.delta)).expect("nonzero pivot")
                } else {
                    sigma
                };
                if let Some(&prev) = cf.classes.get(&key) {
                    if prev != val {
                        consistent = false;
                        break;
                    }
                } else {
                    cf.classes.insert(key, val);
                }
            }
            None => {
                cf.tail.insert(a[1..].to_vec(), sigma);
            }
        }
    }
    if !consistent {
        cf.pivoted = false;
        cf.classes = table
            .entries()
            .iter()
            .map(|e| {
                let sigma = elementary_symmetric(spec, &e.positions, k as u32)[k - 1];
                (to_args(&e.syndromes), sigma)
            })
            .collect();
        cf.tail.clear();
    }
    cf.classes.retain(|_, v| !v.is_zero());
    cf.tail.retain(|_, v| !v.is_zero());
    Ok(p.table(cf, args))
}

fn spec_same_coset(spec: &CodeSpec, a: u32, b: u32) -> bool {
    crate::code::cyclotomic_coset(spec.n(), a).contains(&(b % spec.n()))
}
