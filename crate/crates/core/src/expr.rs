//! Rational expression DAGs over syndrome variables.
//!
//! A [`Program`] is an arena of nodes in topological order; a node only refers
//! to nodes created before it, so evaluation is a single forward pass.
//! Quotients follow the `0/0 = 0` convention; a zero denominator under a
//! nonzero numerator is an [`EvalFault`].

use crate::code::{CodeError, CodeSpec, SyndromeSource};
use crate::gf2m::{Field, Gf};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub type NodeId = usize;

/// A syndrome variable: its display name and the exponent whose syndrome it holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub exponent: u32,
}

#[derive(Debug, Clone)]
pub enum Node {
    Var(usize),
    Const(Gf),
    Pow(NodeId, u64),
    Sum(Vec<NodeId>),
    Prod(Vec<NodeId>),
    Quot(NodeId, NodeId),
    Table(Arc<ClassFunction>, Vec<NodeId>),
}

/// Hashable shape of the non-table nodes, used to share identical subtrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum NodeKey {
    Var(usize),
    Const(Gf),
    Pow(NodeId, u64),
    Sum(Vec<NodeId>),
    Prod(Vec<NodeId>),
    Quot(NodeId, NodeId),
}

/// A lookup-backed function of syndromes.
///
/// With `pivoted` set, the first argument `p` plays the role of the syndrome
/// of 1: for `p != 0` the value is `A(key) * p^delta`, where
/// `key = (p^lambda, a_2 / p^{e_2}, ...)` and `A` is read from `classes`;
/// for `p = 0` the value is read from `tail`, keyed by the remaining
/// arguments. Without `pivoted`, `classes` is keyed by all argument values.
/// Missing keys evaluate to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    pub name: String,
    pub pivoted: bool,
    pub lambda: u64,
    pub delta: u64,
    pub other_exponents: Vec<u64>,
    pub classes: HashMap<Vec<Gf>, Gf>,
    pub tail: HashMap<Vec<Gf>, Gf>,
}

impl ClassFunction {
    pub fn class_key(&self, field: &Field, args: &[Gf]) -> Option<Vec<Gf>> {
        if !self.pivoted {
            return Some(args.to_vec());
        }
        let p = args[0];
        if p.is_zero() {
            return None;
        }
        let mut key = Vec::with_capacity(args.len());
        key.push(field.pow_u(p, self.lambda));
        for (a, &e) in args[1..].iter().zip(&self.other_exponents) {
            let d = field.pow_u(p, e);
            key.push(field.div(*a, d).expect("nonzero pivot"));
        }
        Some(key)
    }

    pub fn eval(&self, field: &Field, args: &[Gf]) -> Gf {
        match self.class_key(field, args) {
            Some(key) => {
                let a = self.classes.get(&key).copied().unwrap_or(Gf::ZERO);
                if self.pivoted {
                    field.mul(a, field.pow_u(args[0], self.delta))
                } else {
                    a
                }
            }
            None => self.tail.get(&args[1..]).copied().unwrap_or(Gf::ZERO),
        }
    }

    /// Number of stored nonzero values.
    pub fn support(&self) -> usize {
        self.classes.values().filter(|v| !v.is_zero()).count()
            + self.tail.values().filter(|v| !v.is_zero()).count()
    }

    fn to_json(&self) -> Value {
        let mut classes: Vec<(Vec<u32>, u32)> = self
            .classes
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k.iter().map(|g| g.bits()).collect(), v.bits()))
            .collect();
        classes.sort();
        let mut tail: Vec<(Vec<u32>, u32)> = self
            .tail
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k.iter().map(|g| g.bits()).collect(), v.bits()))
            .collect();
        tail.sort();
        json!({
            "name": self.name,
            "pivoted": self.pivoted,
            "lambda": self.lambda,
            "delta": self.delta,
            "other_exponents": self.other_exponents,
            "classes": classes,
            "tail": tail,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("zero denominator with nonzero numerator at node {node}")]
pub struct EvalFault {
    pub node: NodeId,
}

/// An arena of expression nodes over a list of syndrome variables.
#[derive(Debug, Clone, Default)]
pub struct Program {
    vars: Vec<Var>,
    nodes: Vec<Node>,
    interned: HashMap<NodeKey, NodeId>,
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    fn intern(&mut self, key: NodeKey, node: Node) -> NodeId {
        if let Some(&id) = self.interned.get(&key) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node);
        self.interned.insert(key, id);
        id
    }

    /// The node for variable `name`, holding the syndrome of `exponent`.
    pub fn var(&mut self, name: &str, exponent: u32) -> NodeId {
        let idx = match self.vars.iter().position(|v| v.name == name) {
            Some(i) => {
                assert_eq!(self.vars[i].exponent, exponent, "variable {name} redefined");
                i
            }
            None => {
                self.vars.push(Var {
                    name: name.to_string(),
                    exponent,
                });
                self.vars.len() - 1
            }
        };
        self.intern(NodeKey::Var(idx), Node::Var(idx))
    }

    pub fn constant(&mut self, c: Gf) -> NodeId {
        self.intern(NodeKey::Const(c), Node::Const(c))
    }

    pub fn one(&mut self) -> NodeId {
        self.constant(Gf::ONE)
    }

    pub fn zero(&mut self) -> NodeId {
        self.constant(Gf::ZERO)
    }

    pub fn pow(&mut self, base: NodeId, e: u64) -> NodeId {
        match e {
            0 => self.one(),
            1 => base,
            _ => self.intern(NodeKey::Pow(base, e), Node::Pow(base, e)),
        }
    }

    pub fn add(&mut self, terms: &[NodeId]) -> NodeId {
        match terms {
            [] => self.zero(),
            [x] => *x,
            _ => self.intern(NodeKey::Sum(terms.to_vec()), Node::Sum(terms.to_vec())),
        }
    }

    pub fn mul(&mut self, factors: &[NodeId]) -> NodeId {
        match factors {
            [] => self.one(),
            [x] => *x,
            _ => self.intern(NodeKey::Prod(factors.to_vec()), Node::Prod(factors.to_vec())),
        }
    }

    pub fn div(&mut self, num: NodeId, den: NodeId) -> NodeId {
        self.intern(NodeKey::Quot(num, den), Node::Quot(num, den))
    }

    pub fn table(&mut self, f: ClassFunction, args: Vec<NodeId>) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(Node::Table(Arc::new(f), args));
        id
    }

    /// Evaluates every node given the variable values; `out[i]` is node `i`.
    pub fn eval_into(&self, field: &Field, vars: &[Gf], out: &mut Vec<Gf>) -> Result<(), EvalFault> {
        out.clear();
        out.reserve(self.nodes.len());
        for (id, node) in self.nodes.iter().enumerate() {
            let v = match node {
                Node::Var(i) => vars[*i],
                Node::Const(c) => *c,
                Node::Pow(b, e) => field.pow_u(out[*b], *e),
                Node::Sum(xs) => xs.iter().fold(Gf::ZERO, |acc, &x| acc + out[x]),
                Node::Prod(xs) => {
                    let mut acc = Gf::ONE;
                    for &x in xs {
                        acc = field.mul(acc, out[x]);
                        if acc.is_zero() {
                            break;
                        }
                    }
                    acc
                }
                Node::Quot(a, b) => {
                    let (a, b) = (out[*a], out[*b]);
                    if b.is_zero() {
                        if a.is_zero() {
                            Gf::ZERO
                        } else {
                            return Err(EvalFault { node: id });
                        }
                    } else {
                        field.div(a, b).expect("nonzero denominator")
                    }
                }
                Node::Table(f, args) => {
                    let vals: Vec<Gf> = args.iter().map(|&a| out[a]).collect();
                    f.eval(field, &vals)
                }
            };
            out.push(v);
        }
        Ok(())
    }

    /// Evaluates a single node (and everything before it).
    pub fn eval_node(&self, field: &Field, vars: &[Gf], id: NodeId) -> Result<Gf, EvalFault> {
        let mut out = Vec::new();
        self.eval_into(field, vars, &mut out)?;
        Ok(out[id])
    }

    /// Copies the subtree rooted at `id` of `other` into `self`, renaming
    /// variables by name. Returns the new root.
    pub fn import(&mut self, other: &Program, id: NodeId) -> NodeId {
        let mut map: HashMap<NodeId, NodeId> = HashMap::new();
        self.import_rec(other, id, &mut map)
    }

    fn import_rec(&mut self, other: &Program, id: NodeId, map: &mut HashMap<NodeId, NodeId>) -> NodeId {
        if let Some(&x) = map.get(&id) {
            return x;
        }
        let new = match other.node(id).clone() {
            Node::Var(i) => {
                let v = &other.vars[i];
                self.var(&v.name, v.exponent)
            }
            Node::Const(c) => self.constant(c),
            Node::Pow(b, e) => {
                let b = self.import_rec(other, b, map);
                self.pow(b, e)
            }
            Node::Sum(xs) => {
                let xs: Vec<_> = xs.iter().map(|&x| self.import_rec(other, x, map)).collect();
                self.add(&xs)
            }
            Node::Prod(xs) => {
                let xs: Vec<_> = xs.iter().map(|&x| self.import_rec(other, x, map)).collect();
                self.mul(&xs)
            }
            Node::Quot(a, b) => {
                let a = self.import_rec(other, a, map);
                let b = self.import_rec(other, b, map);
                self.div(a, b)
            }
            Node::Table(f, args) => {
                let args: Vec<_> = args.iter().map(|&x| self.import_rec(other, x, map)).collect();
                let id = self.nodes.len();
                self.nodes.push(Node::Table(f, args));
                id
            }
        };
        map.insert(id, new);
        new
    }

    pub fn to_json(&self, id: NodeId) -> Value {
        match &self.nodes[id] {
            Node::Var(i) => json!({ "var": self.vars[*i].name }),
            Node::Const(c) => json!({ "const": c.bits() }),
            Node::Pow(b, e) => json!({ "pow": [self.to_json(*b), e] }),
            Node::Sum(xs) => json!({ "sum": xs.iter().map(|&x| self.to_json(x)).collect::<Vec<_>>() }),
            Node::Prod(xs) => json!({ "prod": xs.iter().map(|&x| self.to_json(x)).collect::<Vec<_>>() }),
            Node::Quot(a, b) => json!({ "quot": [self.to_json(*a), self.to_json(*b)] }),
            Node::Table(f, args) => json!({
                "table": f.to_json(),
                "args": args.iter().map(|&x| self.to_json(x)).collect::<Vec<_>>(),
            }),
        }
    }

    /// Renders node `id` in infix notation.
    pub fn render(&self, id: NodeId) -> String {
        let mut s = String::new();
        self.render_into(id, 0, &mut s);
        s
    }

    // prec: 0 = top/sum context, 1 = product operand, 2 = power base
    fn render_into(&self, id: NodeId, prec: u8, s: &mut String) {
        match &self.nodes[id] {
            Node::Var(i) => s.push_str(&self.vars[*i].name),
            Node::Const(c) => {
                if c.bits() <= 1 {
                    s.push_str(&c.bits().to_string());
                } else {
                    s.push_str(&format!("{:#x}", c.bits()));
                }
            }
            Node::Pow(b, e) => {
                if prec > 1 {
                    s.push('(');
                }
                self.render_into(*b, 2, s);
                s.push_str(&format!("^{e}"));
                if prec > 1 {
                    s.push(')');
                }
            }
            Node::Sum(xs) => {
                if prec > 0 {
                    s.push('(');
                }
                for (k, &x) in xs.iter().enumerate() {
                    if k > 0 {
                        s.push_str(" + ");
                    }
                    self.render_into(x, 0, s);
                }
                if prec > 0 {
                    s.push(')');
                }
            }
            Node::Prod(xs) => {
                if prec > 1 {
                    s.push('(');
                }
                for (k, &x) in xs.iter().enumerate() {
                    if k > 0 {
                        s.push('*');
                    }
                    self.render_into(x, 1, s);
                }
                if prec > 1 {
                    s.push(')');
                }
            }
            Node::Quot(a, b) => {
                if prec > 0 {
                    s.push('(');
                }
                self.render_into(*a, 2, s);
                s.push('/');
                self.render_into(*b, 2, s);
                if prec > 0 {
                    s.push(')');
                }
            }
            Node::Table(f, args) => {
                s.push_str(&f.name);
                s.push('(');
                for (k, &x) in args.iter().enumerate() {
                    if k > 0 {
                        s.push_str(", ");
                    }
                    self.render_into(x, 0, s);
                }
                s.push(')');
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse expression at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl Program {
    /// Parses infix text such as `(x1^2 x3 + x5)/(x1^3 + x3)` into nodes.
    ///
    /// Operators are `+`, `*`, `/` and `^` with a nonnegative integer
    /// exponent; juxtaposition multiplies. `vars` maps names to exponents,
    /// and names sharing an exponent resolve to the first of them. The
    /// literals `0` and `1` are the field constants.
    pub fn parse(&mut self, text: &str, vars: &[(&str, u32)]) -> Result<NodeId, ParseError> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
            prog: self,
        };
        let id = parser.sum()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(id)
    }
}

struct Parser<'a, 'p> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [(&'a str, u32)],
    prog: &'p mut Program,
}

impl Parser<'_, '_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<NodeId, ParseError> {
        let mut terms = vec![self.product()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.product()?);
        }
        Ok(self.prog.add(&terms))
    }

    fn product(&mut self) -> Result<NodeId, ParseError> {
        let mut factors = vec![self.power()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let num = self.prog.mul(&factors);
                    let den = self.power()?;
                    factors = vec![self.prog.div(num, den)];
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => factors.push(self.power()?),
                _ => break,
            }
        }
        Ok(self.prog.mul(&factors))
    }

    fn power(&mut self) -> Result<NodeId, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            return Ok(self.prog.pow(base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected an integer"))
    }

    fn atom(&mut self) -> Result<NodeId, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => match self.integer()? {
                0 => Ok(self.prog.zero()),
                1 => Ok(self.prog.one()),
                _ => Err(self.error("only the constants 0 and 1 are supported")),
            },
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().find(|(n, _)| *n == name) {
                    Some(&(_, e)) => {
                        // names sharing an exponent denote one syndrome; use the first
                        let (canon, _) = self.vars.iter().find(|(_, x)| *x == e).expect("present");
                        Ok(self.prog.var(canon, e))
                    }
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable {name}")))
                    }
                }
            }
            _ => Err(self.error("expected a variable, constant or '('")),
        }
    }
}

/// A monic general error locator `z^t + a_{t-1} z^{t-1} + ... + a_0`.
#[derive(Debug, Clone)]
pub struct LocatorExpr {
    pub t: u32,
    pub program: Program,
    /// Roots of `a_{t-1}, ..., a_0`, in that order.
    pub coeffs: Vec<NodeId>,
    pub label: String,
}

impl LocatorExpr {
    pub fn new(t: u32, program: Program, coeffs: Vec<NodeId>, label: impl Into<String>) -> Self {
        assert_eq!(coeffs.len(), t as usize, "need one coefficient per degree below t");
        LocatorExpr {
            t,
            program,
            coeffs,
            label: label.into(),
        }
    }

    /// Resolves every variable against `spec`'s syndrome vector.
    pub fn bind(&self, spec: &CodeSpec) -> Result<BoundLocator<'_>, CodeError> {
        let sources = self
            .program
            .vars()
            .iter()
            .map(|v| spec.source_of(v.exponent))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BoundLocator {
            locator: self,
            field: spec.field_arc(),
            sources,
        })
    }

    /// A copy with `coefficient` replaced by `coefficient + 1`.
    pub fn mutated(&self, coefficient: usize) -> LocatorExpr {
        let mut out = self.clone();
        let one = out.program.one();
        let root = out.coeffs[coefficient];
        let m = out.program.nodes.len();
        out.program.nodes.push(Node::Sum(vec![root, one]));
        out.coeffs[coefficient] = m;
        out.label = format!("{} (mutated)", self.label);
        out
    }

    pub fn coefficient_names(&self) -> Vec<String> {
        const NAMES: [&str; 3] = ["a", "b", "c"];
        (0..self.t as usize)
            .map(|k| NAMES.get(k).map(|s| s.to_string()).unwrap_or(format!("a{k}")))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let vars: serde_json::Map<String, Value> = self
            .program
            .vars()
            .iter()
            .map(|v| (v.name.clone(), json!(v.exponent)))
            .collect();
        json!({
            "t": self.t,
            "label": self.label,
            "vars": vars,
            "coeffs": self.coeffs.iter().map(|&c| self.program.to_json(c)).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for LocatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (t = {})", self.label, self.t)?;
        for (name, &c) in self.coefficient_names().iter().zip(&self.coeffs) {
            writeln!(f, "  {name} = {}", self.program.render(c))?;
        }
        let vars: Vec<String> = self
            .program
            .vars()
            .iter()
            .map(|v| format!("{} = s({})", v.name, v.exponent))
            .collect();
        write!(f, "  where {}", vars.join(", "))
    }
}

/// A locator tied to a code, evaluable on primary syndrome vectors.
pub struct BoundLocator<'a> {
    locator: &'a LocatorExpr,
    field: Arc<Field>,
    sources: Vec<SyndromeSource>,
}

/// Reusable scratch space for [`BoundLocator::evaluate_with`].
#[derive(Default, Clone)]
pub struct Scratch {
    vars: Vec<Gf>,
    nodes: Vec<Gf>,
}

impl BoundLocator<'_> {
    pub fn locator(&self) -> &LocatorExpr {
        self.locator
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Values of the locator's variables for a primary syndrome vector.
    pub fn var_values(&self, syndromes: &[Gf], out: &mut Vec<Gf>) {
        out.clear();
        for src in &self.sources {
            let mut v = syndromes[src.primary];
            for _ in 0..src.doublings {
                v = self.field.square(v);
            }
            out.push(v);
        }
    }

    pub fn evaluate_with(&self, scratch: &mut Scratch, syndromes: &[Gf]) -> Result<Vec<Gf>, EvalFault> {
        self.var_values(syndromes, &mut scratch.vars);
        self.locator
            .program
            .eval_into(&self.field, &scratch.vars, &mut scratch.nodes)?;
        Ok(self.locator.coeffs.iter().map(|&c| scratch.nodes[c]).collect())
    }

    /// Coefficients `(a_{t-1}, ..., a_0)` at a primary syndrome vector.
    pub fn evaluate(&self, syndromes: &[Gf]) -> Result<Vec<Gf>, EvalFault> {
        self.evaluate_with(&mut Scratch::default(), syndromes)
    }

    /// Value of an arbitrary node of the locator's program.
    pub fn evaluate_node(&self, scratch: &mut Scratch, syndromes: &[Gf], id: NodeId) -> Result<Gf, EvalFault> {
        self.var_values(syndromes, &mut scratch.vars);
        self.locator
            .program
            .eval_into(&self.field, &scratch.vars, &mut scratch.nodes)?;
        Ok(scratch.nodes[id])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharing_and_rendering() {
        let mut p = Program::new();
        let x1 = p.var("x1", 1);
        let x3 = p.var("x3", 3);
        let c = p.pow(x1, 3);
        let again = p.pow(x1, 3);
        assert_eq!(c, again);
        let num = p.add(&[c, x3]);
        let q = p.div(num, x1);
        assert_eq!(p.render(q), "(x1^3 + x3)/x1");
        let prod = p.mul(&[x1, num]);
        assert_eq!(p.render(prod), "x1*(x1^3 + x3)");
    }

    #[test]
    fn zero_over_zero_is_zero() {
        let f = Field::new(4).unwrap();
        let mut p = Program::new();
        let x1 = p.var("x1", 1);
        let x2 = p.var("x2", 3);
        let q = p.div(x1, x2);
        assert_eq!(p.eval_node(&f, &[Gf::ZERO, Gf::ZERO], q), Ok(Gf::ZERO));
        assert_eq!(p.eval_node(&f, &[Gf(3), Gf::ZERO], q), Err(EvalFault { node: q }));
        let v = p.eval_node(&f, &[Gf(6), Gf(3)], q).unwrap();
        assert_eq!(f.mul(v, Gf(3)), Gf(6));
    }

    #[test]
    fn class_function_lookup() {
        let f = Field::new(4).unwrap();
        let mut classes = HashMap::new();
        classes.insert(vec![Gf::ONE], Gf(7));
        let cf = ClassFunction {
            name: "A".into(),
            pivoted: true,
            lambda: 15,
            delta: 2,
            other_exponents: vec![],
            classes,
            tail: HashMap::new(),
        };
        let g = f.generator();
        assert_eq!(cf.eval(&f, &[g]), f.mul(Gf(7), f.square(g)));
        assert_eq!(cf.eval(&f, &[Gf::ZERO]), Gf::ZERO);
    }

    #[test]
    fn mutation_adds_one() {
        let f = Field::new(4).unwrap();
        let mut p = Program::new();
        let x1 = p.var("x1", 1);
        let loc = LocatorExpr::new(1, p, vec![x1], "t");
        let m = loc.mutated(0);
        let v = m.program.eval_node(&f, &[Gf(5)], m.coeffs[0]).unwrap();
        assert_eq!(v, Gf(4));
    }

    #[test]
    fn json_shape() {
        let mut p = Program::new();
        let x1 = p.var("x1", 1);
        let sq = p.pow(x1, 2);
        let loc = LocatorExpr::new(1, p, vec![sq], "sq");
        let j = loc.to_json();
        assert_eq!(j["t"], 1);
        assert_eq!(j["vars"]["x1"], 1);
        assert_eq!(j["coeffs"][0]["pow"][1], 2);
    }
    #[test]
    fn parse_infix() {
        let f = Field::new(4).unwrap();
        let mut p = Program::new();
        let vars = [("x1", 1), ("x3", 3), ("x5", 5)];
        let b = p.parse("(x1^2 x3 + x5)/(x1^3+x3)", &vars).unwrap();
        assert_eq!(p.render(b), "(x1^2*x3 + x5)/(x1^3 + x3)");
        let same = p.parse("(x1^2*x3+x5) / (x1^3 + x3)", &vars).unwrap();
        assert_eq!(b, same);
        let q = p.parse("x1 x3/x5 x1", &vars).unwrap();
        let v = p.eval_node(&f, &[Gf(2), Gf(3), Gf(5)], q).unwrap();
        let expect = f.mul(f.div(f.mul(Gf(2), Gf(3)), Gf(5)).unwrap(), Gf(2));
        assert_eq!(v, expect);
        assert!(p.parse("x1 + x7", &vars).is_err());
        assert!(p.parse("(x1 + x3", &vars).is_err());
        assert!(p.parse("x1^", &vars).is_err());
        assert!(p.parse("2 x1", &vars).is_err());
        let one = p.parse("x1^0 + 1", &vars).unwrap();
        assert_eq!(p.eval_node(&f, &[Gf(9), Gf(0), Gf(0)], one), Ok(Gf::ZERO));
    }
}
