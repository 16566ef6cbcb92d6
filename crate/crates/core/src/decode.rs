//! One-step decoding with a general error locator, the table-lookup oracle,
//! and exhaustive comparison of the two.

use crate::code::{CodeError, CodeSpec};
use crate::expr::{BoundLocator, EvalFault, LocatorExpr, Scratch};
use crate::gf2m::Gf;
use crate::par::Execution;
use crate::synth::{SyndromeTable, SynthError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Clean,
    Corrected,
    DetectedUncorrectable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub status: Status,
    pub positions: Vec<u32>,
    pub mu: usize,
    /// The corrected word for `clean`/`corrected`, the received word otherwise.
    pub corrected_word: u128,
    /// Multiplicity of the root 0, when the locator was evaluated.
    pub zero_multiplicity: Option<usize>,
    pub reason: Option<String>,
}

impl DecodeResult {
    fn uncorrectable(received: u128, reason: impl Into<String>) -> Self {
        DecodeResult {
            status: Status::DetectedUncorrectable,
            positions: Vec::new(),
            mu: 0,
            corrected_word: received,
            zero_multiplicity: None,
            reason: Some(reason.into()),
        }
    }
}

/// Primary syndrome vector of a received word.
pub fn compute_syndromes(spec: &CodeSpec, word: u128) -> Result<Vec<Gf>, CodeError> {
    let n = spec.n();
    if n < 128 && word >> n != 0 {
        return Err(CodeError::WordLength {
            got: 128 - word.leading_zeros() as usize,
            expected: n as usize,
        });
    }
    Ok(spec.word_syndromes(word))
}

/// Coefficients `(a_{t-1}, ..., a_0)` of the locator at `syndromes`.
pub fn evaluate_locator(
    spec: &CodeSpec,
    locator: &LocatorExpr,
    syndromes: &[Gf],
) -> Result<Result<Vec<Gf>, EvalFault>, CodeError> {
    Ok(locator.bind(spec)?.evaluate(syndromes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Roots {
    /// Positions `i` with `L(alpha^i) = 0`, ascending.
    pub positions: Vec<u32>,
    pub zero_multiplicity: usize,
}

impl Roots {
    /// Roots counted with multiplicity (nonzero roots counted once).
    pub fn count(&self) -> usize {
        self.positions.len() + self.zero_multiplicity
    }
}

/// Chien search: evaluates the monic locator at every `alpha^i`; the
/// multiplicity of 0 is the number of trailing zero coefficients.
pub fn chien_roots(spec: &CodeSpec, coeffs: &[Gf]) -> Roots {
    let f = spec.field();
    let zero_multiplicity = coeffs.iter().rev().take_while(|c| c.is_zero()).count();
    let mut positions = Vec::new();
    for i in 0..spec.n() {
        let z = spec.alpha_pow(i as u64);
        let v = coeffs.iter().fold(Gf::ONE, |acc, &c| f.mul(acc, z) + c);
        if v.is_zero() {
            positions.push(i);
        }
    }
    Roots {
        positions,
        zero_multiplicity,
    }
}

/// A decoder for one code and locator, reusable across words.
pub struct Decoder<'a> {
    spec: &'a CodeSpec,
    bound: BoundLocator<'a>,
}

impl<'a> Decoder<'a> {
    pub fn new(spec: &'a CodeSpec, locator: &'a LocatorExpr) -> Result<Self, CodeError> {
        Ok(Decoder {
            spec,
            bound: locator.bind(spec)?,
        })
    }

    pub fn decode(&self, received: u128) -> Result<DecodeResult, CodeError> {
        self.decode_with(&mut Scratch::default(), received)
    }

    pub fn decode_with(&self, scratch: &mut Scratch, received: u128) -> Result<DecodeResult, CodeError> {
        let spec = self.spec;
        let syndromes = compute_syndromes(spec, received)?;
        if syndromes.iter().all(|s| s.is_zero()) {
            return Ok(DecodeResult {
                status: Status::Clean,
                positions: Vec::new(),
                mu: 0,
                corrected_word: received,
                zero_multiplicity: None,
                reason: None,
            });
        }
        let t = self.bound.locator().t as usize;
        let coeffs = match self.bound.evaluate_with(scratch, &syndromes) {
            Ok(c) => c,
            Err(fault) => return Ok(DecodeResult::uncorrectable(received, fault.to_string())),
        };
        let roots = chien_roots(spec, &coeffs);
        if roots.count() != t {
            let mut r = DecodeResult::uncorrectable(received, format!("found {} of {t} roots", roots.count()));
            r.zero_multiplicity = Some(roots.zero_multiplicity);
            return Ok(r);
        }
        let flip = roots.positions.iter().fold(0u128, |w, &p| w | 1u128 << p);
        let corrected = received ^ flip;
        if !spec.is_codeword(corrected) {
            let mut r = DecodeResult::uncorrectable(received, "corrected word fails the parity check");
            r.zero_multiplicity = Some(roots.zero_multiplicity);
            return Ok(r);
        }
        Ok(DecodeResult {
            status: Status::Corrected,
            mu: roots.positions.len(),
            positions: roots.positions,
            corrected_word: corrected,
            zero_multiplicity: Some(roots.zero_multiplicity),
            reason: None,
        })
    }
}

/// Decodes `received` with `locator`: syndromes, locator evaluation, Chien
/// search, bit flips and a final parity re-check.
pub fn decode(spec: &CodeSpec, locator: &LocatorExpr, received: u128) -> Result<DecodeResult, CodeError> {
    Decoder::new(spec, locator)?.decode(received)
}

/// Standard-array decoding by table lookup.
pub fn oracle_decode(spec: &CodeSpec, table: &SyndromeTable, received: u128) -> Result<DecodeResult, CodeError> {
    let syndromes = compute_syndromes(spec, received)?;
    if syndromes.iter().all(|s| s.is_zero()) {
        return Ok(DecodeResult {
            status: Status::Clean,
            positions: Vec::new(),
            mu: 0,
            corrected_word: received,
            zero_multiplicity: None,
            reason: None,
        });
    }
    match table.lookup(&syndromes) {
        Some(e) => {
            let flip = e.positions.iter().fold(0u128, |w, &p| w | 1u128 << p);
            Ok(DecodeResult {
                status: Status::Corrected,
                positions: e.positions.clone(),
                mu: e.positions.len(),
                corrected_word: received ^ flip,
                zero_multiplicity: None,
                reason: None,
            })
        }
        None => Ok(DecodeResult::uncorrectable(received, "syndrome not in the table")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub positions: Vec<u32>,
    pub decoded: DecodeResult,
    pub expected: DecodeResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceStats {
    pub code: String,
    pub label: String,
    pub patterns: usize,
    pub passed: usize,
    pub failed: usize,
    /// The failing pattern that comes first in table order.
    pub first_counterexample: Option<Counterexample>,
}

impl EquivalenceStats {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Decodes every correctable error pattern (added to the zero codeword) with
/// both `locator` and the table, and compares the outcomes.
pub fn exhaustive_equivalence(
    spec: &CodeSpec,
    locator: &LocatorExpr,
    table: &SyndromeTable,
    exec: Execution,
) -> Result<EquivalenceStats, DecodeError> {
    let decoder = Decoder::new(spec, locator)?;
    let outcomes = exec.map_init(table.entries(), Scratch::default, |scratch, e| {
        let word = e.positions.iter().fold(0u128, |w, &p| w | 1u128 << p);
        let got = decoder.decode_with(scratch, word).expect("word fits the code");
        let expected = oracle_decode(spec, table, word).expect("word fits the code");
        let same = got.status == expected.status
            && got.positions == expected.positions
            && got.corrected_word == expected.corrected_word;
        if same {
            None
        } else {
            Some(Counterexample {
                positions: e.positions.clone(),
                decoded: got,
                expected,
            })
        }
    });
    let failed = outcomes.iter().filter(|o| o.is_some()).count();
    Ok(EquivalenceStats {
        code: spec.descriptor(),
        label: locator.label.clone(),
        patterns: outcomes.len(),
        passed: outcomes.len() - failed,
        failed,
        first_counterexample: outcomes.into_iter().flatten().next(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Program;

    fn bch15() -> (CodeSpec, LocatorExpr) {
        let spec = CodeSpec::new(15, &[1, 3, 5]).unwrap();
        let mut p = Program::new();
        let x1 = p.var("x1", 1);
        let x3 = p.var("x3", 3);
        let x5 = p.var("x5", 5);
        let x1_2 = p.pow(x1, 2);
        let x1_3 = p.pow(x1, 3);
        let x1_6 = p.pow(x1, 6);
        let x3_2 = p.pow(x3, 2);
        let t1 = p.mul(&[x1_2, x3]);
        let bn = p.add(&[t1, x5]);
        let den = p.add(&[x1_3, x3]);
        let b = p.div(bn, den);
        let t2 = p.mul(&[x1_3, x3]);
        let t3 = p.mul(&[x1, x5]);
        let cn = p.add(&[t2, x1_6, x3_2, t3]);
        let c = p.div(cn, den);
        let loc = LocatorExpr::new(3, p, vec![x1, b, c], "bch");
        (spec, loc)
    }

    #[test]
    fn syndromes_of_words() {
        let (spec, _) = bch15();
        assert!(compute_syndromes(&spec, 0).unwrap().iter().all(|s| s.is_zero()));
        let s = compute_syndromes(&spec, 1 << 2 | 1 << 7).unwrap();
        assert_eq!(s[0], spec.alpha_pow(2) + spec.alpha_pow(7));
        assert!(compute_syndromes(&spec, 1 << 15).is_err());
        let g = spec.generator_polynomial().unwrap().bits;
        assert!(compute_syndromes(&spec, g).unwrap().iter().all(|s| s.is_zero()));
    }

    #[test]
    fn chien_search() {
        let (spec, _) = bch15();
        let r = chien_roots(&spec, &[Gf::ZERO; 3]);
        assert_eq!(r.zero_multiplicity, 3);
        assert!(r.positions.is_empty());
        let f = spec.field();
        let a = spec.alpha_pow(2) + spec.alpha_pow(7);
        let b = f.mul(spec.alpha_pow(2), spec.alpha_pow(7));
        let r = chien_roots(&spec, &[a, b]);
        assert_eq!(r.positions, vec![2, 7]);
        assert_eq!(r.zero_multiplicity, 0);
        // z^3 + 1 vanishes on the cube roots of unity
        let r = chien_roots(&spec, &[Gf::ZERO, Gf::ZERO, Gf::ONE]);
        assert_eq!(r.positions, vec![0, 5, 10]);
        assert_eq!(r.zero_multiplicity, 0);
    }

    #[test]
    fn round_trip_and_clean() {
        let (spec, loc) = bch15();
        let mut msg = vec![false; spec.dimension() as usize];
        msg[0] = true;
        msg[3] = true;
        let c = spec.encode(&msg).unwrap();
        let r = decode(&spec, &loc, c ^ (1 << 2 | 1 << 7)).unwrap();
        assert_eq!(r.status, Status::Corrected);
        assert_eq!(r.corrected_word, c);
        assert_eq!(r.positions, vec![2, 7]);
        assert_eq!(decode(&spec, &loc, c).unwrap().status, Status::Clean);
    }

    #[test]
    fn single_error_roots() {
        let (spec, loc) = bch15();
        let s = compute_syndromes(&spec, 1 << 4).unwrap();
        let coeffs = evaluate_locator(&spec, &loc, &s).unwrap().unwrap();
        let r = chien_roots(&spec, &coeffs);
        assert_eq!(r.positions, vec![4]);
        assert_eq!(r.zero_multiplicity, 2);
    }

    #[test]
    fn never_returns_a_non_codeword() {
        let (spec, loc) = bch15();
        for burst in 0..12 {
            let w = 0b1111u128 << burst;
            let r = decode(&spec, &loc, w).unwrap();
            match r.status {
                Status::Corrected => assert!(spec.is_codeword(r.corrected_word)),
                Status::DetectedUncorrectable => assert_eq!(r.corrected_word, w),
                Status::Clean => unreachable!(),
            }
        }
    }

    #[test]
    fn equivalence_and_mutation() {
        let (spec, loc) = bch15();
        let table = SyndromeTable::build(&spec, Execution::Parallel).unwrap();
        let stats = exhaustive_equivalence(&spec, &loc, &table, Execution::Parallel).unwrap();
        assert_eq!(stats.patterns, 576);
        assert!(stats.all_pass());
        let bad = loc.mutated(1);
        let stats = exhaustive_equivalence(&spec, &bad, &table, Execution::Sequential).unwrap();
        assert!(stats.failed > 0);
        assert!(stats.first_counterexample.is_some());
    }

    #[test]
    fn degenerate_t0() {
        let spec = CodeSpec::new(15, &[0]).unwrap();
        assert_eq!(spec.t(), 0);
        let table = SyndromeTable::build(&spec, Execution::Sequential).unwrap();
        let loc = LocatorExpr::new(0, Program::new(), vec![], "empty");
        let stats = exhaustive_equivalence(&spec, &loc, &table, Execution::Sequential).unwrap();
        assert_eq!((stats.patterns, stats.passed), (1, 1));
    }
}
