//! Family classification and verified locator construction.

use super::{
    gcd, has_all, t2_bch, t2_one_case, t2_power_family, t2_sl, t3_139, t3_bch, t3_consecutive, t3_powers, transcribed,
    CatalogError, DataSource, Recipe, TableId,
};
use crate::code::{complete_defining_set, CodeSpec};
use crate::expr::LocatorExpr;
use crate::gf2m::mod_inverse;
use crate::par::Execution;
use crate::synth::{synthesize_locator, verify_locator, SyndromeTable, VerifyReport};
use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    T2Bch,
    T2Lambda,
    T2Sl,
    T2OneCase,
    T2Power,
    /// One of the five exceptional codes, `'a'..='e'`.
    T2Exceptional(char),
    T3Bch,
    T3Consecutive,
    T3Powers,
    T3OneThreeNine,
    T3TableEntry,
    Unclassified,
}

impl Family {
    pub fn tag(self) -> String {
        match self {
            Family::T2Bch => "t2-BCH".into(),
            Family::T2Lambda => "t2-lambda".into(),
            Family::T2Sl => "t2-sl".into(),
            Family::T2OneCase => "t2-one-case".into(),
            Family::T2Power => "t2-power".into(),
            Family::T2Exceptional(c) => format!("t2-exceptional({c})"),
            Family::T3Bch => "t3-BCH".into(),
            Family::T3Consecutive => "t3-consecutive".into(),
            Family::T3Powers => "t3-powers".into(),
            Family::T3OneThreeNine => "t3-139".into(),
            Family::T3TableEntry => "t3-table-entry".into(),
            Family::Unclassified => "unclassified".into(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub family: Family,
    pub recipe: Recipe,
    pub hypotheses: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub code: String,
    pub n: u32,
    pub defining_set: Vec<u32>,
    pub complete_set: Vec<u32>,
    pub k: u32,
    pub t: u32,
    pub family: Family,
    pub recipe: Option<Recipe>,
    /// Every family whose hypotheses hold, with its first parameter set.
    pub matches: Vec<FamilyMatch>,
    pub notes: Vec<String>,
}

/// The five exceptional codes and the general constructors that cover them.
const EXCEPTIONAL: [(char, u32, &[u32], Recipe); 5] = [
    ('a', 31, &[1, 15], Recipe::OneCase { l: 1 }),
    ('b', 31, &[1, 5], Recipe::Sl { l: 1, s: 10 }),
    ('c', 45, &[1, 21], Recipe::Sl { l: 2, s: 23 }),
    ('d', 51, &[1, 9], Recipe::Power { i: 0, j: 4 }),
    ('e', 51, &[0, 1, 5], Recipe::CaseE),
];

fn exceptional(spec: &CodeSpec) -> Option<(char, Recipe)> {
    EXCEPTIONAL
        .iter()
        .find(|(_, n, set, _)| *n == spec.n() && complete_defining_set(*n, set) == spec.complete_set())
        .map(|&(c, _, _, r)| (c, r))
}

/// Family assignments for the `t = 3` codes with a printed locator.
const DESIGNATED: [(u32, &[u32], Family); 5] = [
    (21, &[1, 3, 7, 9], Family::T3Powers),
    (23, &[1], Family::T3OneThreeNine),
    (31, &[0, 1, 7, 15], Family::T3Consecutive),
    (35, &[1, 5, 7], Family::T3Consecutive),
    (45, &[1, 5, 9, 15], Family::T3Consecutive),
];

fn designated(spec: &CodeSpec) -> Option<Family> {
    DESIGNATED
        .iter()
        .find(|(n, set, _)| *n == spec.n() && complete_defining_set(*n, set) == spec.complete_set())
        .map(|&(_, _, f)| f)
}

fn listed(exps: &[i64], spec: &CodeSpec) -> String {
    let n = spec.n() as i64;
    let v: Vec<String> = exps.iter().map(|e| e.rem_euclid(n).to_string()).collect();
    format!("syndromes of {} available", v.join(", "))
}

/// Parameter sets kept per family.
const PER_FAMILY: usize = 32;

fn push_capped(out: &mut Vec<FamilyMatch>, m: FamilyMatch) -> bool {
    let count = out.iter().filter(|x| x.family == m.family).count();
    if count < PER_FAMILY {
        out.push(m);
    }
    count + 1 < PER_FAMILY
}

fn t2_candidates(spec: &CodeSpec, notes: &mut Vec<String>) -> Vec<FamilyMatch> {
    let n = spec.n() as i64;
    let m = spec.field().degree();
    let mut out = Vec::new();
    if t2_bch(spec).is_ok() {
        out.push(FamilyMatch {
            family: Family::T2Bch,
            recipe: Recipe::T2Bch,
            hypotheses: listed(&[1, 3], spec),
        });
    }
    for v in 1..=m + 1 {
        let l = (1i64 << v) + 1;
        if gcd(l - 2, n) == 1 && has_all(spec, &[1, l]) {
            let r = l.rem_euclid(n) as u32;
            if !spec.defining_set().contains(&r) {
                notes.push(format!(
                    "t2-lambda: the syndrome of l = {l} ({r} mod n) exists only through the complete defining set"
                ));
            }
            let more = push_capped(
                &mut out,
                FamilyMatch {
                    family: Family::T2Lambda,
                    recipe: Recipe::Lambda { l: l as u64 },
                    hypotheses: format!("l = 2^{v} + 1, gcd(l - 2, n) = 1, {}", listed(&[1, l], spec)),
                },
            );
            if !more {
                break;
            }
        }
    }
    'sl: for l in 1..n {
        if gcd(l, n) != 1 || !has_all(spec, &[1, l]) {
            continue;
        }
        for s in 0..n {
            if gcd((s - 2 * l).rem_euclid(n), n) == 1
                && has_all(spec, &[s - 2 * l, s - l, s])
                && t2_sl(spec, l, s).is_ok()
            {
                let more = push_capped(
                    &mut out,
                    FamilyMatch {
                        family: Family::T2Sl,
                        recipe: Recipe::Sl { l, s },
                        hypotheses: format!(
                            "gcd(l, n) = gcd(s - 2l, n) = 1, {}",
                            listed(&[1, l, s - 2 * l, s - l, s], spec)
                        ),
                    },
                );
                if !more {
                    break 'sl;
                }
            }
        }
    }
    let mut l = 1u64;
    while l < n as u64 - 1 {
        if t2_one_case(spec, l).is_ok() {
            out.push(FamilyMatch {
                family: Family::T2OneCase,
                recipe: Recipe::OneCase { l },
                hypotheses: format!(
                    "l = {l} a power of 2 dividing n - 1, 3 does not divide n, {}",
                    listed(&[1, 2, (n - 1) / l as i64, n - 2], spec)
                ),
            });
        }
        l *= 2;
    }
    for j in 2..=m + 1 {
        if t2_power_family(spec, 0, j).is_ok() {
            let p = 1i64 << j;
            out.push(FamilyMatch {
                family: Family::T2Power,
                recipe: Recipe::Power { i: 0, j },
                hypotheses: format!("i = 0, j = {j}, gcd(2^j - 2, n) = 1, {}", listed(&[1, p, p - 1, p + 2], spec)),
            });
        }
    }
    out
}

fn t3_candidates(spec: &CodeSpec) -> Vec<FamilyMatch> {
    let n = spec.n();
    let m = spec.field().degree();
    let mut out = Vec::new();
    if t3_bch(spec).is_ok() {
        out.push(FamilyMatch {
            family: Family::T3Bch,
            recipe: Recipe::T3Bch,
            hypotheses: listed(&[1, 3, 5], spec),
        });
    }
    for i in (1..n).filter(|&i| t3_consecutive(spec, i).is_ok()) {
        let k = i as i64;
        let more = push_capped(
            &mut out,
            FamilyMatch {
                family: Family::T3Consecutive,
                recipe: Recipe::Consecutive { i },
                hypotheses: format!(
                    "i = {i}, i and i + 2 nonzero mod n, {}",
                    listed(&[1, k, k + 1, k + 2, k + 3, k + 4], spec)
                ),
            },
        );
        if !more {
            break;
        }
    }
    'powers: for i in 0..m {
        for j in i + 2..(i + 2 + m).min(41) {
            if t3_powers(spec, i, j).is_ok() {
                let (pi, pj) = (1i64 << i, 1i64 << j);
                let more = push_capped(
                    &mut out,
                    FamilyMatch {
                        family: Family::T3Powers,
                        recipe: Recipe::Powers { i, j },
                        hypotheses: format!(
                            "i = {i}, j = {j}, {}",
                            listed(&[1, 3, pi + pj, pj - pi, pj - 2 * pi], spec)
                        ),
                    },
                );
                if !more {
                    break 'powers;
                }
            }
        }
    }
    if t3_139(spec).is_ok() {
        let l = mod_inverse(3, spec.field().order() as i64).expect("3 is invertible");
        out.push(FamilyMatch {
            family: Family::T3OneThreeNine,
            recipe: Recipe::OneThreeNine,
            hypotheses: format!(
                "3 does not divide n or 2^m - 1, l* = {l}, {}",
                listed(&[1, 2, 3, 9], spec)
            ),
        });
    }
    if let Some(id) = TableId::for_code(spec) {
        out.push(FamilyMatch {
            family: Family::T3TableEntry,
            recipe: Recipe::Transcribed { id },
            hypotheses: format!("transcribed entry {id}"),
        });
    }
    out
}

/// Every family member whose hypotheses hold, in the order `build` tries
/// them: the tagged family first, then listing order.
pub fn candidates(spec: &CodeSpec) -> (Vec<FamilyMatch>, Vec<String>) {
    let mut notes = Vec::new();
    let mut all = match spec.t() {
        2 => t2_candidates(spec, &mut notes),
        3 => t3_candidates(spec),
        t => {
            notes.push(format!("no locator family for t = {t}"));
            Vec::new()
        }
    };
    if spec.t() == 2 {
        if let Some((c, recipe)) = exceptional(spec) {
            all.insert(
                0,
                FamilyMatch {
                    family: Family::T2Exceptional(c),
                    recipe,
                    hypotheses: format!("exceptional case {c}"),
                },
            );
        }
    }
    if let Some(f) = designated(spec) {
        // stable partition: the designated family moves to the front
        let (mut front, back): (Vec<_>, Vec<_>) = all.into_iter().partition(|m| m.family == f);
        front.extend(back);
        all = front;
    }
    (all, notes)
}

/// Classifies a code against the complete defining set.
///
/// An exceptional code, or a `t = 3` code with a printed locator, is tagged
/// with the family that printed locator comes from; otherwise the first
/// matching family in listing order wins.
pub fn classify(spec: &CodeSpec) -> Classification {
    let (all, mut notes) = candidates(spec);
    let mut matches: Vec<FamilyMatch> = Vec::new();
    for m in all {
        if !matches.iter().any(|x| x.family == m.family) {
            matches.push(m);
        }
    }
    if spec.defining_set().iter().any(|&e| e >= spec.n()) {
        notes.push("defining set lists exponents not below n; they were reduced mod n".into());
    }
    let first = matches.first();
    Classification {
        code: spec.descriptor(),
        n: spec.n(),
        defining_set: spec.defining_set().to_vec(),
        complete_set: spec.complete_set().to_vec(),
        k: spec.dimension(),
        t: spec.t(),
        family: first.map_or(Family::Unclassified, |m| m.family),
        recipe: first.map(|m| m.recipe),
        matches,
        notes,
    }
}

/// A locator that passed exhaustive verification.
#[derive(Debug, Clone)]
pub struct Built {
    pub classification: Classification,
    pub locator: LocatorExpr,
    /// Family of the locator actually returned; `Unclassified` for synthesis.
    pub family: Family,
    pub recipe: Option<Recipe>,
    pub verify: VerifyReport,
    /// True when no catalog locator verified and the table synthesis was used.
    pub fallback: bool,
    pub notes: Vec<String>,
}

/// Tries every candidate in order, keeps the first that verifies on the
/// whole table, and falls back to synthesis otherwise.
///
/// `table` must be the full table of the code (`SyndromeTable::build`).
pub fn build(
    spec: &CodeSpec,
    table: &SyndromeTable,
    exec: Execution,
    data: &DataSource,
) -> Result<Built, CatalogError> {
    let classification = classify(spec);
    let mut notes = classification.notes.clone();
    if let Some(row) = transcribed(spec) {
        let loc = row.locator()?;
        let report = verify_locator(spec, &loc, table, exec)?;
        if report.ok() {
            notes.push(format!("printed row {} verified", row.descriptor()));
        } else {
            notes.push(format!(
                "printed row {} fails at {} of {} syndromes{}",
                row.descriptor(),
                report.total - report.passed,
                report.total,
                row.note.map(|s| format!(" ({s})")).unwrap_or_default()
            ));
        }
    }
    let (all, _) = candidates(spec);
    // families in order, with how many parameter sets failed
    let mut failed: Vec<(Family, usize)> = Vec::new();
    for m in all {
        let outcome = match m.recipe.construct(spec, table, data) {
            Ok(locator) => {
                let verify = verify_locator(spec, &locator, table, exec)?;
                if verify.ok() {
                    summarize(&failed, &mut notes);
                    return Ok(Built {
                        classification,
                        locator,
                        family: m.family,
                        recipe: Some(m.recipe),
                        verify,
                        fallback: false,
                        notes,
                    });
                }
                format!(
                    "{} fails at {} of {} syndromes",
                    locator.label,
                    verify.total - verify.passed,
                    verify.total
                )
            }
            Err(e) => format!("{}: {e}", m.family),
        };
        match failed.iter_mut().find(|(f, _)| *f == m.family) {
            Some((_, k)) => *k += 1,
            None => {
                notes.push(outcome);
                failed.push((m.family, 1));
            }
        }
    }
    summarize(&failed, &mut notes);
    let locator = synthesize_locator(spec, table)?;
    let verify = verify_locator(spec, &locator, table, exec)?;
    Ok(Built {
        classification,
        locator,
        family: Family::Unclassified,
        recipe: None,
        verify,
        fallback: true,
        notes,
    })
}

fn summarize(failed: &[(Family, usize)], notes: &mut Vec<String>) {
    for (f, k) in failed {
        if *k > 1 {
            notes.push(format!("{f}: {k} parameter sets fail verification"));
        }
    }
}
