//! Closed-form general error locators for the known families of binary
//! cyclic codes with `t = 2` and `t = 3`, transcribed locators, and the
//! classification that picks one for a given code.

mod classify;
mod list;
mod t2;
mod t3;
mod table;

pub use classify::{build, candidates, classify, Built, Classification, Family, FamilyMatch};
pub use list::{all_catalog, CatalogEntry};
pub use t2::{
    check_power_relation, one_plus_x0, t2_bch, t2_exceptional_e, t2_lambda, t2_one_case, t2_power_family, t2_sl,
    LambdaParts,
};
pub use t3::{t3_139, t3_bch, t3_consecutive, t3_powers};
pub use table::{load_table_entry, transcribed, transcriptions, DataSource, TableId, Transcription};

use crate::code::{CodeError, CodeSpec};
use crate::expr::{LocatorExpr, ParseError, Program};
use crate::gf2m::FieldError;
use crate::synth::{SyndromeTable, SynthError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("the syndrome of {0} is not available from the complete defining set")]
    MissingSyndrome(u32),
    #[error("the family needs t = {expected}, the code has t = {got}")]
    Capability { expected: u32, got: u32 },
    #[error("no transcribed locator for {0}")]
    UnknownEntry(String),
    #[error("checksum mismatch for {file}: expected {expected}, got {got}")]
    Checksum { file: String, expected: String, got: String },
    #[error("{file}:{line}: {msg}")]
    DataFormat { file: String, line: usize, msg: String },
    #[error("reading {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Constructor parameters for one family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Recipe {
    T2Bch,
    Lambda { l: u64 },
    Sl { l: i64, s: i64 },
    OneCase { l: u64 },
    Power { i: u32, j: u32 },
    CaseE,
    T3Bch,
    Consecutive { i: u32 },
    Powers { i: u32, j: u32 },
    OneThreeNine,
    Transcribed { id: TableId },
}

impl Recipe {
    /// Builds the locator; `table` must cover the code's capability.
    pub fn construct(
        self,
        spec: &CodeSpec,
        table: &SyndromeTable,
        data: &DataSource,
    ) -> Result<LocatorExpr, CatalogError> {
        match self {
            Recipe::T2Bch => t2_bch(spec),
            Recipe::Lambda { l } => Ok(t2_lambda(spec, l, table)?.locator),
            Recipe::Sl { l, s } => t2_sl(spec, l, s),
            Recipe::OneCase { l } => t2_one_case(spec, l),
            Recipe::Power { i, j } => t2_power_family(spec, i, j),
            Recipe::CaseE => t2_exceptional_e(spec),
            Recipe::T3Bch => t3_bch(spec),
            Recipe::Consecutive { i } => t3_consecutive(spec, i),
            Recipe::Powers { i, j } => t3_powers(spec, i, j),
            Recipe::OneThreeNine => t3_139(spec),
            Recipe::Transcribed { id } => load_table_entry(id, data),
        }
    }
}

pub(crate) fn require_t(spec: &CodeSpec, t: u32) -> Result<(), CatalogError> {
    if spec.t() != t {
        return Err(CatalogError::Capability {
            expected: t,
            got: spec.t(),
        });
    }
    Ok(())
}

/// Reduces each exponent mod n and checks it is in the complete defining set.
pub(crate) fn need(spec: &CodeSpec, exps: &[i64]) -> Result<Vec<u32>, CatalogError> {
    exps.iter()
        .map(|&e| {
            let r = e.rem_euclid(spec.n() as i64) as u32;
            if spec.contains(r) {
                Ok(r)
            } else {
                Err(CatalogError::MissingSyndrome(r))
            }
        })
        .collect()
}

pub(crate) fn has_all(spec: &CodeSpec, exps: &[i64]) -> bool {
    need(spec, exps).is_ok()
}

/// Parses one text formula per coefficient `a_{t-1}, ..., a_0`.
pub(crate) fn from_text(
    t: u32,
    label: &str,
    vars: &[(&str, u32)],
    coeffs: &[&str],
) -> Result<LocatorExpr, CatalogError> {
    let mut p = Program::new();
    let mut ids = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        ids.push(p.parse(c, vars)?);
    }
    Ok(LocatorExpr::new(t, p, ids, label))
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}
