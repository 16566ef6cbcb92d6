//! The catalog codes of length below 63.

use crate::code::{parse_descriptor, CodeSpec, CodeError};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub code: String,
    /// Lists the code appears in.
    pub sources: Vec<&'static str>,
    /// Why the entry cannot be instantiated, if it cannot.
    pub invalid: Option<String>,
}

impl CatalogEntry {
    pub fn spec(&self) -> Result<CodeSpec, CodeError> {
        CodeSpec::parse(&self.code)
    }
}

const EXCEPTIONAL: &[&str] = &["31:1,15", "31:1,5", "45:1,21", "51:1,9", "51:0,1,5"];

const T3_CASE_ONE: &[&str] = &[
    "15:1,3,5", "21:1,3,5", "21:1,3,7,9", "21:0,1,3,7", "23:1", "31:1,3,5", "31:0,1,7,15", "35:1,3,5", "35:1,5,7",
    "45:1,3,5", "45:1,5,9,15", "49:1,3", "51:1,3,9", "55:0,1",
];

const LAMBDA: &[&str] = &[
    "15:1,3", "17:1", "21:1,3", "25:1", "27:1,9", "31:1,3", "31:1,5", "35:1,5", "35:1,3", "45:1,21", "45:1,3",
    "45:1,9", "51:1,3", "51:1,9", "55:1",
];

const SL: &[&str] = &[
    "9:0,1", "15:1,3", "15:0,1,7", "17:0,1", "21:0,1,5", "21:1,3", "25:1", "27:1,9", "27:0,1", "31:0,1,15",
    "31:1,5", "31:1,3", "33:0,1", "35:1,3", "35:1,5", "45:0,1,7", "45:1,3", "45:1,7,15", "45:1,21", "45:1,9",
    "51:1,3", "51:1,9,17", "51:0,1,19", "51:0,1,5,11", "55:1", "15:1,21,31",
];

const ONE_CASE: &[&str] = &["17:1", "25:1", "31:1,15", "31:1,3", "43:1", "55:1,3"];

const POWER: &[&str] = &[
    "15:1,3", "21:1,3", "25:1", "31:1,3", "31:1,5,15", "35:1,3", "45:1,3", "45:1,9,15", "51:1,3", "51:1,9", "55:1,3",
];

const T3_CONSECUTIVE: &[&str] = &[
    "15:1,3,5", "21:1,3,5", "21:1,5,9", "23:0,1", "31:0,1,7,15", "31:1,3,5", "35:1,3,5", "35:1,5,7", "45:1,3,5",
    "49:1,3",
];

const T3_POWERS: &[&str] = &[
    "15:1,3,5", "21:1,3,5", "21:1,3,7,9", "31:1,3,5", "35:1,3,5", "45:1,3,5", "49:1,3",
];

/// Every catalog code with `n < 63`, in first-listed order, merged across lists.
pub fn all_catalog() -> Vec<CatalogEntry> {
    let lists: [(&'static str, &[&str]); 8] = [
        ("exceptional", EXCEPTIONAL),
        ("t3-case-1", T3_CASE_ONE),
        ("t2-lambda-list", LAMBDA),
        ("t2-sl-list", SL),
        ("t2-one-case-list", ONE_CASE),
        ("t2-power-list", POWER),
        ("t3-consecutive-list", T3_CONSECUTIVE),
        ("t3-powers-list", T3_POWERS),
    ];
    let mut out: Vec<CatalogEntry> = Vec::new();
    for (source, codes) in lists {
        for &code in codes {
            if let Some(e) = out.iter_mut().find(|e| e.code == code) {
                e.sources.push(source);
                continue;
            }
            out.push(CatalogEntry {
                code: code.to_string(),
                sources: vec![source],
                invalid: invalid_reason(code),
            });
        }
    }
    out
}

fn invalid_reason(code: &str) -> Option<String> {
    match parse_descriptor(code) {
        Ok((n, set)) => set
            .iter()
            .find(|&&e| e >= n)
            .map(|e| format!("exponent {e} is not below n = {n}")),
        Err(e) => Some(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merged_and_flagged() {
        let all = all_catalog();
        let mut codes: Vec<&str> = all.iter().map(|e| e.code.as_str()).collect();
        let len = codes.len();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), len);
        let bad: Vec<&CatalogEntry> = all.iter().filter(|e| e.invalid.is_some()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].code, "15:1,21,31");
        let e = all.iter().find(|e| e.code == "31:1,5").unwrap();
        assert_eq!(e.sources, ["exceptional", "t2-lambda-list", "t2-sl-list"]);
        assert!(all.iter().all(|e| e.invalid.is_some() || e.spec().is_ok()));
    }
}
