//! Transcribed locators: literal formulas for specific codes, and the
//! monomial data files for the code of length 55.

use super::{from_text, CatalogError};
use crate::code::{complete_defining_set, CodeSpec};
use crate::expr::{LocatorExpr, NodeId, Program};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

const N55_B: &str = include_str!("../../data/n55_b.txt");
const N55_C: &str = include_str!("../../data/n55_c.txt");
const CHECKSUMS: &str = include_str!("../../data/SHA256SUMS");

/// Transcribed entries that no closed-form family covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    #[serde(rename = "21:0,1,3,7")]
    N21,
    #[serde(rename = "51:1,3,9")]
    N51,
    #[serde(rename = "55:0,1")]
    N55,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::N21, TableId::N51, TableId::N55];

    pub fn code(self) -> (u32, &'static [u32]) {
        match self {
            TableId::N21 => (21, &[0, 1, 3, 7]),
            TableId::N51 => (51, &[1, 3, 9]),
            TableId::N55 => (55, &[0, 1]),
        }
    }

    /// The entry whose code has the same length and complete defining set.
    pub fn for_code(spec: &CodeSpec) -> Option<TableId> {
        Self::ALL.into_iter().find(|id| {
            let (n, set) = id.code();
            n == spec.n() && complete_defining_set(n, set) == spec.complete_set()
        })
    }

    pub fn parse(descriptor: &str) -> Result<TableId, CatalogError> {
        let (n, set) = crate::code::parse_descriptor(descriptor)?;
        let mut set = set;
        set.sort_unstable();
        Self::ALL
            .into_iter()
            .find(|id| id.code() == (n, set.as_slice()))
            .ok_or_else(|| CatalogError::UnknownEntry(descriptor.to_string()))
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, set) = self.code();
        let set: Vec<String> = set.iter().map(|e| e.to_string()).collect();
        write!(f, "{n}:{}", set.join(","))
    }
}

/// Where the n = 55 data files come from.
#[derive(Debug, Clone, Default)]
pub struct DataSource {
    /// Directory holding `n55_b.txt` and `n55_c.txt`; the embedded copies
    /// are used when unset.
    pub dir: Option<PathBuf>,
}

impl DataSource {
    pub fn from_dir(dir: impl Into<PathBuf>) -> Self {
        DataSource { dir: Some(dir.into()) }
    }

    fn read(&self, file: &str) -> Result<String, CatalogError> {
        let text = match &self.dir {
            None => match file {
                "n55_b.txt" => N55_B.to_string(),
                "n55_c.txt" => N55_C.to_string(),
                _ => return Err(CatalogError::UnknownEntry(file.to_string())),
            },
            Some(dir) => {
                let path = dir.join(file);
                std::fs::read_to_string(&path).map_err(|e| CatalogError::Io {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                })?
            }
        };
        let expected = CHECKSUMS
            .lines()
            .find_map(|l| {
                let (sum, name) = l.split_once("  ")?;
                (name.trim() == file).then(|| sum.to_string())
            })
            .ok_or_else(|| CatalogError::UnknownEntry(file.to_string()))?;
        let got = hex::encode(Sha256::digest(text.as_bytes()));
        if got != expected {
            return Err(CatalogError::Checksum {
                file: file.to_string(),
                expected,
                got,
            });
        }
        Ok(text)
    }
}

/// A formula row for one code, with its own variable numbering.
#[derive(Debug, Clone)]
pub struct Transcription {
    pub n: u32,
    pub set: &'static [u32],
    pub vars: &'static [(&'static str, u32)],
    pub b: String,
    pub c: String,
    /// Known defects of the printed row.
    pub note: Option<&'static str>,
}

impl Transcription {
    pub fn descriptor(&self) -> String {
        let set: Vec<String> = self.set.iter().map(|e| e.to_string()).collect();
        format!("{}:{}", self.n, set.join(","))
    }

    pub fn locator(&self) -> Result<LocatorExpr, CatalogError> {
        from_text(
            3,
            &format!("transcribed {}", self.descriptor()),
            self.vars,
            &["x1", &self.b, &self.c],
        )
    }
}

const BCH_B: &str = "(x1^3 x2 + x1^6 + x2^2 + x1 x3)/(x1^3 + x2)";
const BCH_C: &str = "(x1^2 x2 + x3)/(x1^3 + x2)";

const N21_B: &str = "x4 x1^2 + x3^3 x1^2 + x3^2 x2^3 + x3^2 x2^2 x1^3 + x3^2 x1^9 + x3 x2^3 x1^28 \
    + x3 x2^2 x1^10 + x3 x2 x1^13 + x3 x1^37 + x2^7 x1^44 + x2^7 x1^23 + x2^6 x1^47 + x2^6 x1^5 \
    + x2^5 x1^50 + x2^4 x1^53 + x2^4 x1^32 + x2^3 x1^56 + x2^3 x1^35 + x2^2 x1^59 + x2^2 x1^38 \
    + x2 x1^41 + x2 x1^20 + x1^23 + x1^2";

const N51_Q1: &str = "(x3 x1^9 + x3 x2 x1^6 + x2^3 x1^9 + x3^2 + x3 x2^2 x1^3 + x2^4 x1^6 + x3 x2^3 \
    + x5 x1^3 + x5 x2 + x2^6)";
const N51_Q2: &str = "(x1^16 + x2^4 x1^4 + x4 x2 + x2^5 x1)";

/// The printed `b`, with the outer factor `x1^3 + x2` multiplied into the
/// inner sum so that it cancels against the denominator of `x1^2/(x1^3 + x2)`
/// (as a rational function the two forms are equal).
fn n51_b() -> String {
    format!(
        "x1^2 + (x1^3 + x2) (x3^2 + x5 x3)/({N51_Q1} x1) + ((x3 + x2^3)/(x5^4 + x2^3) + 1) \
         (x1^2 + (x1^3 + x2) (x4 + x2^4 x1)/{N51_Q2})"
    )
}

/// Every printed formula row for `t = 3`, as printed.
///
/// The BCH rows list the two coefficients in the opposite order; they are
/// kept verbatim so validation can flag them.
pub fn transcriptions() -> Vec<Transcription> {
    const BCH_VARS: &[(&str, u32)] = &[("x1", 1), ("x2", 3), ("x3", 5)];
    let mut out = Vec::new();
    for n in [15, 21, 31, 35, 45] {
        out.push(Transcription {
            n,
            set: &[1, 3, 5],
            vars: BCH_VARS,
            b: BCH_B.into(),
            c: BCH_C.into(),
            note: Some("coefficients printed in swapped order"),
        });
    }
    out.push(Transcription {
        n: 49,
        set: &[1, 3],
        vars: BCH_VARS,
        b: BCH_B.into(),
        c: BCH_C.into(),
        note: Some("coefficients printed in swapped order"),
    });
    out.push(Transcription {
        n: 21,
        set: &[1, 3, 7, 9],
        vars: &[("x1", 1), ("x2", 3), ("x3", 7), ("x4", 9)],
        b: "(x2^2 (x1^3 + x2) + (x1^9 + x4))/(x3 + x1 x2^2)".into(),
        c: "(x3 (x1^3 + x2) + x1 (x1^9 + x4))/(x3 + x1 x2^2)".into(),
        note: None,
    });
    out.push(Transcription {
        n: 21,
        set: &[0, 1, 3, 7],
        vars: &[("x1", 1), ("x2", 3), ("x3", 7), ("x4", 0)],
        b: N21_B.into(),
        c: format!("x1^3 + x2 + x1 ({N21_B})"),
        note: None,
    });
    let d = "((x9 + x1^9)/(x3 + x1^3) + (x1^3 + x3)^2)";
    let h = "(x1^3 + x3)/(x1 x2 + x3)";
    let b23 = format!("(x1^2 + {d}^1365) {h}");
    out.push(Transcription {
        n: 23,
        set: &[1],
        vars: &[("x1", 1), ("x2", 2), ("x3", 3), ("x9", 9)],
        c: format!("(x1^3 + x3 + ({b23}) x1) {h}"),
        b: b23,
        note: None,
    });
    out.push(Transcription {
        n: 31,
        set: &[0, 1, 7, 15],
        vars: &[("x1", 1), ("x2", 7), ("x3", 15), ("x4", 0)],
        b: "(x3^8 (x4 + x1 x3^2) + x2^4 (x3^2 + x1 x3^4))/(x3^12 + x2^8)".into(),
        c: "(x2^4 (x4 + x1 x3^2) + x3^4 (x3^2 + x1 x3^4))/(x3^12 + x2^8)".into(),
        note: None,
    });
    out.push(Transcription {
        n: 35,
        set: &[1, 5, 7],
        vars: &[("x1", 1), ("x2", 5), ("x3", 7)],
        b: "(x3 (x1^256 + x1 x2^2) + x1^8 (x2^2 + x1^1025))/(x1^16 + x3 x1^1024)".into(),
        c: "(x1^8 (x1^256 + x1 x2^2) + x1^1024 (x2^2 + x1^1025))/(x1^16 + x3 x1^1024)".into(),
        note: None,
    });
    out.push(Transcription {
        n: 45,
        set: &[1, 5, 9, 15],
        vars: &[("x1", 1), ("x2", 5), ("x3", 9), ("x4", 15)],
        b: "(x4 (x1 x3^2 + x1^64) + x1^16 (x3^2 + x1^513))/(x1^512 x4 + x1^32)".into(),
        c: "(x1^16 (x1 x3^2 + x1^64) + x1^512 (x3^2 + x1^513))/(x1^512 x4 + x1^32)".into(),
        note: None,
    });
    out.push(Transcription {
        n: 51,
        set: &[1, 3, 9],
        vars: &[("x1", 1), ("x2", 3), ("x3", 9), ("x4", 13), ("x5", 15)],
        b: n51_b(),
        c: format!("x1^3 + x2 + x1 ({})", n51_b()),
        note: None,
    });
    out
}

/// The printed row for this code, if any.
pub fn transcribed(spec: &CodeSpec) -> Option<Transcription> {
    transcriptions()
        .into_iter()
        .find(|t| t.n == spec.n() && complete_defining_set(t.n, t.set) == spec.complete_set())
}

/// The transcribed locator for one of the entries without a closed form.
pub fn load_table_entry(id: TableId, data: &DataSource) -> Result<LocatorExpr, CatalogError> {
    match id {
        TableId::N21 | TableId::N51 => {
            let (n, set) = id.code();
            let row = transcriptions()
                .into_iter()
                .find(|t| t.n == n && t.set == set)
                .expect("row present");
            let mut loc = row.locator()?;
            loc.label = format!("t3-table-entry {id}");
            Ok(loc)
        }
        TableId::N55 => {
            let mut p = Program::new();
            let a = p.parse("x1", &[("x1", 1)])?;
            let b = monomial_file(&mut p, "n55_b.txt", &data.read("n55_b.txt")?)?;
            let c = monomial_file(&mut p, "n55_c.txt", &data.read("n55_c.txt")?)?;
            Ok(LocatorExpr::new(3, p, vec![a, b, c], format!("t3-table-entry {id}")))
        }
    }
}

/// Parses a data file of monomials into a sum, written in Horner form in
/// the alias variable so that evaluation stays cheap.
fn monomial_file(p: &mut Program, file: &str, text: &str) -> Result<NodeId, CatalogError> {
    let err = |line: usize, msg: String| CatalogError::DataFormat {
        file: file.to_string(),
        line,
        msg,
    };
    let mut vars: Vec<(String, u32)> = Vec::new();
    let mut alias: Option<(String, String, u64)> = None;
    // non-alias factors -> alias exponents, in order of first appearance
    let mut groups: Vec<(Vec<(String, u64)>, Vec<u64>)> = Vec::new();
    let mut index: HashMap<Vec<(String, u64)>, usize> = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("@vars") {
            for tok in rest.split_whitespace() {
                let (name, e) = tok.split_once('=').ok_or_else(|| err(line_no, format!("bad binding {tok}")))?;
                let e: u32 = e.parse().map_err(|_| err(line_no, format!("bad exponent in {tok}")))?;
                vars.push((name.to_string(), e));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("@alias") {
            let (name, def) = rest.split_once('=').ok_or_else(|| err(line_no, "bad alias".into()))?;
            let (base, e) = parse_factor(def.trim()).ok_or_else(|| err(line_no, "bad alias power".into()))?;
            alias = Some((name.trim().to_string(), base, e));
            continue;
        }
        let mut key = Vec::new();
        let mut alias_exp = 0u64;
        for tok in line.split_whitespace() {
            let (name, e) = parse_factor(tok).ok_or_else(|| err(line_no, format!("bad factor {tok}")))?;
            match &alias {
                Some((a, _, _)) if *a == name => alias_exp += e,
                _ => {
                    if !vars.iter().any(|(v, _)| *v == name) {
                        return Err(err(line_no, format!("unknown variable {name}")));
                    }
                    key.push((name, e));
                }
            }
        }
        key.sort();
        let g = *index.entry(key.clone()).or_insert_with(|| {
            groups.push((key, Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(alias_exp);
    }
    let var_node = |p: &mut Program, name: &str| -> Result<NodeId, CatalogError> {
        let (_, e) = vars.iter().find(|(v, _)| v == name).ok_or_else(|| err(0, format!("unknown {name}")))?;
        Ok(p.var(name, *e))
    };
    let y = match &alias {
        Some((_, base, e)) => {
            let b = var_node(p, base)?;
            Some(p.pow(b, *e))
        }
        None => None,
    };
    let one = p.one();
    let mut terms = Vec::new();
    for (key, mut exps) in groups {
        let mut factors = Vec::new();
        for (name, e) in &key {
            let v = var_node(p, name)?;
            factors.push(p.pow(v, *e));
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        if exps.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(0, "repeated monomial".into()));
        }
        if let Some(y) = y {
            // sum_k y^{e_k} = y^{e_last} (1 + y^{g}(1 + ...))
            let mut acc = one;
            for w in exps.windows(2) {
                let step = p.pow(y, w[0] - w[1]);
                let prod = if acc == one { step } else { p.mul(&[step, acc]) };
                acc = p.add(&[one, prod]);
            }
            let last = *exps.last().expect("nonempty group");
            if last > 0 {
                factors.push(p.pow(y, last));
            }
            if acc != one {
                factors.push(acc);
            }
        } else if exps.len() > 1 {
            return Err(err(0, "repeated monomial".into()));
        }
        terms.push(p.mul(&factors));
    }
    Ok(p.add(&terms))
}

fn parse_factor(tok: &str) -> Option<(String, u64)> {
    match tok.split_once('^') {
        Some((name, e)) => Some((name.to_string(), e.parse().ok()?)),
        None => Some((tok.to_string(), 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::Gf;

    #[test]
    fn checksums_match_embedded_files() {
        let d = DataSource::default();
        assert!(d.read("n55_b.txt").is_ok());
        assert!(d.read("n55_c.txt").is_ok());
    }

    #[test]
    fn tampered_file_is_rejected() {
        let dir = std::env::temp_dir().join(format!("gelp-data-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("n55_b.txt"), N55_B.replace("y1^475", "y1^474")).unwrap();
        std::fs::write(dir.join("n55_c.txt"), N55_C).unwrap();
        let err = load_table_entry(TableId::N55, &DataSource::from_dir(&dir)).unwrap_err();
        assert!(matches!(err, CatalogError::Checksum { .. }));
        std::fs::write(dir.join("n55_b.txt"), N55_B).unwrap();
        assert!(load_table_entry(TableId::N55, &DataSource::from_dir(&dir)).is_ok());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn monomial_groups() {
        let text = "@vars x1=1 x2=0\n@alias y1 = x1^5\nx1^2 y1^3\nx1^2 y1\nx1^2\nx1^2 x2 y1^2\n";
        let mut p = Program::new();
        let root = monomial_file(&mut p, "t", text).unwrap();
        let f = crate::gf2m::Field::new(4).unwrap();
        let (x1, x2) = (crate::gf2m::Gf(6), crate::gf2m::Gf(9));
        let got = p.eval_node(&f, &[x1, x2], root).unwrap();
        let y = f.pow_u(x1, 5);
        let x1s = f.square(x1);
        let want = f.mul(x1s, f.pow_u(y, 3) + y + crate::gf2m::Gf::ONE) + f.mul(f.mul(x1s, x2), f.square(y));
        assert_eq!(got, want);
        assert!(monomial_file(&mut p, "t", "@vars x1=1\nx1 x7\n").is_err());
        assert!(monomial_file(&mut p, "t", "@vars x1=1\nx1^2\nx1^2\n").is_err());
    }

    #[test]
    fn n55_matches_monomial_sum() {
        let loc = load_table_entry(TableId::N55, &DataSource::default()).unwrap();
        let text = loc.program.render(loc.coeffs[1]);
        assert!(text.starts_with("x1^2*(1 + x1^55*(1 + "), "{}", &text[..40]);
        let spec = CodeSpec::new(55, &[0, 1]).unwrap();
        let f = spec.field();
        let bound = loc.bind(&spec).unwrap();
        // expand the data files line by line, with y1 = x1^55
        let naive = |file: &str, x1: Gf, x2: Gf| {
            let y1 = f.pow_u(x1, 55);
            let mut acc = Gf::ZERO;
            for line in file.lines().filter(|l| !l.starts_with(['#', '@']) && !l.trim().is_empty()) {
                let mut term = Gf::ONE;
                for tok in line.split_whitespace() {
                    let (name, e) = parse_factor(tok).unwrap();
                    let base = match name.as_str() {
                        "x1" => x1,
                        "x2" => x2,
                        "y1" => y1,
                        _ => unreachable!(),
                    };
                    term = f.mul(term, f.pow_u(base, e));
                }
                acc += term;
            }
            acc
        };
        for z in [vec![3u32], vec![0, 17], vec![5, 9, 40], vec![1, 2, 3]] {
            let s = spec.pattern_syndromes(&z);
            let got = bound.evaluate(&s).unwrap();
            let (x2, x1) = (s[0], s[1]);
            assert_eq!(got[0], x1);
            assert_eq!(got[1], naive(N55_B, x1, x2), "{z:?}");
            assert_eq!(got[2], naive(N55_C, x1, x2), "{z:?}");
        }
        assert_eq!(TableId::parse("55:1,0").unwrap(), TableId::N55);
        assert!(TableId::parse("55:1").is_err());
    }
}
