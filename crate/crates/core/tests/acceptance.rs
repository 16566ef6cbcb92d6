//! Acceptance matrix. Prints one PASS/FAIL line per criterion (with indented
//! detail lines) and exits nonzero when a criterion outside
//! [`KNOWN_UNATTAINABLE`] fails.

use gelp_core::catalog::{
    all_catalog, build, load_table_entry, one_plus_x0, t2_lambda, t2_sl, Built, DataSource,
    Family, TableId,
};
use gelp_core::code::binomial;
use gelp_core::decode::{exhaustive_equivalence, oracle_decode, Status};
use gelp_core::density::{
    density_report, locator_representation, sparsity_check, DensityReport, SparsityVerdict, DEFAULT_BUDGET,
};
use gelp_core::expr::{LocatorExpr, Program};
use gelp_core::synth::{
    check_bordering, check_bordering_on, check_weakly_bordering, elementary_symmetric, interpolate_univariate,
    structure_check, SyndromeTable,
};
use gelp_core::{CodeSpec, Execution, Gf};
use std::time::{Duration, Instant};

const T2_LIMIT: Duration = Duration::from_secs(5);
const T3_LIMIT: Duration = Duration::from_secs(60);
const EPSILON: u32 = 3;
const SL_CLAIMED_DENSITY: usize = 6;

/// Sub-criteria that fail for reasons recorded in the decisions ledger.
const KNOWN_UNATTAINABLE: &[&str] = &["5a", "7b", "8a=", "8b*"];

const EXEC: Execution = Execution::Parallel;

struct Matrix {
    failed: Vec<String>,
    known: Vec<String>,
}

impl Matrix {
    fn line(&mut self, id: &str, ok: bool, what: &str, detail: String) {
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let mark = match (ok, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("[{mark}] {id:<4} {what}: {detail}");
        if !ok {
            if known {
                self.known.push(id.to_string());
            } else {
                self.failed.push(id.to_string());
            }
        }
    }
}

fn detail(text: String) {
    println!("         {text}");
}

fn spec(code: &str) -> CodeSpec {
    CodeSpec::parse(code).unwrap_or_else(|e| panic!("{code}: {e}"))
}

fn table(spec: &CodeSpec) -> SyndromeTable {
    SyndromeTable::build(spec, EXEC).unwrap_or_else(|e| panic!("{spec:?}: {e}"))
}

fn built(spec: &CodeSpec, table: &SyndromeTable) -> Built {
    build(spec, table, EXEC, &DataSource::default()).unwrap_or_else(|e| panic!("{spec:?}: {e}"))
}

fn exhaustive(m: &mut Matrix, id: &str, what: &str, codes: &[&str], limit: Duration, closed_form: bool) {
    let mut ok = true;
    let mut patterns = 0;
    for &code in codes {
        let start = Instant::now();
        let s = spec(code);
        let tab = table(&s);
        let b = built(&s, &tab);
        let stats = exhaustive_equivalence(&s, &b.locator, &tab, EXEC).expect("decodable");
        let elapsed = start.elapsed();
        let expected: u64 = (0..=s.t() as u64).map(|w| binomial(s.n() as u64, w)).sum();
        let pass = stats.all_pass()
            && stats.patterns as u64 == expected
            && elapsed < limit
            && (!closed_form || !b.fallback);
        ok &= pass;
        patterns += stats.patterns;
        detail(format!(
            "{code:<12} {:<20} {}/{} patterns, {:.2?}{}{}",
            b.family,
            stats.passed,
            stats.patterns,
            elapsed,
            if b.fallback { ", synthesized fallback" } else { "" },
            if pass { "" } else { "  <-- FAIL" }
        ));
    }
    m.line(id, ok, what, format!("{} codes, {patterns} patterns", codes.len()));
}

fn t3_table_codes() -> Vec<String> {
    all_catalog()
        .into_iter()
        .filter(|e| e.sources.contains(&"t3-case-1"))
        .map(|e| e.code)
        .collect()
}

fn criterion_1(m: &mut Matrix) {
    let codes = ["31:1,15", "31:1,5", "45:1,21", "51:1,9", "51:0,1,5"];
    exhaustive(m, "1", "exceptional t=2 decode == oracle (< 5 s each)", &codes, T2_LIMIT, true);
}

fn criterion_2(m: &mut Matrix) {
    let owned = t3_table_codes();
    let codes: Vec<&str> = owned.iter().map(String::as_str).collect();
    exhaustive(m, "2", "t=3 decode == oracle (< 60 s each)", &codes, T3_LIMIT, false);
}

fn criterion_3(m: &mut Matrix) {
    let s = spec("23:1");
    let tab = table(&s);
    let words = 1usize << 23;
    let uncorrectable: usize = EXEC
        .map_range(1 << 10, |chunk| {
            let lo = chunk << 13;
            (lo..lo + (1 << 13))
                .filter(|&w| oracle_decode(&s, &tab, w as u128).unwrap().status == Status::DetectedUncorrectable)
                .count()
        })
        .into_iter()
        .sum();
    m.line(
        "3",
        tab.len() == 2048 && uncorrectable == 0,
        "Golay table is perfect",
        format!("{} entries, {uncorrectable} of {words} words uncorrectable", tab.len()),
    );
}

fn criterion_4(m: &mut Matrix) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for e in all_catalog() {
        let Ok(s) = e.spec() else { continue };
        if s.t() != 3 || !s.contains(3) {
            continue;
        }
        let f = s.field();
        let tab = table(&s);
        let broken = tab
            .entries()
            .iter()
            .filter(|e| {
                let sigma = elementary_symmetric(&s, &e.positions, 3);
                let (x1, x3) = (s.power_sum(&e.positions, 1), s.power_sum(&e.positions, 3));
                sigma[2] != f.pow_u(x1, 3) + x3 + f.mul(x1, sigma[1])
            })
            .count();
        checked += tab.len();
        if broken > 0 {
            bad.push(format!("{}: {broken}", e.code));
        }
    }
    m.line(
        "4",
        bad.is_empty(),
        "c = x1^3 + x3 + x1 b on every correctable syndrome",
        format!("{checked} syndromes checked, violations {bad:?}"),
    );
}

fn criterion_5(m: &mut Matrix) {
    let mut strict = Vec::new();
    let mut restricted = Vec::new();
    for e in all_catalog() {
        let Ok(s) = e.spec() else { continue };
        if !s.contains(0) || s.t() < 2 {
            continue;
        }
        let tab = SyndromeTable::build_for(&s, 2, EXEC).unwrap();
        let mut p = Program::new();
        let h = one_plus_x0(&s, &mut p).unwrap();
        strict.push((e.code.clone(), check_bordering(&s, &p, h, &tab, EXEC).unwrap()));
        restricted.push((e.code, check_bordering_on(&s, &p, h, &tab, &[1, 2], EXEC).unwrap()));
    }
    let fails = |v: &[(String, bool)]| v.iter().filter(|(_, ok)| !ok).map(|(c, _)| c.clone()).collect::<Vec<_>>();
    m.line(
        "5a",
        fails(&strict).is_empty(),
        "(1 + x0) bordering on V0, V1, V2",
        format!("{} codes, failing {:?} (1 + x0 = 1 at the zero syndrome)", strict.len(), fails(&strict)),
    );
    m.line(
        "5a'",
        fails(&restricted).is_empty(),
        "(1 + x0) bordering on V1, V2",
        format!("{} codes, failing {:?}", restricted.len(), fails(&restricted)),
    );
    let mut weak = Vec::new();
    let mut quotient = Vec::new();
    for (code, l) in [("31:1,5", 5), ("51:1,9", 9)] {
        let s = spec(code);
        let tab = table(&s);
        let parts = t2_lambda(&s, l, &tab).unwrap();
        let p = &parts.locator.program;
        weak.push((code, check_weakly_bordering(&s, p, parts.wh, &tab, EXEC).unwrap()));
        quotient.push((code, check_bordering(&s, p, parts.h, &tab, EXEC).unwrap()));
    }
    m.line(
        "5b",
        weak.iter().all(|w| w.1),
        "wh = x1^l + x2 weakly bordering",
        format!("{weak:?}"),
    );
    m.line(
        "5c",
        quotient.iter().all(|w| w.1),
        "wh/ovwh bordering",
        format!("{quotient:?}"),
    );
}

fn criterion_6(m: &mut Matrix) {
    let s = spec("51:0,1,5");
    let f = s.field();
    let mut patterns = 0;
    let mut mismatches = 0;
    for a in 0..51 {
        for b in a + 1..51 {
            let pos = [a, b];
            let x1 = s.power_sum(&pos, 1);
            let lhs = (f.pow_u(x1, 7) + s.power_sum(&pos, 7)).is_zero();
            let rhs = f.pow_u(x1, 51) == Gf::ONE;
            patterns += 1;
            if lhs != rhs {
                mismatches += 1;
            }
        }
    }
    m.line(
        "6",
        patterns == 1275 && mismatches == 0,
        "n=51: x1^7 + x3 = 0 iff x1^51 = 1 on weight 2",
        format!("{patterns} patterns, {mismatches} mismatches"),
    );
}

fn criterion_7(m: &mut Matrix) {
    let mut ok = true;
    for code in ["15:1", "31:1,5", "23:1"] {
        let s = spec(code);
        let tab = table(&s);
        for k in 1..=s.t() as usize {
            let r = structure_check(&s, k, s.n() as u64, &tab).unwrap();
            ok &= r.ok();
            detail(format!(
                "{code:<8} sigma_{k}: {} classes, {} tail entries, {} violations",
                r.classes,
                r.tail_entries,
                r.violations.len()
            ));
        }
    }
    m.line("7a", ok, "structure check with lambda = n", "15:1, 31:1,5, 23:1".into());
    let s = spec("15:1");
    let outcome = match SyndromeTable::build_for(&s, 2, EXEC) {
        Err(e) => (false, format!("15:1 has t = {}; no two-error table: {e}", s.t())),
        Ok(tab) => match interpolate_univariate(&s, &tab, 2) {
            Err(e) => (false, e.to_string()),
            Ok(i) => {
                let shaped = i.reduced.terms.keys().all(|&e| e % 15 == 2);
                (shaped, format!("{} terms, exponents {:?}", i.reduced.term_count(), i.reduced.terms.keys()))
            }
        },
    };
    m.line("7b", outcome.0, "b* on 15:1 factors as A(x1^15) x1^2", outcome.1);
}

fn density_of(code: &str, loc: &LocatorExpr) -> (DensityReport, SparsityVerdict) {
    let s = spec(code);
    let r = density_report(&s, loc, DEFAULT_BUDGET);
    let v = sparsity_check(&s, &r, EPSILON);
    (r, v)
}

fn criterion_8(m: &mut Matrix, catalog: &[(String, Built)]) {
    let s = spec("45:1,21");
    let sl = t2_sl(&s, 2, 23).unwrap();
    let rep = locator_representation(s.field(), &sl, false, DEFAULT_BUDGET).unwrap();
    let d = rep.density();
    m.line(
        "8a=",
        d == SL_CLAIMED_DENSITY,
        "sl representation density equals 6",
        format!("|F| = {}, {} inner fractions, density {d}", rep.outer.len(), rep.inner.len()),
    );
    m.line("8a", d <= SL_CLAIMED_DENSITY, "sl representation density at most 6", format!("density {d}"));

    let mut over = Vec::new();
    let mut lookup = Vec::new();
    let mut flagged = Vec::new();
    for (code, b) in catalog {
        let (r, v) = density_of(code, &b.locator);
        match v.sparse {
            Some(true) => {}
            Some(false) => over.push(code.clone()),
            None => lookup.push(code.clone()),
        }
        if !v.over_limit.is_empty() {
            flagged.push(format!("{code} {:?}", v.over_limit));
        }
        detail(format!(
            "{code:<12} {:<24} density {:>8} bound {:>7} totals {:?}",
            r.label,
            r.functional_density_upper.map_or("-".into(), |d| d.to_string()),
            v.bound,
            r.coefficients.iter().map(|c| c.monomial_total).collect::<Vec<_>>()
        ));
    }
    m.line(
        "8b",
        over.is_empty(),
        "functional density upper <= n^3 where a polynomial form exists",
        format!("{} locators, over the bound {over:?}", catalog.len() - lookup.len()),
    );
    m.line(
        "8b*",
        lookup.is_empty(),
        "every catalog locator has a polynomial form",
        format!("lookup-backed, no density computed: {lookup:?}"),
    );

    let n55 = load_table_entry(TableId::N55, &DataSource::default()).unwrap();
    let (r, v) = density_of("55:0,1", &n55);
    let totals: Vec<String> = r
        .coefficients
        .iter()
        .map(|c| format!("{}={}", c.name, c.monomial_total.map_or("-".into(), |t| t.to_string())))
        .collect();
    detail(format!("t=3 monomial totals over 5n flagged: {flagged:?}"));
    m.line(
        "8c",
        r.coefficients.iter().all(|c| c.monomial_total.is_some()) && v.monomial_limit == Some(275),
        "n=55 data entry monomial totals reported against 5n = 275",
        format!("{} (over: {:?})", totals.join(" "), v.over_limit),
    );
}

fn criterion_9(m: &mut Matrix) {
    let mut ok = true;
    let mut seen = Vec::new();
    for e in all_catalog() {
        let Ok(s) = e.spec() else { continue };
        if s.defining_set() != [1] || s.n() > 31 {
            continue;
        }
        let tab = table(&s);
        for k in 1..=s.t() as usize {
            let i = interpolate_univariate(&s, &tab, k).unwrap();
            ok &= i.within_bound();
            detail(format!(
                "{:<6} sigma_{k}: {} terms, bound {}",
                e.code,
                i.reduced.term_count(),
                i.bound
            ));
        }
        seen.push(e.code);
    }
    m.line("9", ok && !seen.is_empty(), "univariate term counts within bound", format!("{seen:?}"));
}

fn criterion_10(m: &mut Matrix, catalog: &[(String, Built)]) {
    // one verified representative per family
    let mut reps: Vec<(Family, &str, &LocatorExpr)> = Vec::new();
    for (code, b) in catalog {
        if !reps.iter().any(|r| r.0 == b.family) {
            reps.push((b.family, code, &b.locator));
        }
    }
    let mut ok = true;
    let mut survivors = Vec::new();
    for (family, code, loc) in &reps {
        let s = spec(code);
        let tab = table(&s);
        let clean = exhaustive_equivalence(&s, loc, &tab, EXEC).unwrap();
        let mut caught = Vec::new();
        for k in 0..loc.t as usize {
            let stats = exhaustive_equivalence(&s, &loc.mutated(k), &tab, EXEC).unwrap();
            caught.push(stats.failed);
            if stats.failed == 0 {
                survivors.push(format!("{family} coefficient {k}"));
            }
        }
        ok &= clean.all_pass() && caught.iter().all(|&c| c > 0);
        detail(format!("{:<20} {code:<10} failures per mutated coefficient {caught:?}", family.to_string()));
    }
    m.line(
        "10",
        ok,
        "every single-coefficient mutation is caught",
        format!("{} families, surviving mutants {survivors:?}", reps.len()),
    );
}

fn main() {
    let mut m = Matrix {
        failed: Vec::new(),
        known: Vec::new(),
    };
    criterion_1(&mut m);
    criterion_2(&mut m);
    criterion_3(&mut m);
    criterion_4(&mut m);
    criterion_5(&mut m);
    criterion_6(&mut m);
    criterion_7(&mut m);

    let catalog: Vec<(String, Built)> = all_catalog()
        .into_iter()
        .filter_map(|e| {
            let s = e.spec().ok()?;
            let tab = table(&s);
            Some((e.code, built(&s, &tab)))
        })
        .collect();
    criterion_8(&mut m, &catalog);
    criterion_9(&mut m);
    criterion_10(&mut m, &catalog);

    println!(
        "acceptance: {} unexpected failures {:?}, {} known {:?}",
        m.failed.len(),
        m.failed,
        m.known.len(),
        m.known
    );
    if !m.failed.is_empty() {
        std::process::exit(1);
    }
}
