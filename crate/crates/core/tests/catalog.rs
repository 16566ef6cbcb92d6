use gelp_core::catalog::{t2_lambda, t3_consecutive, t3_powers, transcriptions, CatalogError};
use gelp_core::expr::LocatorExpr;
use gelp_core::synth::{verify_locator, SyndromeTable, VerifyReport};
use gelp_core::{CodeSpec, Execution};

fn report(spec: &CodeSpec, loc: &LocatorExpr) -> VerifyReport {
    let table = SyndromeTable::build(spec, Execution::Parallel).unwrap();
    verify_locator(spec, loc, &table, Execution::Parallel).unwrap()
}

#[test]
fn lambda_examples() {
    for (code, l) in [("31:1,5", 5u64), ("51:1,9", 9)] {
        let spec = CodeSpec::parse(code).unwrap();
        let table = SyndromeTable::build(&spec, Execution::Parallel).unwrap();
        let parts = t2_lambda(&spec, l, &table).unwrap();
        assert_eq!(parts.locator.program.render(parts.wh), format!("x1^{l} + x2"));
        assert!(report(&spec, &parts.locator).ok());
    }
    let spec = CodeSpec::parse("15:1,3").unwrap();
    let table = SyndromeTable::build(&spec, Execution::Parallel).unwrap();
    assert!(matches!(t2_lambda(&spec, 4, &table), Err(CatalogError::Hypothesis(_))));
}

/// Which printed rows verify as printed.
#[test]
fn printed_rows() {
    let mut outcomes: Vec<(String, bool)> = Vec::new();
    for row in transcriptions() {
        let spec = CodeSpec::new(row.n, row.set).unwrap();
        let loc = row.locator().unwrap();
        outcomes.push((row.descriptor(), report(&spec, &loc).ok()));
    }
    let passing: Vec<&str> = outcomes.iter().filter(|o| o.1).map(|o| o.0.as_str()).collect();
    assert_eq!(passing, ["21:0,1,3,7", "23:1", "31:0,1,7,15"]);
}

#[test]
fn closed_form_failures_are_pinned() {
    let spec = CodeSpec::parse("21:1,3,5").unwrap();
    let r = report(&spec, &t3_consecutive(&spec, 1).unwrap());
    assert_eq!((r.passed, r.total), (1534, 1562));
    let spec = CodeSpec::parse("23:1").unwrap();
    let r = report(&spec, &t3_powers(&spec, 0, 8).unwrap());
    assert_eq!((r.passed, r.total), (24, 2048));
    for code in ["15:1,3,5", "31:1,3,5", "49:1,3"] {
        let spec = CodeSpec::parse(code).unwrap();
        assert!(report(&spec, &t3_powers(&spec, 0, 2).unwrap()).ok(), "{code}");
    }
}
