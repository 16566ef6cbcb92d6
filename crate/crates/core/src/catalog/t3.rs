//! Locators for codes correcting three errors. Variables are named `x{e}`
//! after the exponent whose syndrome they hold.

use super::{from_text, gcd, need, require_t, CatalogError};
use crate::code::CodeSpec;
use crate::expr::LocatorExpr;
use crate::gf2m::mod_inverse;

fn named(exps: &[u32]) -> Vec<(String, u32)> {
    let mut out: Vec<(String, u32)> = Vec::new();
    for &e in exps {
        if !out.iter().any(|(_, x)| *x == e) {
            out.push((format!("x{e}"), e));
        }
    }
    out
}

fn text_locator(label: &str, exps: &[u32], b: &str, c: &str) -> Result<LocatorExpr, CatalogError> {
    let owned = named(exps);
    let vars: Vec<(&str, u32)> = owned.iter().map(|(n, e)| (n.as_str(), *e)).collect();
    from_text(3, label, &vars, &["x1", b, c])
}

/// Newton's identities for the BCH case, `{1, 3, 5}` in the defining set.
pub fn t3_bch(spec: &CodeSpec) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 3)?;
    need(spec, &[1, 3, 5])?;
    text_locator(
        "t3-BCH",
        &[1, 3, 5],
        "(x1^2 x3 + x5)/(x1^3 + x3)",
        "(x1^3 x3 + x1^6 + x3^2 + x1 x5)/(x1^3 + x3)",
    )
}

/// Five consecutive syndromes `i, ..., i+4` plus that of 1:
/// `b = (x_i U + x_{i+1} V)/W`, `c = (x_{i+1} U + x_{i+2} V)/W` with
/// `U = x_{i+4} + x1 x_{i+3}`, `V = x_{i+3} + x1 x_{i+2}`,
/// `W = x_{i+1}^2 + x_i x_{i+2}`.
pub fn t3_consecutive(spec: &CodeSpec, i: u32) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 3)?;
    let n = spec.n();
    if i.is_multiple_of(n) || (i + 2).is_multiple_of(n) {
        return Err(CatalogError::Hypothesis(format!("i = {i}: i and i + 2 must be nonzero mod n")));
    }
    let i = i as i64;
    let e = need(spec, &[1, i, i + 1, i + 2, i + 3, i + 4])?;
    let x = |k: usize| format!("x{}", e[k]);
    let u = format!("({} + x1 {})", x(5), x(4));
    let v = format!("({} + x1 {})", x(4), x(3));
    let w = format!("({}^2 + {} {})", x(2), x(1), x(3));
    let b = format!("({} {u} + {} {v})/{w}", x(1), x(2));
    let c = format!("({} {u} + {} {v})/{w}", x(2), x(3));
    text_locator(&format!("t3-consecutive i={i}"), &e, &b, &c)
}

/// Syndromes of `1, 3, 2^i + 2^j, 2^j - 2^i, 2^j - 2^(i+1)` with `j >= i + 2`:
/// `b = ((x_{2^j-2^(i+1)} U + V)/W)^e`, `c = ((x_{2^j-2^i} U + x1^(2^i) V)/W)^e`
/// with `U = (x1^3 + x3)^(2^i)`, `V = x1^(2^i+2^j) + x_{2^i+2^j}`,
/// `W = x_{2^j-2^i} + x1^(2^i) x_{2^j-2^(i+1)}` and `e` the inverse of `2^i`
/// modulo `2^m - 1`.
pub fn t3_powers(spec: &CodeSpec, i: u32, j: u32) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 3)?;
    if j < i + 2 || j > 40 {
        return Err(CatalogError::Hypothesis(format!("need i + 2 <= j <= 40, got i = {i}, j = {j}")));
    }
    let (pi, pj) = (1i64 << i, 1i64 << j);
    let e = need(spec, &[1, 3, pi + pj, pj - pi, pj - 2 * pi])?;
    let order = spec.field().order() as i64;
    let inv = mod_inverse(pi % order, order)?;
    let x = |k: usize| format!("x{}", e[k]);
    let pw = |s: &str, k: i64| if k == 1 { s.to_string() } else { format!("{s}^{k}") };
    let u = pw("(x1^3 + x3)", pi);
    let v = format!("(x1^{} + {})", pi + pj, x(2));
    let w = format!("({} + {} {})", x(3), pw("x1", pi), x(4));
    let b = pw(&format!("(({} {u} + {v})/{w})", x(4)), inv);
    let c = pw(&format!("(({} {u} + {} {v})/{w})", x(3), pw("x1", pi)), inv);
    text_locator(&format!("t3-powers i={i} j={j}"), &e, &b, &c)
}

/// `{1, 3, 9}` in the defining set and `gcd(n, 3) = 1`:
/// `D = (x9 + x1^9)/(x3 + x1^3) + (x1^3 + x3)^2`, `h = (x1^3 + x3)/(x1 x2 + x3)`,
/// `b = (x1^2 + D^l) h`, `c = (x3 + x1 D^l) h` with `l` the inverse of 3
/// modulo `2^m - 1` and `x2 = x1^2`.
pub fn t3_139(spec: &CodeSpec) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 3)?;
    if spec.n().is_multiple_of(3) {
        return Err(CatalogError::Hypothesis("3 divides n".into()));
    }
    need(spec, &[1, 2, 3, 9])?;
    let order = spec.field().order() as i64;
    if gcd(3, order) != 1 {
        return Err(CatalogError::Hypothesis(format!("3 divides 2^m - 1 = {order}")));
    }
    let l = mod_inverse(3, order)?;
    let d = "((x9 + x1^9)/(x3 + x1^3) + (x1^3 + x3)^2)";
    let h = "((x1^3 + x3)/(x1 x2 + x3))";
    text_locator(
        &format!("t3-139 l*={l}"),
        &[1, 2, 3, 9],
        &format!("(x1^2 + {d}^{l}) {h}"),
        &format!("(x3 + x1 {d}^{l}) {h}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Execution;
    use crate::synth::{verify_locator, SyndromeTable};

    fn verified(spec: &CodeSpec, loc: &LocatorExpr) -> bool {
        let table = SyndromeTable::build(spec, Execution::Parallel).unwrap();
        let r = verify_locator(spec, loc, &table, Execution::Parallel).unwrap();
        r.ok()
    }

    #[test]
    fn bch_15() {
        let spec = CodeSpec::new(15, &[1, 3, 5]).unwrap();
        let loc = t3_bch(&spec).unwrap();
        assert!(verified(&spec, &loc));
        let bound = loc.bind(&spec).unwrap();
        let zero = vec![crate::gf2m::Gf::ZERO; 3];
        assert_eq!(bound.evaluate(&zero).unwrap(), zero);
    }

    #[test]
    fn powers_21_matches_literal_shape() {
        let spec = CodeSpec::new(21, &[1, 3, 7, 9]).unwrap();
        let loc = t3_powers(&spec, 0, 3).unwrap();
        assert_eq!(
            loc.program.render(loc.coeffs[1]),
            "(x6*(x1^3 + x3) + x1^9 + x9)/(x7 + x1*x6)"
        );
        // W vanishes on some weight-3 syndromes, where 0/0 = 0 takes over
        let table = SyndromeTable::build(&spec, Execution::Parallel).unwrap();
        let r = verify_locator(&spec, &loc, &table, Execution::Parallel).unwrap();
        assert_eq!(r.total - r.passed, 49);
        for f in &r.failures {
            assert_eq!(f.positions.len(), 3);
            let got = f.got.as_ref().unwrap();
            assert!(got[1].is_zero() && got[2].is_zero());
        }
        assert!(matches!(t3_powers(&spec, 0, 1), Err(CatalogError::Hypothesis(_))));
    }

    #[test]
    fn golay_139() {
        let spec = CodeSpec::new(23, &[1]).unwrap();
        let loc = t3_139(&spec).unwrap();
        assert!(loc.label.contains("1365"));
        assert!(verified(&spec, &loc));
        let bound = loc.bind(&spec).unwrap();
        for z in 0..23 {
            let v = bound.evaluate(&spec.pattern_syndromes(&[z])).unwrap();
            assert_eq!(v[0], spec.alpha_pow(z as u64));
            assert!(v[1].is_zero() && v[2].is_zero());
        }
        assert!(matches!(t3_139(&CodeSpec::new(21, &[1, 3, 5]).unwrap()), Err(CatalogError::Hypothesis(_))));
    }

    #[test]
    fn consecutive_runs() {
        let spec = CodeSpec::new(31, &[0, 1, 7, 15]).unwrap();
        let loc = t3_consecutive(&spec, 27).unwrap();
        assert!(verified(&spec, &loc));
        assert!(matches!(t3_consecutive(&spec, 29), Err(CatalogError::Hypothesis(_))));
        let golay = CodeSpec::new(23, &[1]).unwrap();
        assert!((1..23).all(|i| t3_consecutive(&golay, i).is_err()));
    }
}
