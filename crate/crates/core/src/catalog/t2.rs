//! Locators for codes correcting two errors.

use super::{from_text, gcd, need, require_t, CatalogError};
use crate::code::{complete_defining_set, CodeSpec};
use crate::expr::{LocatorExpr, NodeId, Program};
use crate::gf2m::mod_inverse;
use crate::synth::{synthesize_coefficient, SyndromeTable};

/// `b = (x1^3 + x3)/x1` for codes with 1 and 3 in the complete defining set.
pub fn t2_bch(spec: &CodeSpec) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 2)?;
    need(spec, &[1, 3])?;
    from_text(2, "t2-BCH", &[("x1", 1), ("x3", 3)], &["x1", "(x1^3 + x3)/x1"])
}

/// The weakly bordering locator family built on `wh = x1^l + x2`.
pub struct LambdaParts {
    pub locator: LocatorExpr,
    pub l: u64,
    /// Synthesized `b*`, exact on the syndromes of two errors.
    pub b_star: NodeId,
    pub wh: NodeId,
    /// `wh` with `x2` rewritten as `v^2`, `v` the syndrome of `l/2 mod n`.
    pub ovwh: NodeId,
    pub h: NodeId,
}

/// `z^2 + x1 z + b* (wh / ovwh)` with `l = 2^v + 1`, `gcd(l - 2, n) = 1`.
///
/// `b*` is synthesized from the syndrome table.
pub fn t2_lambda(spec: &CodeSpec, l: u64, table: &SyndromeTable) -> Result<LambdaParts, CatalogError> {
    require_t(spec, 2)?;
    if l < 3 || !(l - 1).is_power_of_two() {
        return Err(CatalogError::Hypothesis(format!("l = {l} is not 2^v + 1 with v >= 1")));
    }
    let n = spec.n() as i64;
    let g = gcd(l as i64 - 2, n);
    if g != 1 {
        return Err(CatalogError::Hypothesis(format!("gcd(l - 2, n) = {g}")));
    }
    if table.t() < 2 {
        return Err(CatalogError::Hypothesis("the syndrome table must cover two errors".into()));
    }
    let e = need(spec, &[1, l as i64])?;
    let half = (l as i64 * (n + 1) / 2).rem_euclid(n) as u32;
    let mut p = Program::new();
    let vars = [("x1", 1), ("x2", e[1]), ("v", half)];
    let wh = p.parse(&format!("x1^{l} + x2"), &vars)?;
    let ovwh = p.parse(&format!("x1^{l} + v^2"), &vars)?;
    let h = p.div(wh, ovwh);
    let b_star = synthesize_coefficient(spec, table, &mut p, 2)?;
    let b = p.mul(&[b_star, h]);
    let x1 = p.var("x1", 1);
    let locator = LocatorExpr::new(2, p, vec![x1, b], format!("t2-lambda l={l}"));
    Ok(LambdaParts {
        locator,
        l,
        b_star,
        wh,
        ovwh,
        h,
    })
}

/// `b = ((x2 x4 + x5)/x3)^(l+)` with `x1..x5` the syndromes of
/// `1, l, s-2l, s-l, s` and `l+` the inverse of `l` mod n.
pub fn t2_sl(spec: &CodeSpec, l: i64, s: i64) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 2)?;
    let n = spec.n() as i64;
    for (what, v) in [("l", l), ("s - 2l", s - 2 * l)] {
        let g = gcd(v.rem_euclid(n), n);
        if g != 1 {
            return Err(CatalogError::Hypothesis(format!("gcd({what}, n) = {g}")));
        }
    }
    let e = need(spec, &[1, l, s - 2 * l, s - l, s])?;
    let lp = mod_inverse(l.rem_euclid(n), n)?;
    let vars = [("x1", e[0]), ("x2", e[1]), ("x3", e[2]), ("x4", e[3]), ("x5", e[4])];
    let base = "(x2 x4 + x5)/x3";
    let b = if lp == 1 {
        base.to_string()
    } else {
        format!("({base})^{lp}")
    };
    from_text(2, &format!("t2-sl l={l} s={s}"), &vars, &["x1", &b])
}

/// `b = (x1/x3^l) (x4 x1^2 + 1)/(x4 x2 + 1)` with `x1..x4` the syndromes of
/// `1, 2, (n-1)/l, n-2` and `l` a power of two.
pub fn t2_one_case(spec: &CodeSpec, l: u64) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 2)?;
    let n = spec.n() as u64;
    if !l.is_power_of_two() {
        return Err(CatalogError::Hypothesis(format!("l = {l} is not a power of 2")));
    }
    if n.is_multiple_of(3) {
        return Err(CatalogError::Hypothesis("3 divides n".into()));
    }
    if l == n - 1 || !(n - 1).is_multiple_of(l) {
        return Err(CatalogError::Hypothesis(format!("(n - 1)/l is not a proper integer for l = {l}")));
    }
    let e = need(spec, &[1, 2, ((n - 1) / l) as i64, n as i64 - 2])?;
    let vars = [("x1", e[0]), ("x2", e[1]), ("x3", e[2]), ("x4", e[3])];
    let b = format!("x1/x3^{l} ((x4 x1^2 + 1)/(x4 x2 + 1))");
    from_text(2, &format!("t2-one-case l={l}"), &vars, &["x1", &b])
}

/// `b = (x1^s + x4)/(x2 + x1 x3)` with `x1..x4` the syndromes of
/// `1, 2^j, 2^j - 1, 2^j + 2`. Only `i = 0` yields `b` explicitly.
pub fn t2_power_family(spec: &CodeSpec, i: u32, j: u32) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 2)?;
    if i != 0 {
        return Err(CatalogError::Hypothesis(format!(
            "i = {i}: only the implicit relation holds, use check_power_relation"
        )));
    }
    if !(2..=40).contains(&j) {
        return Err(CatalogError::Hypothesis(format!("j = {j} outside 2..=40")));
    }
    let n = spec.n() as i64;
    let l = 1i64 << j;
    let (r, s) = (l - 1, l + 2);
    let g = gcd(r - 1, n);
    if g != 1 {
        return Err(CatalogError::Hypothesis(format!("gcd(2^j - 2, n) = {g}")));
    }
    let e = need(spec, &[1, l, r, s])?;
    let vars = [("x1", e[0]), ("x2", e[1]), ("x3", e[2]), ("x4", e[3])];
    let b = format!("(x1^{s} + x4)/(x2 + x1 x3)");
    from_text(2, &format!("t2-power j={j}"), &vars, &["x1", &b])
}

/// Checks `(x2 + x1^(l-r) x3) (z1 z2)^(l-r) = x1^s + x4` on every pair of
/// error locations, with `l = 2^j`, `r = 2^j - 2^i`, `s = 2^j + 2^(i+1)`.
/// Power sums are computed directly, so the defining set is irrelevant.
pub fn check_power_relation(spec: &CodeSpec, i: u32, j: u32) -> Result<bool, CatalogError> {
    if j < i + 2 || j > 40 {
        return Err(CatalogError::Hypothesis(format!("need j >= i + 2, got i = {i}, j = {j}")));
    }
    let f = spec.field();
    let n = spec.n() as u64;
    let (l, r, s) = (1u64 << j, (1u64 << j) - (1u64 << i), (1u64 << j) + (1u64 << (i + 1)));
    for z1 in 0..spec.n() {
        for z2 in z1 + 1..spec.n() {
            let pos = [z1, z2];
            let x = |e: u64| spec.power_sum(&pos, (e % n) as u32);
            let (x1, x2, x3, x4) = (x(1), x(l), x(r), x(s));
            let prod = f.mul(spec.alpha_pow(z1 as u64), spec.alpha_pow(z2 as u64));
            let lhs = f.mul(x2 + f.mul(f.pow_u(x1, l - r), x3), f.pow_u(prod, l - r));
            let rhs = f.pow_u(x1, s) + x4;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The bordering expression `1 + x0` for codes with 0 in the defining set.
pub fn one_plus_x0(spec: &CodeSpec, p: &mut Program) -> Result<NodeId, CatalogError> {
    need(spec, &[0])?;
    Ok(p.parse("1 + x0", &[("x0", 0)])?)
}

/// The code of length 51 with defining set {0, 1, 5}:
/// `b = [(x1^10 + x4)/(x1 (x1^7 + x3)) + x1^2 F(x1^51)^2/F(x2^51)] (1 + x0)`
/// with `F(y) = y^4 + y^3 + y^2 + y + 1` and `x1..x4` the syndromes of
/// `1, 2, 7, 10`. The factor `1 + x0` clears the second summand on single
/// errors, where `x1^51 = 1` as well.
pub fn t2_exceptional_e(spec: &CodeSpec) -> Result<LocatorExpr, CatalogError> {
    require_t(spec, 2)?;
    let want = complete_defining_set(51, &[0, 1, 5]);
    if spec.n() != 51 || !want.iter().all(|&e| spec.contains(e)) {
        return Err(CatalogError::Hypothesis(
            "needs n = 51 and the cosets of 0, 1, 5 in the defining set".into(),
        ));
    }
    let big_f = |y: &str| format!("(({y})^4 + ({y})^3 + ({y})^2 + {y} + 1)");
    let b = format!(
        "((x1^10 + x4)/(x1 (x1^7 + x3)) + x1^2 ({}^2/{})) (1 + x0)",
        big_f("x1^51"),
        big_f("x2^51")
    );
    let vars = [("x0", 0), ("x1", 1), ("x2", 2), ("x3", 7), ("x4", 10)];
    from_text(2, "t2-exceptional(e)", &vars, &["x1", &b])
}
