use serde_json::json;

use super::gv::{root_system, PositiveClass};
use super::nekrasov::{sqrt_y, total_q, zr_charts};
use super::verify::{Check, Report, Status};
use super::Family;
use crate::error::{Error, Result};
use crate::exactalg::{
    bracket_class, images, q_expand, BracketFraction, BracketProduct, EqualityMode, ExpArgument, KClass, Monomial,
    TruncatedSeries, S0, T1, T2, T4, Y,
};

/// `P_{1,beta}(t4)`: the GV invariant at `y = t4`.
pub fn gv_at_t4(c: &PositiveClass) -> Result<BracketProduct> {
    c.gv.substitute(&images(&[(Y, Monomial::var(T4))]))?.cy_reduce()
}

/// `-P_{1,beta}(t4) [y] Qm / ([t4][y^{1/2} q][y^{1/2} q^{-1}])`.
pub fn pt_term(c: &PositiveClass, qm: Monomial, q: Monomial) -> Result<BracketProduct> {
    let h = sqrt_y();
    let rest = BracketProduct::new(-1, qm, vec![Monomial::var(Y)], vec![Monomial::var(T4), h * q, h * q.inv()])?;
    gv_at_t4(c)?.mul(&rest).cy_reduce()
}

/// PT argument in the orbifold variables; `inverse` uses `Q^{-beta}`.
pub fn pt_argument(family: Family, signs: &[i8], inverse: bool) -> Result<ExpArgument> {
    let data = root_system(family);
    if signs.len() != data.classes.len() {
        return Err(Error::Invalid(format!("{} signs for {} classes", signs.len(), data.classes.len())));
    }
    let q = total_q(family.nvars());
    let mut a = ExpArgument::default();
    for (c, &s) in data.classes.iter().zip(signs) {
        let qm = if inverse { c.q.inv() } else { c.q };
        a.push(pt_term(c, qm, q)?.with_sign(s));
    }
    Ok(a)
}

/// Coefficients of `Q^beta q^0` and `Q^beta q^1` of the PT argument of one
/// class, expanded in separate variables `Q` and `q`.
pub fn pt_low_coefficients(c: &PositiveClass) -> Result<(BracketFraction, BracketFraction)> {
    let bq = Monomial::from_series_exponents(&[1, 0]);
    let q = Monomial::from_series_exponents(&[0, 1]);
    let s = q_expand(&pt_term(c, bq, q)?, 2, 2)?.to_exact()?;
    Ok((s.coeff(&[1, 0]), s.coeff(&[1, 1])))
}

/// Low-degree PT coefficients of every positive class against `0` and
/// `P_{1,beta}(t4)[y]/[t4]`.
pub fn pt_low_degree_report(family: Family) -> Result<Report> {
    let data = root_system(family);
    let mut rep = Report::new("pt", &family.action().name().to_string(), 1, EqualityMode::Exact);
    for c in &data.classes {
        let expected = gv_at_t4(c)?.mul(&BracketProduct::new(1, Monomial::ONE, vec![Monomial::var(Y)], vec![Monomial::var(T4)])?);
        let expected = BracketFraction::from_bracket_product(&expected.cy_reduce()?)?;
        rep.checks.push(Check::timed(format!("{}/n=0", c.name), || Ok(pt_low_coefficients(c)?.0.is_zero())));
        rep.checks.push(Check::timed(format!("{}/n=1", c.name), || Ok(pt_low_coefficients(c)?.1.equals(&expected))));
    }
    Ok(rep)
}

/// One-leg PT vertex argument `[y t1]/[t1] q` with `t1 -> a`.
fn leg_argument(a: Monomial) -> Result<BracketProduct> {
    BracketProduct::new(1, Monomial::var(S0), vec![Monomial::var(Y) * a], vec![a])?.cy_reduce()
}

/// Generating series of PT invariants of the exceptional curve `beta_k` of
/// the `A_{r-1}` resolution, glued from two one-leg vertices and the edge of
/// normal bundle `O(-2) + O + O`.
pub fn pt_irreducible_series(r: u32, k: u32, order: u32) -> Result<TruncatedSeries<BracketFraction>> {
    if r < 2 || k == 0 || k >= r {
        return Err(Error::Invalid(format!("curve {k} of A_{}", r as i64 - 1)));
    }
    let charts = zr_charts(r);
    let left = &charts[(k - 1) as usize];
    let right = &charts[k as usize];
    // The curve direction is t2 in the left chart and t1 in the right one.
    let mut arg = ExpArgument::default();
    arg.push(leg_argument(left[1].cy_reduce())?);
    arg.push(leg_argument(right[0].cy_reduce())?);
    let vertices = arg.plethystic_exp_exact(1, order)?;
    // edge term e~ = t3^{-1} - (t1t2)^{-1} + (t1t2t3)^{-1} - y seen from the left chart
    let sub = images(&[(T1, left[1]), (T2, left[0])]);
    let e = KClass::from_terms([
        (Monomial::t(0, 0, -1, 0), 1),
        (Monomial::t(-1, -1, 0, 0), -1),
        (Monomial::t(-1, -1, -1, 0), 1),
        (Monomial::var(Y), -1),
    ])
    .substitute(&sub)?
    .cy_reduce();
    let edge = bracket_class(&e.scale(-1))?.neg().mul_monomial(&Monomial::var(S0));
    let edge = q_expand(&edge, 1, order)?.to_exact()?;
    edge.mul(&vertices)
}

/// `[t1t2]/[t3] [y]/([t4][y^{1/2}q][y^{1/2}q^{-1}])`.
pub fn pt_irreducible_closed(order: u32) -> Result<TruncatedSeries<BracketFraction>> {
    let h = sqrt_y();
    let q = Monomial::var(S0);
    let bp = BracketProduct::new(
        1,
        Monomial::ONE,
        vec![Monomial::t(1, 1, 0, 0), Monomial::var(Y)],
        vec![Monomial::t(0, 0, 1, 0), Monomial::var(T4), h * q, h * q.inv()],
    )?
    .cy_reduce()?;
    q_expand(&bp, 1, order)?.to_exact()
}

pub fn pt_irreducible_report(r: u32, order: u32) -> Result<Report> {
    let mut rep = Report::new("pt-irreducible", &format!("zr:{r}"), order, EqualityMode::Exact);
    let closed = pt_irreducible_closed(order)?;
    for k in 1..r {
        let s = pt_irreducible_series(r, k, order)?;
        for n in 0..=order as i32 {
            let ok = s.coeff(&[n]).equals(&closed.coeff(&[n]));
            rep.checks.push(Check::new(format!("b{k}/q^{n}"), Status::from_bool(ok)));
        }
    }
    rep.extra.insert("curves".into(), json!(r - 1));
    Ok(rep)
}
