use std::path::Path;

use serde_json::json;

use super::macmahon::{cohomological_closed_form, insertion_free_closed_form};
use super::nekrasov::build_orbifold_argument_3d;
use super::verify::{exponents_up_to, fmt_exponent, modular_compare, Check, PointPair, Report, Status};
use super::Family;
use crate::error::Result;
use crate::exactalg::{Coeff, EqualityMode, TruncatedSeries};
use crate::parallel::Parallelism;
use crate::partitions::{partitions_up_to, sign_exponent, GroupAction, SolidPartition};
use crate::vertex::{
    cohomological_map, collect_contributions, contribution, dimensional_reduce, effective_action,
    insertion_free_contribution, m_degree, m_leading, validate_cohomological_leading, CohomFraction, Contributions,
    Reduced, SignRule,
};

/// Largest size for which per-partition limit checks run.
pub const PER_PARTITION_MAX: usize = 3;

fn compare_exact<C: Coeff>(
    a: &TruncatedSeries<C>,
    b: &TruncatedSeries<C>,
    names: &[String],
    eq: impl Fn(&C, &C) -> bool,
) -> Vec<Check> {
    let n = a.nvars();
    exponents_up_to(n, a.order())
        .iter()
        .map(|e| {
            let v = e[..n].to_vec();
            Check::new(fmt_exponent(e, names), Status::from_bool(eq(&a.coeff(&v), &b.coeff(&v))))
        })
        .collect()
}

/// `y = t4` specialization against the three-dimensional closed formula.
pub fn dimred_report(
    family: Family,
    order: u32,
    mode: EqualityMode,
    rule: &SignRule,
    par: Parallelism,
    cache_dir: Option<&Path>,
) -> Result<Report> {
    let g = family.action();
    let action = effective_action(&g);
    let mut rep = Report::new("dimred", g.name(), order, mode);
    let parts: Vec<SolidPartition> = partitions_up_to(order as usize, cache_dir)?.into_iter().flatten().collect();
    let reduced = par.map(&parts, |p| dimensional_reduce(p, action, rule));
    let mut items = Vec::new();
    let mut anomalies = Vec::new();
    for (p, r) in parts.iter().zip(reduced) {
        match r {
            Ok(Reduced::Zero) => {}
            Ok(Reduced::Value(c)) => {
                if p.has_box_beyond_l0() && !c.is_zero() {
                    anomalies.push(json!({"partition": p.id(), "anomaly": "nonzero"}));
                }
                items.push(c);
            }
            Err(e) => anomalies.push(json!({"partition": p.id(), "anomaly": e.to_string()})),
        }
    }
    rep.checks.push(
        Check::new("beyond-l0-vanish", Status::from_bool(anomalies.is_empty()))
            .with_detail(json!({"partitions": parts.len(), "anomalies": anomalies})),
    );
    let contribs = Contributions { action: action.cloned(), order, rule: *rule, items };
    let nvars = family.nvars();
    let names = contribs.names();
    let mut flip = vec![false; nvars];
    flip[0] = true;
    let arg = build_orbifold_argument_3d(family)?;
    match mode {
        EqualityMode::Exact => {
            let lhs = contribs.exact_series(par)?.flip_signs(&flip);
            let rhs = arg.plethystic_exp_exact(nvars, order)?;
            rep.checks.extend(compare_exact(&lhs, &rhs, &names, |a, b| a.equals(b)));
        }
        EqualityMode::Modular { seed, trials } => {
            let lhs = |pp: &PointPair| {
                pp.run(
                    nvars,
                    order,
                    |p| Ok(contribs.modular_series(p)?.flip_signs(&flip)),
                    |p| Ok(contribs.modular_series(p)?.flip_signs(&flip)),
                )
            };
            let rhs = |pp: &PointPair| {
                pp.run(
                    nvars,
                    order,
                    |p| arg.plethystic_exp_modular(nvars, order, p),
                    |p| arg.plethystic_exp_modular(nvars, order, p),
                )
            };
            for (e, ok) in modular_compare(nvars, order, seed, trials, lhs, rhs)? {
                rep.checks.push(Check::new(fmt_exponent(&e, &names), Status::from_bool(ok)));
            }
        }
    }
    Ok(rep)
}

/// Per-partition validation of the cohomological map for `|pi| <= max`.
pub fn cohom_pointwise(
    group: &GroupAction,
    max: usize,
    rule: &SignRule,
    seed: u64,
    cache_dir: Option<&Path>,
) -> Result<Check> {
    let action = effective_action(group);
    let mut bad = Vec::new();
    let mut count = 0usize;
    for p in partitions_up_to(max, cache_dir)?.into_iter().flatten() {
        let c = contribution(&p, action, rule)?;
        count += 1;
        match validate_cohomological_leading(&c.value, seed, 3) {
            Ok(true) => {}
            Ok(false) => bad.push(json!({"partition": p.id(), "status": "mismatch"})),
            Err(e) => bad.push(json!({"partition": p.id(), "status": e.to_string()})),
        }
    }
    Ok(Check::new(format!("pointwise/{}", group.name()), Status::from_bool(bad.is_empty()))
        .with_detail(json!({"partitions": count, "failures": bad})))
}

/// `deg_m(coh) = |pi|_{R0}` and `m`-leading part of `coh` = insertion-free value.
pub fn m_degree_pattern(group: &GroupAction, max: usize, rule: &SignRule, cache_dir: Option<&Path>) -> Result<Check> {
    let action = effective_action(group);
    let mut bad = Vec::new();
    let mut count = 0usize;
    for p in partitions_up_to(max, cache_dir)?.into_iter().flatten() {
        count += 1;
        let c = contribution(&p, action, rule)?;
        let free = insertion_free_contribution(&p, action, rule)?;
        let n0 = (sign_exponent(&p, action) - p.diagonal_count()) as i64;
        let ok = if c.is_zero() {
            free.is_zero()
        } else {
            let coh = cohomological_map(&c)?;
            m_degree(&coh) == Some(n0) && m_leading(&coh).equals(&free) && m_degree(&free) == Some(0)
        };
        if !ok {
            bad.push(json!(p.id()));
        }
    }
    Ok(Check::new(format!("m-degree/{}", group.name()), Status::from_bool(bad.is_empty()))
        .with_detail(json!({"partitions": count, "failures": bad})))
}

fn cohom_series(contribs: &Contributions, par: Parallelism) -> Result<TruncatedSeries<CohomFraction>> {
    contribs.series_with(par, cohomological_map)
}

fn free_series(
    family: Family,
    order: u32,
    rule: &SignRule,
    par: Parallelism,
    cache_dir: Option<&Path>,
) -> Result<TruncatedSeries<CohomFraction>> {
    let g = family.action();
    let action = effective_action(&g);
    let parts: Vec<SolidPartition> = partitions_up_to(order as usize, cache_dir)?.into_iter().flatten().collect();
    let vals = par.try_map(&parts, |p| {
        insertion_free_contribution(p, action, rule).map_err(|e| e.at_partition(p.id()))
    })?;
    let mut s = TruncatedSeries::zero(family.nvars(), order);
    for (p, v) in parts.iter().zip(vals) {
        let e: Vec<i32> = crate::vertex::profile_of(p, action).0.iter().map(|&x| x as i32).collect();
        s.add_term(&crate::exactalg::series::sexp(&e), v);
    }
    Ok(s)
}

/// Dimensional reduction, cohomological and insertion-free limits.
pub fn limits_suite(
    group: &GroupAction,
    order: u32,
    mode: EqualityMode,
    rule: &SignRule,
    par: Parallelism,
    cache_dir: Option<&Path>,
    seed: u64,
) -> Result<Report> {
    let family = Family::of(group)?;
    let mut rep = Report::new("limits", group.name(), order, mode);
    rep.merge("dimred", dimred_report(family, order, mode, rule, par, cache_dir)?);

    let small = (order as usize).min(PER_PARTITION_MAX);
    let names = crate::vertex::series_names(effective_action(group));
    let contribs = collect_contributions(effective_action(group), order, rule, par, cache_dir)?;
    let mut cohom = Report::new("cohom", group.name(), order, EqualityMode::Exact);
    cohom.checks.push(cohom_pointwise(group, small, rule, seed, cache_dir)?);
    let lhs = cohom_series(&contribs, par)?;
    let rhs = cohomological_closed_form(family, order)?;
    cohom.checks.extend(compare_exact(&lhs, &rhs, &names, |a, b| a.equals(b)));
    rep.merge("cohom", cohom);

    let mut free = Report::new("free", group.name(), order, EqualityMode::Exact);
    free.checks.push(m_degree_pattern(group, small, rule, cache_dir)?);
    let lhs = free_series(family, order, rule, par, cache_dir)?;
    let rhs = insertion_free_closed_form(family, order)?;
    free.checks.extend(compare_exact(&lhs, &rhs, &names, |a, b| a.equals(b)));
    rep.merge("free", free);
    Ok(rep)
}

/// Unsupported groups still get the pointwise checks.
pub fn pointwise_only(group: &GroupAction, rule: &SignRule, seed: u64, cache_dir: Option<&Path>) -> Result<Report> {
    let mut rep = Report::new("limits-pointwise", group.name(), PER_PARTITION_MAX as u32, EqualityMode::Exact);
    rep.checks.push(cohom_pointwise(group, PER_PARTITION_MAX, rule, seed, cache_dir)?);
    match m_degree_pattern(group, PER_PARTITION_MAX, rule, cache_dir) {
        Ok(c) => rep.checks.push(c),
        Err(e) => rep.checks.push(Check::new(format!("m-degree/{}", group.name()), Status::Error(e.to_string()))),
    }
    Ok(rep)
}
