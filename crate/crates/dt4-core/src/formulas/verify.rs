use std::time::Instant;

use serde_json::{json, Map, Value};

use super::nekrasov::build_orbifold_argument;
use super::Family;
use crate::error::{Error, Result};
use crate::exactalg::series::total_degree;
use crate::exactalg::{prime_rng, sample_nonsingular, EqualityMode, EvalPoint, Fp, SExp, TruncatedSeries, P1, P2};
use crate::parallel::Parallelism;
use crate::partitions::GroupAction;
use crate::vertex::{collect_contributions, effective_action, Contributions, SignRule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error(String),
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn from_result(r: Result<bool>) -> Self {
        match r {
            Ok(b) => Status::from_bool(b),
            Err(e) => Status::Error(e.to_string()),
        }
    }

    pub fn is_pass(&self) -> bool {
        *self == Status::Pass
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error(_) => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub status: Status,
    pub ms: Option<f64>,
    pub detail: Option<Value>,
}

impl Check {
    pub fn new(label: impl Into<String>, status: Status) -> Self {
        Check { label: label.into(), status, ms: None, detail: None }
    }

    pub fn timed(label: impl Into<String>, f: impl FnOnce() -> Result<bool>) -> Self {
        let t = Instant::now();
        let status = Status::from_result(f());
        Check { label: label.into(), status, ms: Some(t.elapsed().as_secs_f64() * 1e3), detail: None }
    }

    pub fn with_detail(mut self, d: Value) -> Self {
        self.detail = Some(d);
        self
    }

    fn to_json(&self, timings: bool) -> Value {
        let mut m = Map::new();
        m.insert("exponent".into(), json!(self.label));
        m.insert("status".into(), json!(self.status.label()));
        if let Status::Error(e) = &self.status {
            m.insert("error".into(), json!(e));
        }
        if let (true, Some(ms)) = (timings, self.ms) {
            m.insert("ms".into(), json!((ms * 1000.0).round() / 1000.0));
        }
        if let Some(d) = &self.detail {
            m.insert("detail".into(), d.clone());
        }
        Value::Object(m)
    }
}

/// Outcome of one verification run: a list of named checks plus metadata.
#[derive(Clone, Debug)]
pub struct Report {
    pub kind: String,
    pub group: String,
    pub order: u32,
    pub mode: String,
    pub checks: Vec<Check>,
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(kind: &str, group: &str, order: u32, mode: EqualityMode) -> Self {
        Report {
            kind: kind.into(),
            group: group.into(),
            order,
            mode: mode_label(mode),
            checks: Vec::new(),
            extra: Map::new(),
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.status.is_pass())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.status.is_pass())
    }

    pub fn merge(&mut self, prefix: &str, o: Report) {
        for mut c in o.checks {
            c.label = format!("{prefix}/{}", c.label);
            self.checks.push(c);
        }
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind));
        m.insert("group".into(), json!(self.group));
        m.insert("order".into(), json!(self.order));
        m.insert("mode".into(), json!(self.mode));
        m.insert("passed".into(), json!(self.passed()));
        m.insert("checks".into(), Value::Array(self.checks.iter().map(|c| c.to_json(timings)).collect()));
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }
}

pub fn mode_label(mode: EqualityMode) -> String {
    match mode {
        EqualityMode::Exact => "exact".into(),
        EqualityMode::Modular { seed, trials } => format!("modular(seed={seed},points={trials})"),
    }
}

/// Exact up to total degree 3, modular beyond.
pub fn default_mode(order: u32, seed: u64) -> EqualityMode {
    if order <= 3 {
        EqualityMode::Exact
    } else {
        EqualityMode::modular_default(seed)
    }
}

/// All exponent vectors with `nvars` entries and total degree at most `order`.
pub fn exponents_up_to(nvars: usize, order: u32) -> Vec<SExp> {
    fn rec(i: usize, left: i32, cur: &mut Vec<i32>, nvars: usize, out: &mut Vec<SExp>) {
        if i == nvars {
            out.push(crate::exactalg::series::sexp(cur));
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(i + 1, left - k, cur, nvars, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, order as i32, &mut Vec::new(), nvars, &mut out);
    out.sort_by_key(|e| (total_degree(e), std::cmp::Reverse(*e)));
    out
}

pub fn fmt_exponent(e: &SExp, names: &[String]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(e.iter())
        .filter(|(_, &k)| k != 0)
        .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Evaluate two series builders on sampled points and compare each exponent
/// on every point of both primes. Returns per-exponent agreement.
pub fn modular_compare<F1, F2>(
    nvars: usize,
    order: u32,
    seed: u64,
    trials: usize,
    lhs1: F1,
    rhs1: F2,
) -> Result<Vec<(SExp, bool)>>
where
    F1: Fn(&PointPair) -> Result<(TruncatedSeries<Fp<P1>>, TruncatedSeries<Fp<P2>>)>,
    F2: Fn(&PointPair) -> Result<(TruncatedSeries<Fp<P1>>, TruncatedSeries<Fp<P2>>)>,
{
    let exps = exponents_up_to(nvars, order);
    let mut ok = vec![true; exps.len()];
    let mut r1 = prime_rng(seed, 0);
    let mut r2 = prime_rng(seed, 1);
    for _ in 0..trials {
        let (p1, (a1, b1)) = sample_nonsingular::<P1, _, _>(&mut r1, |pt| {
            let pp = PointPair::One(pt.clone());
            Ok((lhs1(&pp)?.0, rhs1(&pp)?.0))
        });
        let (p2, (a2, b2)) = sample_nonsingular::<P2, _, _>(&mut r2, |pt| {
            let pp = PointPair::Two(pt.clone());
            Ok((lhs1(&pp)?.1, rhs1(&pp)?.1))
        });
        let _ = (p1, p2);
        for (i, e) in exps.iter().enumerate() {
            let v: Vec<i32> = e[..nvars].to_vec();
            if a1.coeff(&v) != b1.coeff(&v) || a2.coeff(&v) != b2.coeff(&v) {
                ok[i] = false;
            }
        }
    }
    Ok(exps.into_iter().zip(ok).collect())
}

/// A sampled point on one of the two primes; builders fill only the matching slot.
#[derive(Clone, Debug)]
pub enum PointPair {
    One(EvalPoint<P1>),
    Two(EvalPoint<P2>),
}

impl PointPair {
    /// Run the builder for whichever prime this point lives on.
    pub fn run<F1, F2>(
        &self,
        nvars: usize,
        order: u32,
        f1: F1,
        f2: F2,
    ) -> Result<(TruncatedSeries<Fp<P1>>, TruncatedSeries<Fp<P2>>)>
    where
        F1: FnOnce(&EvalPoint<P1>) -> Result<TruncatedSeries<Fp<P1>>>,
        F2: FnOnce(&EvalPoint<P2>) -> Result<TruncatedSeries<Fp<P2>>>,
    {
        match self {
            PointPair::One(p) => Ok((f1(p)?, TruncatedSeries::zero(nvars, order))),
            PointPair::Two(p) => Ok((TruncatedSeries::zero(nvars, order), f2(p)?)),
        }
    }
}

fn orbifold_checks(
    contribs: &Contributions,
    family: Family,
    mode: EqualityMode,
    par: Parallelism,
) -> Result<Vec<Check>> {
    let nvars = family.nvars();
    let order = contribs.order;
    let arg = build_orbifold_argument(family)?;
    let names = contribs.names();
    match mode {
        EqualityMode::Exact => {
            let t = Instant::now();
            let lhs = contribs.exact_series(par)?;
            let rhs = arg.plethystic_exp_exact(nvars, order)?;
            let setup = t.elapsed().as_secs_f64() * 1e3;
            let exps = exponents_up_to(nvars, order);
            let checks = par.map(&exps, |e| {
                let v = e[..nvars].to_vec();
                let t = Instant::now();
                let ok = lhs.coeff(&v).equals(&rhs.coeff(&v));
                let ms = t.elapsed().as_secs_f64() * 1e3;
                Check { label: fmt_exponent(e, &names), status: Status::from_bool(ok), ms: Some(ms), detail: None }
            });
            let mut out = vec![Check { label: "expand".into(), status: Status::Pass, ms: Some(setup), detail: None }];
            out.extend(checks);
            Ok(out)
        }
        EqualityMode::Modular { seed, trials } => {
            let t = Instant::now();
            let lhs = |pp: &PointPair| pp.run(nvars, order, |p| contribs.modular_series(p), |p| contribs.modular_series(p));
            let rhs = |pp: &PointPair| {
                pp.run(
                    nvars,
                    order,
                    |p| arg.plethystic_exp_modular(nvars, order, p),
                    |p| arg.plethystic_exp_modular(nvars, order, p),
                )
            };
            let res = modular_compare(nvars, order, seed, trials, lhs, rhs)?;
            let total = t.elapsed().as_secs_f64() * 1e3;
            let mut out = vec![Check { label: "evaluate".into(), status: Status::Pass, ms: Some(total), detail: None }];
            out.extend(res.into_iter().map(|(e, ok)| Check::new(fmt_exponent(&e, &names), Status::from_bool(ok))));
            Ok(out)
        }
    }
}

/// Compare the localization sum with the closed plethystic formula at every
/// exponent of total degree at most `order`.
pub fn verify_orbifold_conjecture(
    group: &GroupAction,
    order: u32,
    mode: EqualityMode,
    rule: &SignRule,
    par: Parallelism,
    cache_dir: Option<&std::path::Path>,
) -> Result<Report> {
    let family = Family::of(group)?;
    let action = effective_action(group);
    let contribs = collect_contributions(action, order, rule, par, cache_dir)?;
    let mut rep = Report::new("orbifold", group.name(), order, mode);
    rep.checks = orbifold_checks(&contribs, family, mode, par)?;
    rep.extra.insert("sign_rule".into(), json!(rule.to_string()));
    rep.extra.insert("variables".into(), json!(contribs.names()));
    Ok(rep)
}

/// Turn an identity failure into an error naming the first failing label.
pub fn require(rep: &Report) -> Result<()> {
    match rep.failures().next() {
        None => Ok(()),
        Some(c) => Err(Error::IdentityFailed(c.label.clone())),
    }
}
