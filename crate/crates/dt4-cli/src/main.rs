use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dt4_core::exactalg::json::series_to_json;
use dt4_core::exactalg::{prime_rng, sample_nonsingular, EqualityMode, EvalPoint, P1};
use dt4_core::formulas::crc::verify_crc;
use dt4_core::formulas::limits::{limits_suite, pointwise_only};
use dt4_core::formulas::pt::{pt_irreducible_report, pt_low_degree_report};
use dt4_core::formulas::verify::{default_mode, mode_label, Report};
use dt4_core::formulas::{age, age_witness, verify_orbifold_conjecture, Family};
use dt4_core::partitions::{color_counts, enumerate_colored, resolve_cache_dir, solid_partitions_cached, ColorProfile, GroupAction};
use dt4_core::vertex::{collect_contributions, effective_action, SignRule};
use dt4_core::{Error, Parallelism};

const BUILD_ID: &str = env!("DT4_BUILD_ID");

#[derive(Parser, Debug)]
#[command(name = "dt4", version, about = "K-theoretic DT invariants of C^4 orbifolds by localization")]
struct Cli {
    /// Worker threads (0 = all cores, 1 = sequential).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Seed for modular-mode evaluation points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Partition cache directory (overridden by DT4_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Omit wall-clock timings so that output is byte-reproducible.
    #[arg(long, global = true)]
    no_timings: bool,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Auto,
    Exact,
    Modular,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Conjecture {
    Orbifold,
    Pt,
    Crc,
    Limits,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value = "trivial")]
    group: String,
    #[arg(long, default_value_t = 2)]
    order: u32,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// `default`, `no-diag`, `flipped` or a form like `r0+diag`.
    #[arg(long, default_value = "default")]
    sign_rule: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Truncated partition function from fixed-point contributions.
    Compute(Common),
    /// Compare the localization sum with a closed formula.
    Verify {
        #[arg(long, value_enum)]
        conjecture: Conjecture,
        #[command(flatten)]
        common: Common,
    },
    /// Dimensional reduction, cohomological and insertion-free limits.
    Limits(Common),
    /// Count or list solid partitions.
    Partitions {
        /// Count partitions of this size.
        #[arg(long, conflicts_with = "list")]
        count: Option<usize>,
        /// List partitions of this size.
        #[arg(long)]
        list: Option<usize>,
        /// Restrict to a colour profile, e.g. `2,1` (needs --group).
        #[arg(long)]
        profile: Option<String>,
        #[arg(long, default_value = "trivial")]
        group: String,
    },
    /// Ages of group elements.
    Age {
        #[arg(long)]
        group: Option<String>,
        /// Single element `r:a1,a2,a3,a4`.
        #[arg(long)]
        element: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedGroup(_) | Error::NotSU4(_) | Error::Invalid(_) | Error::UnknownClass(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Internal(e),
        }
    }
}

struct Ctx {
    par: Parallelism,
    seed: u64,
    cache: Option<PathBuf>,
    timings: bool,
}

fn resolve_mode(m: Mode, order: u32, seed: u64) -> EqualityMode {
    match m {
        Mode::Auto => default_mode(order, seed),
        Mode::Exact => EqualityMode::Exact,
        Mode::Modular => EqualityMode::modular_default(seed),
    }
}

fn common_config(c: &Common, mode: EqualityMode) -> Value {
    json!({"group": c.group, "order": c.order, "mode": mode_label(mode), "sign_rule": c.sign_rule})
}

fn parse_common(c: &Common) -> Result<(GroupAction, SignRule), Failure> {
    Ok((GroupAction::parse(&c.group)?, SignRule::parse(&c.sign_rule)?))
}

fn compute(ctx: &Ctx, c: &Common) -> Result<(Value, Value, bool), Failure> {
    let (g, rule) = parse_common(c)?;
    let mode = resolve_mode(c.mode, c.order, ctx.seed);
    let action = effective_action(&g);
    let contribs = collect_contributions(action, c.order, &rule, ctx.par, ctx.cache.as_deref())?;
    let names = contribs.names();
    let series = match mode {
        EqualityMode::Exact => series_to_json(&contribs.exact_series(ctx.par)?, &names),
        EqualityMode::Modular { seed, .. } => {
            let mut rng = prime_rng(seed, 0);
            let (_, s) = sample_nonsingular::<P1, _, _>(&mut rng, |pt: &EvalPoint<P1>| contribs.modular_series(pt));
            series_to_json(&s, &names)
        }
    };
    let nonzero = contribs.items.iter().filter(|x| !x.is_zero()).count();
    let result = json!({
        "series": series,
        "fixed_points": contribs.items.len(),
        "nonzero_contributions": nonzero,
    });
    Ok((common_config(c, mode), result, true))
}

fn report_value(rep: &Report, timings: bool) -> (Value, bool) {
    (rep.to_json(timings), rep.passed())
}

fn verify(ctx: &Ctx, conj: Conjecture, c: &Common) -> Result<(Value, Value, bool), Failure> {
    let (g, rule) = parse_common(c)?;
    let mode = resolve_mode(c.mode, c.order, ctx.seed);
    let mut cfg = common_config(c, mode);
    cfg["conjecture"] = json!(format!("{conj:?}").to_lowercase());
    let cache = ctx.cache.as_deref();
    let (v, ok) = match conj {
        Conjecture::Orbifold => {
            report_value(&verify_orbifold_conjecture(&g, c.order, mode, &rule, ctx.par, cache)?, ctx.timings)
        }
        Conjecture::Crc => report_value(&verify_crc(Family::of(&g)?, ctx.seed, 3)?, ctx.timings),
        Conjecture::Pt => {
            let family = Family::of(&g)?;
            let mut rep = pt_low_degree_report(family)?;
            if let Family::Zr(r) = family {
                if r >= 2 {
                    rep.merge("irreducible", pt_irreducible_report(r, c.order)?);
                }
            }
            report_value(&rep, ctx.timings)
        }
        Conjecture::Limits => return limits(ctx, c),
    };
    Ok((cfg, v, ok))
}

fn limits(ctx: &Ctx, c: &Common) -> Result<(Value, Value, bool), Failure> {
    let (g, rule) = parse_common(c)?;
    let mode = resolve_mode(c.mode, c.order, ctx.seed);
    let rep = match Family::of(&g) {
        Ok(_) => limits_suite(&g, c.order, mode, &rule, ctx.par, ctx.cache.as_deref(), ctx.seed)?,
        Err(_) => pointwise_only(&g, &rule, ctx.seed, ctx.cache.as_deref())?,
    };
    let (v, ok) = report_value(&rep, ctx.timings);
    Ok((common_config(c, mode), v, ok))
}

fn partitions(
    ctx: &Ctx,
    count: Option<usize>,
    list: Option<usize>,
    profile: Option<&str>,
    group: &str,
) -> Result<(Value, Value, bool), Failure> {
    let n = count.or(list).ok_or_else(|| Failure::Usage("one of --count or --list is required".into()))?;
    let cfg = json!({"group": group, "n": n, "profile": profile});
    let parts = match profile {
        None => solid_partitions_cached(n, ctx.cache.as_deref())?,
        Some(p) => {
            let g = GroupAction::parse(group)?;
            let prof: Vec<u32> = p
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Failure::Usage(format!("bad profile {p}"))))
                .collect::<Result<_, _>>()?;
            if prof.iter().sum::<u32>() as usize != n || prof.len() != g.ncolors() {
                return Err(Failure::Usage(format!("profile {p} does not match size {n} and {} colours", g.ncolors())));
            }
            enumerate_colored(&ColorProfile(prof), &g)
        }
    };
    let mut v = json!({"n": n, "count": parts.len()});
    let g = GroupAction::parse(group)?;
    if profile.is_none() && !g.is_trivial() {
        let mut by: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for p in &parts {
            *by.entry(color_counts(p, &g).0).or_default() += 1;
        }
        v["profiles"] = by.into_iter().map(|(k, c)| json!({"profile": k, "count": c})).collect();
    }
    if list.is_some() {
        v["partitions"] = json!(parts.iter().map(|p| p.id()).collect::<Vec<_>>());
    }
    Ok((cfg, v, true))
}

fn parse_element(s: &str) -> Result<(u32, [u32; 4]), Failure> {
    let bad = || Failure::Usage(format!("bad element {s}; expected r:a1,a2,a3,a4"));
    let (r, a) = s.split_once(':').ok_or_else(bad)?;
    let r: u32 = r.trim().parse().map_err(|_| bad())?;
    let a: Vec<u32> = a.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
    let a: [u32; 4] = a.try_into().map_err(|_| bad())?;
    Ok((r, a))
}

fn age_cmd(group: Option<&str>, element: Option<&str>) -> Result<(Value, Value, bool), Failure> {
    let cfg = json!({"group": group, "element": element});
    let v = match (group, element) {
        (_, Some(e)) => {
            let (r, a) = parse_element(e)?;
            let q = age(r, a)?;
            json!({"order": r, "exponents": a, "age": format!("{}/{}", q.numer(), q.denom())})
        }
        (Some(g), None) => {
            let g = GroupAction::parse(g)?;
            let (l, elems) = g.elements();
            let ages: Vec<Value> = elems
                .iter()
                .map(|e| {
                    let q = age(l, *e)?;
                    Ok(json!({"exponents": e, "age": format!("{}/{}", q.numer(), q.denom())}))
                })
                .collect::<Result<_, Error>>()?;
            let w = age_witness(&g)?;
            json!({
                "common_order": l,
                "elements": ages,
                "age_at_most_one": w.is_none(),
                "witness": w.map(|(e, _)| json!(e)),
            })
        }
        (None, None) => return Err(Failure::Usage("one of --group or --element is required".into())),
    };
    Ok((cfg, v, true))
}

fn envelope(command: &str, config: Value, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("dt4-schema".into(), json!(1));
    m.insert("build".into(), json!(BUILD_ID));
    m.insert("command".into(), json!(command));
    m.insert("config".into(), config);
    m.insert("result".into(), result);
    Value::Object(m)
}

fn emit(out: Option<&PathBuf>, v: &Value) -> std::io::Result<()> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    match out {
        Some(p) => fs::write(p, s),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn error_payload(e: &Error) -> Value {
    let mut v = json!({"error": e.to_string()});
    let mut cur = e;
    while let Error::AtPartition { id, source } = cur {
        v["partition"] = json!(id);
        cur = source;
    }
    if let Error::IdentityFailed(x) = e {
        v["exponent"] = json!(x);
    }
    v
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        par: Parallelism::from_workers(cli.workers),
        seed: cli.seed,
        cache: resolve_cache_dir(cli.cache_dir.as_deref()),
        timings: !cli.no_timings,
    };
    let (name, res) = match &cli.cmd {
        Cmd::Compute(c) => ("compute", compute(&ctx, c)),
        Cmd::Verify { conjecture, common } => ("verify", verify(&ctx, *conjecture, common)),
        Cmd::Limits(c) => ("limits", limits(&ctx, c)),
        Cmd::Partitions { count, list, profile, group } => {
            ("partitions", partitions(&ctx, *count, *list, profile.as_deref(), group))
        }
        Cmd::Age { group, element } => ("age", age_cmd(group.as_deref(), element.as_deref())),
    };
    match res {
        Ok((mut cfg, result, ok)) => {
            cfg["seed"] = json!(cli.seed);
            let v = if name == "partitions" {
                // flat shape: {"n", "count", ...} next to the envelope fields
                let mut e = envelope(name, cfg, Value::Null);
                e.as_object_mut().unwrap().remove("result");
                for (k, x) in result.as_object().unwrap() {
                    e[k] = x.clone();
                }
                e
            } else {
                envelope(name, cfg, result)
            };
            if let Err(e) = emit(cli.out.as_ref(), &v) {
                eprintln!("dt4: cannot write output: {e}");
                return ExitCode::from(3);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("dt4: {msg}");
            eprintln!("usage: dt4 <compute|verify|limits|partitions|age> [options]; see dt4 --help");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            let v = envelope(name, json!({"seed": cli.seed}), error_payload(&e));
            let _ = emit(cli.out.as_ref(), &v);
            eprintln!("dt4: {e}");
            ExitCode::from(3)
        }
    }
}
