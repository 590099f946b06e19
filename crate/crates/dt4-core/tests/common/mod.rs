//! Oracles, strategies and properties shared by the integration targets.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use dt4_core::exactalg::json::series_to_json;
use dt4_core::exactalg::{
    bracket, images, rf_equal, BracketFraction, BracketProduct, EqualityMode, KClass, LaurentPoly, Monomial, Q,
    T1, T2, Y,
};
use dt4_core::partitions::{enumerate_solid_partitions, GroupAction, SolidPartition};
use dt4_core::vertex::{
    collect_contributions, g_fixed_part, tautological_pair, vertex_class, virtual_tangent, SignRule, Twist,
};
use dt4_core::Parallelism;

/// Solid partition counts by breadth-first growth over unordered box sets:
/// every downward-closed set of size n+1 is some size-n set plus one box
/// all of whose lower neighbours are present.
pub fn oracle_counts(max: usize) -> Vec<usize> {
    type Set = BTreeSet<[u8; 4]>;
    let mut level: HashSet<Set> = HashSet::new();
    level.insert(Set::new());
    let mut counts = vec![1];
    for _ in 0..max {
        let mut next: HashSet<Set> = HashSet::new();
        for s in &level {
            let mut cands: Vec<[u8; 4]> = vec![[0; 4]];
            for b in s {
                for i in 0..4 {
                    let mut c = *b;
                    c[i] += 1;
                    cands.push(c);
                }
            }
            for c in cands {
                if s.contains(&c) {
                    continue;
                }
                let supported = (0..4).all(|i| {
                    c[i] == 0 || {
                        let mut d = c;
                        d[i] -= 1;
                        s.contains(&d)
                    }
                });
                if supported {
                    let mut t = s.clone();
                    t.insert(c);
                    next.insert(t);
                }
            }
        }
        counts.push(next.len());
        level = next;
    }
    counts
}

pub fn small_partitions(max: usize) -> Vec<SolidPartition> {
    (0..=max).flat_map(enumerate_solid_partitions).collect()
}

pub fn groups() -> Vec<GroupAction> {
    vec![
        GroupAction::zr(2).unwrap(),
        GroupAction::zr(3).unwrap(),
        GroupAction::z2z2(),
        GroupAction::z3age2(),
    ]
}

pub fn arb_t_monomial() -> impl Strategy<Value = Monomial> {
    (-3i32..=3, -3i32..=3, -3i32..=3, -2i32..=2, -2i32..=2)
        .prop_map(|(a, b, c, d, y)| Monomial::t(a, b, c, d) * Monomial::from_ints(&[(Y, y)]))
}

pub fn arb_nontrivial_monomial() -> impl Strategy<Value = Monomial> {
    arb_t_monomial().prop_filter("nontrivial after reduction", |m| !m.cy_reduce().is_one())
}

pub fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((arb_t_monomial(), -5i64..=5), 0..5)
        .prop_map(|v| LaurentPoly::from_terms(v.into_iter().map(|(m, c)| (m, Q::from_integer(c.into())))))
}

pub fn arb_bracket_product() -> impl Strategy<Value = BracketProduct> {
    (
        prop::bool::ANY,
        prop::collection::vec(arb_nontrivial_monomial(), 0..3),
        prop::collection::vec(arb_nontrivial_monomial(), 0..3),
    )
        .prop_map(|(neg, num, den)| {
            BracketProduct::new(if neg { -1 } else { 1 }, Monomial::ONE, num, den).expect("integral exponents")
        })
}

pub fn arb_partition() -> impl Strategy<Value = SolidPartition> {
    let all = small_partitions(4);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

pub fn arb_group() -> impl Strategy<Value = GroupAction> {
    let g = groups();
    (0..g.len()).prop_map(move |i| g[i].clone())
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn prop_ring_laws(a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly) -> Result<(), TestCaseError> {
    check(&(a * b) * c == a * &(b * c), "associativity")?;
    check(a * b == b * a, "commutativity")?;
    check(a * &(b + c) == &(a * b) + &(a * c), "distributivity")?;
    check((a - a).is_zero(), "additive inverse")?;
    check(a * &LaurentPoly::one() == *a, "unit")
}

pub fn prop_bracket_antisymmetry(m: &Monomial) -> Result<(), TestCaseError> {
    let p = bracket(m).unwrap();
    let q = bracket(&m.inv()).unwrap();
    check(p == -&q, "[m^-1] = -[m]")
}

pub fn prop_reduction_idempotent(p: &SolidPartition, m: &Monomial) -> Result<(), TestCaseError> {
    check(m.cy_reduce().cy_reduce() == m.cy_reduce(), "monomial reduction")?;
    let v = vertex_class(p, Twist::Nekrasov);
    check(v.cy_reduce() == v, "vertex class is reduced")?;
    let k = KClass::monomial(*m, 2).add(&v);
    check(k.cy_reduce().cy_reduce() == k.cy_reduce(), "class reduction")
}

pub fn prop_fixed_part(p: &SolidPartition, g: &GroupAction) -> Result<(), TestCaseError> {
    let v = vertex_class(p, Twist::Nekrasov);
    let f = g_fixed_part(&v, g);
    check(g_fixed_part(&f, g) == f, "G-fixed idempotent")?;
    check(g_fixed_part(&v.bar(), g) == f.bar(), "G-fixed commutes with bar")
}

pub fn prop_tangent_reconstruction(p: &SolidPartition) -> Result<(), TestCaseError> {
    let v = vertex_class(p, Twist::None);
    check(v.add(&v.bar()).cy_reduce() == virtual_tangent(p), "v + v^ = T^vir")?;
    let w = vertex_class(p, Twist::Nekrasov);
    let lhs = w.add(&w.bar()).cy_reduce();
    let rhs = virtual_tangent(p).sub(&tautological_pair(p)).cy_reduce();
    check(lhs == rhs, "twisted reconstruction")
}

pub fn prop_representative_independence(bp: &BracketProduct, seed: u64) -> Result<(), TestCaseError> {
    let r = bp.cy_reduce().unwrap();
    check(rf_equal(bp, &r, EqualityMode::modular_default(seed)).unwrap(), "modular")?;
    let a = BracketFraction::from_bracket_product(&r).unwrap();
    let b = BracketFraction::from_bracket_product(bp).unwrap().cy_reduce().unwrap();
    check(a.equals(&b), "exact after reduction")
}

pub fn prop_frac_add(a: &BracketProduct, b: &BracketProduct) -> Result<(), TestCaseError> {
    let (fa, fb) = (BracketFraction::from_bracket_product(a).unwrap(), BracketFraction::from_bracket_product(b).unwrap());
    let s = fa.add(&fb).to_rational_fn();
    let t = fa.to_rational_fn().add(&fb.to_rational_fn());
    check(s.equals(&t), "lcm sum = cross-multiplied sum")?;
    check(fa.add(&fb).equals(&fb.add(&fa)), "commutative")
}

/// Exact series serialized for byte comparison.
pub fn series_bytes(g: Option<&GroupAction>, order: u32, par: Parallelism) -> String {
    let c = collect_contributions(g, order, &SignRule::default(), par, None).unwrap();
    series_to_json(&c.exact_series(par).unwrap(), &c.names()).to_string()
}

pub fn worker_determinism() -> Result<(), String> {
    let z2 = GroupAction::zr(2).unwrap();
    let z22 = GroupAction::z2z2();
    for (g, order) in [(None, 2u32), (Some(&z2), 3), (Some(&z22), 3)] {
        let base = series_bytes(g, order, Parallelism::Sequential);
        for w in [2, 3, 8] {
            if series_bytes(g, order, Parallelism::Rayon { workers: w }) != base {
                return Err(format!("{g:?} order {order} differs with {w} workers"));
            }
        }
    }
    Ok(())
}

/// `Z_{Z_r}(t2, t1; q_k) = Z_{Z_r}(t1, t2; q_{-k})`.
pub fn zr_swap_symmetry(r: u32, order: u32) -> Result<(), String> {
    let g = GroupAction::zr(r).unwrap();
    let s = collect_contributions(Some(&g), order, &SignRule::default(), Parallelism::Sequential, None)
        .unwrap()
        .exact_series(Parallelism::Sequential)
        .unwrap();
    let swap = images(&[(T1, Monomial::var(T2)), (T2, Monomial::var(T1))]);
    for (e, c) in s.terms() {
        let v = s.exponent(e);
        let w: Vec<i32> = (0..r as usize).map(|k| v[(r as usize - k) % r as usize]).collect();
        let d = s.coeff(&w);
        if !c.substitute(&swap).unwrap().cy_reduce().unwrap().equals(&d) {
            return Err(format!("exponent {v:?}"));
        }
    }
    Ok(())
}

fn e<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|x| format!("{x}"))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Deterministic pass over every property, for the acceptance summary.
pub fn run_property_suite(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let mut out: Vec<(&'static str, Result<(), String>)> = Vec::new();
    out.push(("ring laws", e(runner(cases).run(&(arb_poly(), arb_poly(), arb_poly()), |(a, b, c)| prop_ring_laws(&a, &b, &c)))));
    out.push(("bracket antisymmetry", e(runner(cases).run(&arb_nontrivial_monomial(), |m| prop_bracket_antisymmetry(&m)))));
    out.push((
        "reduction idempotence",
        e(runner(cases).run(&(arb_partition(), arb_t_monomial()), |(p, m)| prop_reduction_idempotent(&p, &m))),
    ));
    out.push(("G-fixed idempotence", e(runner(cases).run(&(arb_partition(), arb_group()), |(p, g)| prop_fixed_part(&p, &g)))));
    out.push(("tangent reconstruction", e(runner(cases).run(&arb_partition(), |p| prop_tangent_reconstruction(&p)))));
    out.push((
        "representative independence",
        e(runner(cases).run(&(arb_bracket_product(), any::<u64>()), |(b, s)| prop_representative_independence(&b, s))),
    ));
    out.push((
        "fraction sums",
        e(runner(cases).run(&(arb_bracket_product(), arb_bracket_product()), |(a, b)| prop_frac_add(&a, &b))),
    ));
    out.push(("worker determinism", worker_determinism()));
    out.push(("t1<->t2 symmetry", zr_swap_symmetry(3, 3)));
    out
}
