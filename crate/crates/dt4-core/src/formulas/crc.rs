use serde_json::json;

use super::gv::root_system;
use super::nekrasov::{colour_argument, degree_zero_argument, total_q};
use super::pt::pt_term;
use super::verify::{Check, Report, Status};
use super::Family;
use crate::error::{Error, Result};
use crate::exactalg::{
    prime_rng, sample_nonsingular, BracketFraction, BracketProduct, EqualityMode, Evaluable, EvalPoint, Fp, P1, P2,
};

fn exact_sum(terms: &[BracketProduct]) -> Result<BracketFraction> {
    let mut acc = BracketFraction::zero();
    for t in terms {
        acc = acc.add(&BracketFraction::from_bracket_product(t)?);
    }
    Ok(acc)
}

fn eval_sum<const P: u64>(terms: &[BracketProduct], pt: &EvalPoint<P>) -> Result<Fp<P>> {
    let mut acc = Fp::new(0);
    for t in terms {
        acc = acc.add(pt.bracket_product(t)?);
    }
    Ok(acc)
}

/// Both sides of the crepant resolution identity, split into pieces.
struct Sides {
    degree_zero: Vec<BracketProduct>,
    colour: Vec<BracketProduct>,
    /// `pt(Q^beta) + pt(Q^{-beta})` per positive class, sign `+`.
    classes: Vec<(String, Vec<BracketProduct>)>,
}

fn sides(family: Family) -> Result<Sides> {
    let nvars = family.nvars();
    let q = total_q(nvars);
    let degree_zero = degree_zero_argument(family, q)?.terms;
    let colour = colour_argument(family, nvars, true)?.terms;
    let classes = root_system(family)
        .classes
        .iter()
        .map(|c| Ok((c.name.clone(), vec![pt_term(c, c.q, q)?, pt_term(c, c.q.inv(), q)?])))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sides { degree_zero, colour, classes })
}

/// Per point: the colour part and each class part.
fn sample_values<const P: u64>(s: &Sides, seed: u64, idx: u64, trials: usize) -> Vec<(Fp<P>, Vec<Fp<P>>)> {
    let mut rng = prime_rng(seed, idx);
    (0..trials)
        .map(|_| {
            sample_nonsingular::<P, _, _>(&mut rng, |pt| {
                let l = eval_sum(&s.colour, pt)?;
                let g = s.classes.iter().map(|(_, t)| eval_sum(t, pt)).collect::<Result<Vec<_>>>()?;
                Ok((l, g))
            })
            .1
        })
        .collect()
}

fn holds<const P: u64>(vals: &[(Fp<P>, Vec<Fp<P>>)], signs: &[i8]) -> bool {
    vals.iter().all(|(l, g)| {
        let r = g.iter().zip(signs).fold(Fp::new(0), |a, (x, &s)| if s > 0 { a.add(*x) } else { a.sub(*x) });
        *l == r
    })
}

fn signs_of(mask: u64, k: usize) -> Vec<i8> {
    (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()
}

/// Search for the orientation signs of the GV classes making the orbifold
/// closed formula factor as DT degree zero times PT in `Q` and `Q^{-1}`,
/// confirm exactly, and check that flipping any single sign breaks it.
pub fn verify_crc(family: Family, seed: u64, trials: usize) -> Result<Report> {
    let s = sides(family)?;
    let k = s.classes.len();
    let mut rep = Report::new("crc", family.action().name(), 0, EqualityMode::Exact);
    let v1 = sample_values::<P1>(&s, seed, 0, trials);
    let v2 = sample_values::<P2>(&s, seed, 1, trials);
    let found = (0..1u64 << k).map(|m| signs_of(m, k)).find(|sg| holds(&v1, sg) && holds(&v2, sg));
    let signs = match found {
        Some(sg) => sg,
        None => {
            rep.checks.push(Check::new("sign-search", Status::Error(Error::NoSignVectorWorks.to_string())));
            return Ok(rep);
        }
    };
    rep.checks.push(Check::new("sign-search", Status::Pass));

    rep.checks.push(Check::timed("exact", || {
        let mut lhs = s.degree_zero.clone();
        lhs.extend(s.colour.iter().cloned());
        let mut rhs = s.degree_zero.clone();
        for ((_, t), &sg) in s.classes.iter().zip(&signs) {
            rhs.extend(t.iter().map(|b| b.with_sign(sg)));
        }
        Ok(exact_sum(&lhs)?.equals(&exact_sum(&rhs)?))
    }));

    let mode = EqualityMode::Modular { seed: seed.wrapping_add(1), trials };
    for (i, (name, _)) in s.classes.iter().enumerate() {
        rep.checks.push(Check::timed(format!("flip/{name}"), || {
            let mut sg = signs.clone();
            sg[i] = -sg[i];
            let lhs = SumOf(s.colour.clone());
            let rhs = SumOf(
                s.classes.iter().zip(&sg).flat_map(|((_, t), &x)| t.iter().map(move |b| b.with_sign(x))).collect(),
            );
            Ok(!crate::exactalg::rf_equal(&lhs, &rhs, mode)?)
        }));
    }
    rep.extra.insert("classes".into(), json!(s.classes.iter().map(|c| c.0.clone()).collect::<Vec<_>>()));
    rep.extra.insert("sign_vector".into(), json!(signs));
    Ok(rep)
}

/// Formal sum of bracket products, evaluated termwise.
struct SumOf(Vec<BracketProduct>);

impl Evaluable for SumOf {
    fn to_rational_fn(&self) -> Result<crate::exactalg::RationalFn> {
        Ok(exact_sum(&self.0)?.to_rational_fn())
    }
    fn eval_p1(&self, pt: &EvalPoint<P1>) -> Result<Fp<P1>> {
        eval_sum(&self.0, pt)
    }
    fn eval_p2(&self, pt: &EvalPoint<P2>) -> Result<Fp<P2>> {
        eval_sum(&self.0, pt)
    }
}

pub fn sign_vector(rep: &Report) -> Option<Vec<i8>> {
    rep.extra.get("sign_vector").and_then(|v| serde_json::from_value(v.clone()).ok())
}
