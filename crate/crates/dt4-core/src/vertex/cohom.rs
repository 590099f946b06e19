//! Cohomological images of fixed-point contributions: `t_i = e^{b lambda_i}`,
//! `y = e^{b m}`, leading order in `b`. Polynomials in `lambda1..3, m` reuse
//! `LaurentPoly` with `lambda_i` in slot `t_i` and `m` in slot `y`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use super::class::{vertex_class_for, Twist};
use super::contribution::{Contribution, SignRule};
use crate::error::{Error, Result};
use crate::exactalg::json::{poly_to_json, JsonCoeff};
use crate::exactalg::monomial::LATTICE;
use crate::exactalg::{prime_rng, Adams, Atom, BracketProduct, Frac, LaurentPoly, Monomial, Q, T1, T2, T3, Y};
use crate::partitions::{GroupAction, SolidPartition};

const SLOTS: [usize; 4] = [T1, T2, T3, Y];

/// Primitive integer linear form in `(lambda1, lambda2, lambda3, m)` with
/// positive leading coefficient.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearForm(pub [i64; 4]);

impl Atom for LinearForm {
    fn expand(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            SLOTS.iter().zip(self.0).filter(|(_, c)| *c != 0).map(|(&s, c)| (Monomial::var(s), Q::from_integer(c.into()))),
        )
    }
}

pub type CohomFraction = Frac<LinearForm>;

impl crate::exactalg::Coeff for CohomFraction {
    fn zero() -> Self {
        Frac::zero()
    }
    fn one() -> Self {
        Frac::one()
    }
    fn is_zero(&self) -> bool {
        Frac::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Frac::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Frac::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Frac::mul(self, o)
    }
    fn neg(&self) -> Self {
        Frac::neg(self)
    }
    fn scale_q(&self, c: &Q) -> Self {
        self.scale(c)
    }
}

/// Adams operations only rescale `b`, which the leading-order limit forgets.
impl Adams for CohomFraction {
    fn adams(&self, _n: i32) -> Self {
        self.clone()
    }
}

impl JsonCoeff for CohomFraction {
    fn to_json(&self) -> Value {
        json!({
            "variables": ["lambda1", "lambda2", "lambda3", "m"],
            "slots": ["t1", "t2", "t3", "y"],
            "num": poly_to_json(self.num()),
            "den": poly_to_json(&self.den_poly()),
        })
    }
}

/// `<lambda, mu> + e m` for a monomial `t^mu y^e`, in quarter units.
fn weight_quarters(m: &Monomial) -> Result<[i64; 4]> {
    let r = m.cy_reduce();
    if r.has_series() {
        return Err(Error::Invalid(format!("series variable in {m}")));
    }
    Ok(SLOTS.map(|s| r.get(s) as i64))
}

/// Splits a quarter-unit form into `scalar * primitive`.
fn normalize(w: [i64; 4]) -> Option<(Q, LinearForm)> {
    let g = w.iter().fold(0i64, |a, &b| a.gcd(&b));
    if g == 0 {
        return None;
    }
    let lead = *w.iter().find(|&&x| x != 0).unwrap();
    let g = if lead < 0 { -g } else { g };
    let p = w.map(|x| x / g);
    Some((Q::new(g.into(), (LATTICE as i64).into()), LinearForm(p)))
}

pub fn linear_form_poly(m: &Monomial) -> Result<LaurentPoly> {
    let w = weight_quarters(m)?;
    Ok(match normalize(w) {
        None => LaurentPoly::zero(),
        Some((s, f)) => f.expand().scale(&s),
    })
}

/// Leading `b` power (`#num - #den`) and coefficient of a bracket product.
pub fn cohomological_leading(bp: &BracketProduct) -> Result<(i64, CohomFraction)> {
    let rank = bp.num().len() as i64 - bp.den().len() as i64;
    if bp.is_zero() {
        return Ok((rank, CohomFraction::zero()));
    }
    let mut num = LaurentPoly::constant(Q::from_integer(bp.sign().into()));
    let mut scalar = Q::one();
    for m in bp.num() {
        num = &num * &linear_form_poly(m)?;
    }
    let mut atoms = Vec::with_capacity(bp.den().len());
    for m in bp.den() {
        let (s, f) = normalize(weight_quarters(m)?).ok_or_else(|| Error::ZeroLinearForm(m.to_string()))?;
        scalar /= s;
        atoms.push(f);
    }
    Ok((rank, Frac::new(num.scale(&scalar), atoms)))
}

/// The functor `[t^mu y^e] -> <lambda,mu> + e m` on a rank-zero contribution.
pub fn cohomological_map(c: &Contribution) -> Result<CohomFraction> {
    let (num, den) = (c.value.num().len(), c.value.den().len());
    if num != den {
        return Err(Error::RankMismatch { num, den });
    }
    let (_, f) = cohomological_leading(&c.value)?;
    Ok(if c.sign < 0 { f.neg() } else { f })
}

/// Signed leading coefficient, allowing nonzero rank.
pub fn cohomological_leading_signed(c: &Contribution) -> Result<(i64, CohomFraction)> {
    let (r, f) = cohomological_leading(&c.value)?;
    Ok((r, if c.sign < 0 { f.neg() } else { f }))
}

/// `sign * prod <lambda,mu>^{-c_mu}` over the untwisted (G-fixed) vertex class.
pub fn insertion_free_contribution(
    p: &SolidPartition,
    action: Option<&GroupAction>,
    rule: &SignRule,
) -> Result<CohomFraction> {
    let v = vertex_class_for(p, Twist::None, action);
    let mut num = LaurentPoly::constant(Q::from_integer(rule.sign(p, action).into()));
    let mut scalar = Q::one();
    let mut atoms = Vec::new();
    for (m, &c) in v.terms() {
        match normalize(weight_quarters(m)?) {
            None if m.cy_reduce().is_one() => {
                if c > 0 {
                    return Err(Error::TrivialWeightInDenominator(format!("insertion-free class of {}", p.id())));
                }
                return Ok(CohomFraction::zero());
            }
            None => return Err(Error::ZeroLinearForm(m.to_string())),
            Some((s, f)) => {
                if c < 0 {
                    for _ in 0..-c {
                        num = &num * &f.expand().scale(&s);
                    }
                } else {
                    for _ in 0..c {
                        scalar /= s.clone();
                        atoms.push(f);
                    }
                }
            }
        }
    }
    Ok(Frac::new(num.scale(&scalar), atoms))
}

fn y_degree(m: &Monomial) -> i64 {
    m.get(Y) as i64 / LATTICE as i64
}

/// Degree in `m` (numerator top degree minus `m`-carrying denominator forms).
pub fn m_degree(f: &CohomFraction) -> Option<i64> {
    let top = f.num().terms().iter().map(|(m, _)| y_degree(m)).max()?;
    let den = f.den().iter().filter(|(a, _)| a.0[3] != 0).map(|(_, k)| *k as i64).sum::<i64>();
    Some(top - den)
}

/// `lim_{m -> oo} m^{-deg} f`.
pub fn m_leading(f: &CohomFraction) -> CohomFraction {
    let Some(top) = f.num().terms().iter().map(|(m, _)| y_degree(m)).max() else {
        return CohomFraction::zero();
    };
    let strip = Monomial::from_ints(&[(Y, -(top as i32))]);
    let mut num = f.num().filter(|m| y_degree(m) == top).mul_monomial(&strip);
    let mut atoms = Vec::new();
    for a in f.den_atoms() {
        if a.0[3] != 0 {
            num = num.scale(&Q::new(BigInt::one(), a.0[3].into()));
        } else {
            atoms.push(*a);
        }
    }
    Frac::new(num, atoms)
}

/// `f(lambda, m)` at a rational point.
pub fn eval_cohom(f: &CohomFraction, pt: &[Q; 4]) -> Result<Q> {
    let num = eval_linear_poly(f.num(), pt)?;
    let mut den = Q::one();
    for a in f.den_atoms() {
        den *= a.0.iter().zip(pt).map(|(c, x)| Q::from_integer((*c).into()) * x).fold(Q::zero(), |s, x| s + x);
    }
    if den.is_zero() {
        return Err(Error::EvaluationSingular);
    }
    Ok(num / den)
}

fn eval_linear_poly(p: &LaurentPoly, pt: &[Q; 4]) -> Result<Q> {
    let mut acc = Q::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (i, &s) in SLOTS.iter().enumerate() {
            let e = m.get(s);
            if e < 0 || e % LATTICE != 0 {
                return Err(Error::Invalid(format!("non-polynomial term {m}")));
            }
            for _ in 0..e / LATTICE {
                t *= &pt[i];
            }
        }
        acc += t;
    }
    Ok(acc)
}

/// Lowest nonzero order of `p(e^{b lambda}, e^{b m})` at an integer point,
/// from the expanded Laurent polynomial and power sums `sum c L^k / k!`.
fn b_series_lowest(p: &LaurentPoly, pt: &[i64; 4], max_order: usize) -> Option<(usize, Q)> {
    let ls: Vec<(BigInt, &Q)> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let r = m.cy_reduce();
            (SLOTS.iter().zip(pt).map(|(&s, &x)| BigInt::from(r.get(s) as i64 * x)).sum(), c)
        })
        .collect();
    let mut powers: Vec<BigInt> = vec![BigInt::one(); ls.len()];
    let mut fact = BigInt::one();
    let four = BigInt::from(LATTICE as i64);
    let mut scale = BigInt::one();
    for k in 0..=max_order {
        if k > 0 {
            fact *= k;
            scale *= &four;
            for (pw, (l, _)) in powers.iter_mut().zip(&ls) {
                *pw *= l;
            }
        }
        let s: Q = powers.iter().zip(&ls).map(|(pw, (_, c))| *c * Q::from_integer(pw.clone())).sum();
        if !s.is_zero() {
            return Some((k, s / Q::from_integer(&fact * &scale)));
        }
    }
    None
}

/// Independent check of `cohomological_leading` on one bracket product:
/// expands numerator and denominator polynomials, substitutes exponentials
/// at seeded integer points, and compares the lowest `b` order and value.
pub fn validate_cohomological_leading(bp: &BracketProduct, seed: u64, trials: usize) -> Result<bool> {
    let (rank, f) = cohomological_leading(bp)?;
    if bp.is_zero() {
        return Ok(f.is_zero());
    }
    let bp = bp.cy_reduce()?;
    let num = bp.num_poly()?;
    let den = bp.den_poly()?;
    let forms: Vec<[i64; 4]> = bp.num().iter().chain(bp.den()).map(weight_quarters).collect::<Result<_>>()?;
    let mut rng = prime_rng(seed, 7);
    let mut done = 0;
    while done < trials {
        let pt: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-40i64..=40));
        if forms.iter().any(|w| w.iter().zip(&pt).map(|(a, b)| a * b).sum::<i64>() == 0) {
            continue;
        }
        done += 1;
        let (Some((kn, vn)), Some((kd, vd))) =
            (b_series_lowest(&num, &pt, bp.num().len() + 2), b_series_lowest(&den, &pt, bp.den().len() + 2))
        else {
            return Ok(false);
        };
        if kn as i64 - kd as i64 != rank {
            return Ok(false);
        }
        let qpt = pt.map(|x| Q::from_integer(x.into()));
        if eval_cohom(&f, &qpt)? != vn / vd {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q_int, T4};
    use crate::vertex::contribution::contribution;

    fn lam(a: i64, b: i64, c: i64, m: i64) -> LaurentPoly {
        LinearForm([a, b, c, m]).expand()
    }

    fn origin() -> SolidPartition {
        SolidPartition::new(vec![[0, 0, 0, 0]]).unwrap()
    }

    #[test]
    fn z2_single_box_map() {
        let g = GroupAction::zr(2).unwrap();
        let c = contribution(&origin(), Some(&g), &SignRule::default()).unwrap();
        let f = cohomological_map(&c).unwrap();
        // sign -1 times m(l1+l2)/(l3 l4) with l4 = -(l1+l2+l3)
        let expect = Frac::new(&lam(0, 0, 0, 1) * &lam(1, 1, 0, 0), vec![LinearForm([0, 0, 1, 0]), LinearForm([1, 1, 1, 0])]);
        assert!(f.equals(&expect));
    }

    #[test]
    fn single_box_map_and_free_limit() {
        let c = contribution(&origin(), None, &SignRule::default()).unwrap();
        let f = cohomological_map(&c).unwrap();
        assert_eq!(m_degree(&f), Some(1));
        let free = insertion_free_contribution(&origin(), None, &SignRule::default()).unwrap();
        assert!(m_leading(&f).equals(&free));
        let expect = Frac::new(
            &(&lam(1, 1, 0, 0) * &lam(1, 0, 1, 0)) * &lam(0, 1, 1, 0),
            vec![LinearForm([1, 0, 0, 0]), LinearForm([0, 1, 0, 0]), LinearForm([0, 0, 1, 0]), LinearForm([1, 1, 1, 0])],
        );
        assert!(free.equals(&expect));
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let bp = BracketProduct::new(1, Monomial::ONE, vec![Monomial::var(T1)], vec![]).unwrap();
        let c = Contribution {
            sign: 1,
            value: bp,
            partition: SolidPartition::empty(),
            profile: crate::partitions::ColorProfile(vec![0]),
        };
        assert_eq!(cohomological_map(&c), Err(Error::RankMismatch { num: 1, den: 0 }));
    }

    #[test]
    fn validator_agrees_on_small_products() {
        let t = |a, b, c, d| Monomial::t(a, b, c, d);
        let bp = BracketProduct::new(-1, Monomial::ONE, vec![Monomial::var(Y), t(1, 1, 0, 0)], vec![t(0, 0, 1, 0), t(0, 0, 0, 1)])
            .unwrap();
        assert!(validate_cohomological_leading(&bp, 3, 3).unwrap());
        let c = contribution(&origin(), None, &SignRule::default()).unwrap();
        assert!(validate_cohomological_leading(&c.value, 5, 2).unwrap());
        let wrong = BracketProduct::new(1, Monomial::ONE, vec![Monomial::var(T4).pow(2)], vec![Monomial::var(T1)]).unwrap();
        let (_, f) = cohomological_leading(&wrong).unwrap();
        assert!(!f.equals(&Frac::from_poly(LaurentPoly::constant(q_int(1)))));
        assert!(validate_cohomological_leading(&wrong, 1, 2).unwrap());
    }
}
