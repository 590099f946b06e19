//! Exact arithmetic: lattice monomials, Laurent polynomials, bracket
//! products, fractions over bracket multisets, prime-field evaluation,
//! truncated series and plethystic exponentials.

pub mod bracket;
pub mod frac;
pub mod json;
pub mod modp;
pub mod monomial;
pub mod poly;
pub mod series;

pub use bracket::{bracket, bracket_class, BracketProduct, KClass};
pub use frac::{Atom, BracketAtom, BracketFraction, Frac, RationalFn};
pub use modp::{EvalPoint, Fp, P1, P2};
pub use monomial::{Monomial, VarTable, NVARS, S0, T1, T2, T3, T4, Y};
pub use poly::{q_frac, q_int, LaurentPoly, Q};
pub use series::{q_expand, Adams, Coeff, ExpArgument, QExpansion, SExp, TruncatedSeries};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Substitution map with every slot left alone.
pub fn identity_images() -> [Option<Monomial>; NVARS] {
    [None; NVARS]
}

/// Substitution map from `(slot, image)` pairs.
pub fn images(pairs: &[(usize, Monomial)]) -> [Option<Monomial>; NVARS] {
    let mut im = identity_images();
    for (i, m) in pairs {
        im[*i] = Some(*m);
    }
    im
}

/// Equality test for fraction-like values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityMode {
    Exact,
    Modular { seed: u64, trials: usize },
}

impl EqualityMode {
    pub fn modular_default(seed: u64) -> Self {
        EqualityMode::Modular { seed, trials: 3 }
    }
}

/// Values that have an exact rational form and a prime-field evaluation.
pub trait Evaluable {
    fn to_rational_fn(&self) -> Result<RationalFn>;
    fn eval_p1(&self, pt: &EvalPoint<P1>) -> Result<Fp<P1>>;
    fn eval_p2(&self, pt: &EvalPoint<P2>) -> Result<Fp<P2>>;
}

impl Evaluable for RationalFn {
    fn to_rational_fn(&self) -> Result<RationalFn> {
        Ok(self.clone())
    }
    fn eval_p1(&self, pt: &EvalPoint<P1>) -> Result<Fp<P1>> {
        let d = pt.poly(&self.den)?.inv().ok_or(Error::EvaluationSingular)?;
        Ok(pt.poly(&self.num)?.mul(d))
    }
    fn eval_p2(&self, pt: &EvalPoint<P2>) -> Result<Fp<P2>> {
        let d = pt.poly(&self.den)?.inv().ok_or(Error::EvaluationSingular)?;
        Ok(pt.poly(&self.num)?.mul(d))
    }
}

impl Evaluable for BracketProduct {
    fn to_rational_fn(&self) -> Result<RationalFn> {
        RationalFn::from_bracket_product(self)
    }
    fn eval_p1(&self, pt: &EvalPoint<P1>) -> Result<Fp<P1>> {
        pt.bracket_product(self)
    }
    fn eval_p2(&self, pt: &EvalPoint<P2>) -> Result<Fp<P2>> {
        pt.bracket_product(self)
    }
}

impl Evaluable for BracketFraction {
    fn to_rational_fn(&self) -> Result<RationalFn> {
        Ok(Frac::to_rational_fn(self))
    }
    fn eval_p1(&self, pt: &EvalPoint<P1>) -> Result<Fp<P1>> {
        pt.bracket_fraction(self)
    }
    fn eval_p2(&self, pt: &EvalPoint<P2>) -> Result<Fp<P2>> {
        pt.bracket_fraction(self)
    }
}

/// Draw a point on which `f` evaluates without hitting a pole, resampling
/// as needed. Deterministic in the rng state.
pub fn sample_nonsingular<const P: u64, T, F>(rng: &mut ChaCha8Rng, mut f: F) -> (EvalPoint<P>, T)
where
    F: FnMut(&EvalPoint<P>) -> Result<T>,
{
    loop {
        let pt = EvalPoint::<P>::random(rng);
        match f(&pt) {
            Ok(v) => return (pt, v),
            Err(Error::EvaluationSingular) => continue,
            Err(e) => panic!("evaluation failed: {e}"),
        }
    }
}

/// Rng stream for a prime index; both primes get independent streams.
pub fn prime_rng(seed: u64, prime_index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(prime_index + 1);
    r
}

pub fn rf_equal<A: Evaluable, B: Evaluable>(a: &A, b: &B, mode: EqualityMode) -> Result<bool> {
    match mode {
        EqualityMode::Exact => Ok(a.to_rational_fn()?.equals(&b.to_rational_fn()?)),
        EqualityMode::Modular { seed, trials } => {
            let mut rng = prime_rng(seed, 0);
            for _ in 0..trials {
                let (_, (x, y)) = sample_nonsingular::<P1, _, _>(&mut rng, |pt| Ok((a.eval_p1(pt)?, b.eval_p1(pt)?)));
                if x != y {
                    return Ok(false);
                }
            }
            let mut rng = prime_rng(seed, 1);
            for _ in 0..trials {
                let (_, (x, y)) = sample_nonsingular::<P2, _, _>(&mut rng, |pt| Ok((a.eval_p2(pt)?, b.eval_p2(pt)?)));
                if x != y {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Substitute `y -> m` in every coefficient.
pub fn specialize_y(s: &TruncatedSeries<BracketFraction>, m: &Monomial) -> Result<TruncatedSeries<BracketFraction>> {
    let im = images(&[(Y, *m)]);
    s.try_map_coeffs(|c| c.substitute(&im)?.cy_reduce())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rf_equal_modes_on_reduced_representatives() {
        let y = Monomial::var(Y);
        let a = BracketProduct::new(1, Monomial::ONE, vec![y], vec![Monomial::var(T4)]).unwrap();
        let b = a.cy_reduce().unwrap();
        assert!(rf_equal(&a, &b, EqualityMode::modular_default(1)).unwrap());
        let c = b.neg();
        assert!(!rf_equal(&a, &c, EqualityMode::modular_default(1)).unwrap());
    }

    #[test]
    fn exact_antisymmetry() {
        let m = Monomial::t(1, 1, 0, 0);
        let a = BracketProduct::new(1, Monomial::ONE, vec![m], vec![]).unwrap();
        let b = BracketProduct::new(-1, Monomial::ONE, vec![m.inv()], vec![]).unwrap();
        assert!(rf_equal(&a, &b, EqualityMode::Exact).unwrap());
    }

    #[test]
    fn specialize_y_to_t4_cancels() {
        let y = Monomial::var(Y);
        let q = Monomial::var(S0);
        let bp = BracketProduct::new(1, q, vec![y], vec![Monomial::var(T4)]).unwrap().cy_reduce().unwrap();
        let s = q_expand(&bp, 1, 2).unwrap().to_exact().unwrap();
        let r = specialize_y(&s, &Monomial::var(T4)).unwrap();
        assert!(r.coeff(&[1]).equals(&BracketFraction::one()));
    }
}
