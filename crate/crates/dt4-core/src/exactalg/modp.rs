use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::bracket::BracketProduct;
use super::frac::BracketFraction;
use super::monomial::{Monomial, NVARS, T1, T2, T3, T4};
use super::poly::{LaurentPoly, Q};
use crate::error::{Error, Result};

/// Largest prime below 2^62.
pub const P1: u64 = (1u64 << 62) - 57;
/// Largest prime below 2^63.
pub const P2: u64 = (1u64 << 63) - 25;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub const ZERO: Self = Fp(0);
    pub const ONE: Self = Fp(1);

    pub fn new(x: u64) -> Self {
        Fp(x % P)
    }

    pub fn from_i64(x: i64) -> Self {
        if x >= 0 {
            Fp(x as u64 % P)
        } else {
            Fp(0).sub(Fp(x.unsigned_abs() % P))
        }
    }

    pub fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }

    pub fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }

    pub fn neg(self) -> Self {
        Fp(0).sub(self)
    }

    pub fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let p = BigInt::from(P);
        let mut r = x % &p;
        if r < BigInt::zero() {
            r += &p;
        }
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    /// Image of a rational; `None` when the denominator vanishes mod P.
    pub fn from_q(x: &Q) -> Option<Self> {
        let n = Self::from_bigint(x.numer());
        let d = Self::from_bigint(x.denom());
        d.inv().map(|di| n.mul(di))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point assigning to each variable slot the value of its fourth root, so
/// that quarter exponents become integer powers. The t4 slot is tied to
/// t1 t2 t3 by the CY relation.
#[derive(Clone, Debug)]
pub struct EvalPoint<const P: u64> {
    roots: [Fp<P>; NVARS],
    inv_roots: [Fp<P>; NVARS],
}

impl<const P: u64> EvalPoint<P> {
    pub fn from_roots(mut roots: [Fp<P>; NVARS]) -> Result<Self> {
        let prod = roots[T1].mul(roots[T2]).mul(roots[T3]);
        roots[T4] = prod.inv().ok_or(Error::EvaluationSingular)?;
        let mut inv_roots = [Fp(0); NVARS];
        for i in 0..NVARS {
            inv_roots[i] = roots[i].inv().ok_or(Error::EvaluationSingular)?;
        }
        Ok(EvalPoint { roots, inv_roots })
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let mut roots = [Fp(0); NVARS];
            for r in roots.iter_mut() {
                *r = Fp(rng.gen_range(1..P));
            }
            if let Ok(p) = Self::from_roots(roots) {
                return p;
            }
        }
    }

    pub fn monomial(&self, m: &Monomial) -> Fp<P> {
        let mut acc = Fp(1);
        for (i, &e) in m.quarters().iter().enumerate() {
            if e > 0 {
                acc = acc.mul(self.roots[i].pow(e as u64));
            } else if e < 0 {
                acc = acc.mul(self.inv_roots[i].pow((-(e as i64)) as u64));
            }
        }
        acc
    }

    pub fn poly(&self, p: &LaurentPoly) -> Result<Fp<P>> {
        let mut acc = Fp(0);
        for (m, c) in p.terms() {
            let c = Fp::from_q(c).ok_or(Error::EvaluationSingular)?;
            acc = acc.add(c.mul(self.monomial(m)));
        }
        Ok(acc)
    }

    pub fn bracket(&self, m: &Monomial) -> Result<Fp<P>> {
        let h = m.sqrt()?;
        Ok(self.monomial(&h).sub(self.monomial(&h.inv())))
    }

    pub fn bracket_product(&self, bp: &BracketProduct) -> Result<Fp<P>> {
        let mut num = self.monomial(&bp.prefactor());
        if bp.sign() < 0 {
            num = num.neg();
        }
        for m in bp.num() {
            num = num.mul(self.bracket(m)?);
        }
        let mut den = Fp(1);
        for m in bp.den() {
            den = den.mul(self.bracket(m)?);
        }
        Ok(num.mul(den.inv().ok_or(Error::EvaluationSingular)?))
    }

    pub fn bracket_fraction(&self, f: &BracketFraction) -> Result<Fp<P>> {
        let num = self.poly(f.num())?;
        let mut den = Fp(1);
        for a in f.den_atoms() {
            den = den.mul(self.bracket(&a.0)?);
        }
        Ok(num.mul(den.inv().ok_or(Error::EvaluationSingular)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn miller_rabin(n: u64) -> bool {
        if n < 4 {
            return n >= 2;
        }
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            acc
        };
        let mut d = n - 1;
        let mut s = 0;
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = powmod(a % n, d);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 0..s - 1 {
                x = mulmod(x, x);
                if x == n - 1 {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    #[test]
    fn primes_are_prime_and_large() {
        for p in [P1, P2] {
            assert!(p > 1u64 << 61);
            assert!(miller_rabin(p));
        }
        assert!(!miller_rabin(P1 + 2));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Fp::<P1>::new(123456789);
        assert_eq!(x.mul(x.inv().unwrap()), Fp::ONE);
        assert_eq!(Fp::<P2>::from_i64(-1).add(Fp::ONE), Fp::ZERO);
    }

    #[test]
    fn point_respects_cy_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pt = EvalPoint::<P1>::random(&mut rng);
        let m = Monomial::t(1, 1, 1, 1);
        assert_eq!(pt.monomial(&m), Fp::ONE);
    }
}
