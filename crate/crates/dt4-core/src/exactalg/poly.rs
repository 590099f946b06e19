use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::monomial::{Monomial, NVARS};
use crate::error::Result;

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Finite sum of lattice monomials with rational coefficients, kept sorted
/// by monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Q)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE, Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut map: FxHashMap<Monomial, Q> = FxHashMap::default();
        for (m, c) in it {
            *map.entry(m).or_insert_with(Q::zero) += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: FxHashMap<Monomial, Q>) -> Self {
        let mut terms: Vec<(Monomial, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Q)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(n, x)| (*n * *m, x.clone())).collect() }
    }

    /// Apply a monomial map and recombine terms.
    pub fn map_monomials<F: FnMut(&Monomial) -> Monomial>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn try_map_monomials<F: FnMut(&Monomial) -> Result<Monomial>>(&self, mut f: F) -> Result<Self> {
        let mut v = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            v.push((f(m)?, c.clone()));
        }
        Ok(Self::from_terms(v))
    }

    pub fn cy_reduce(&self) -> Self {
        if self.terms.iter().all(|(m, _)| m.get(super::monomial::T4) == 0) {
            return self.clone();
        }
        self.map_monomials(|m| m.cy_reduce())
    }

    pub fn bar(&self) -> Self {
        self.map_monomials(|m| m.bar())
    }

    /// Adams operation: every exponent scaled by `n`.
    pub fn psi(&self, n: i32) -> Self {
        if n == 1 {
            return self.clone();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.pow(n), c.clone())).collect() }.resorted()
    }

    fn resorted(mut self) -> Self {
        self.terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        self
    }

    pub fn substitute(&self, images: &[Option<Monomial>; NVARS]) -> Result<Self> {
        self.try_map_monomials(|m| m.substitute(images))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Keep only terms satisfying `keep`.
    pub fn filter<F: FnMut(&Monomial) -> bool>(&self, mut keep: F) -> Self {
        LaurentPoly { terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect() }
    }

    /// Sum of coefficients, i.e. evaluation at all variables equal to 1.
    pub fn at_one(&self) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (_, c)| acc + c)
    }

    fn merge(&self, other: &Self, sign: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, if sign { -&b[j].1 } else { b[j].1.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if sign { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if sign { -c } else { c.clone() })));
        LaurentPoly { terms: out }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{c}")
                } else if c.is_one() {
                    m.fmt_with(names)
                } else {
                    format!("{c}*{}", m.fmt_with(names))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            return rhs.scale(&self.terms[0].1);
        }
        if rhs.terms.len() == 1 && rhs.terms[0].0.is_one() {
            return self.scale(&rhs.terms[0].1);
        }
        let mut map: FxHashMap<Monomial, Q> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * rhs.terms.len() / 2 + 1, Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = mul_q(ca, cb);
                match map.entry(*ma * *mb) {
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                }
            }
        }
        LaurentPoly::from_map(map)
    }
}

/// Product with a fast path for integers, which skips the gcd reductions.
fn mul_q(a: &Q, b: &Q) -> Q {
    if a.is_integer() && b.is_integer() {
        Q::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&super::monomial::default_names()))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
