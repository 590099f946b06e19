use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Zero};

use super::bracket::{bracket, BracketProduct};
use super::monomial::{Monomial, NVARS};
use super::poly::{q_int, LaurentPoly, Q};
use crate::error::{Error, Result};

/// An irreducible-by-convention denominator factor that expands to a polynomial.
pub trait Atom: Clone + Ord + Eq + Hash + Send + Sync + Debug {
    fn expand(&self) -> LaurentPoly;
}

/// Polynomial over a multiset of atoms. Sums use the multiset lcm of the
/// denominators, so zero-testing never needs a polynomial gcd.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frac<A: Atom> {
    num: LaurentPoly,
    den: Vec<(A, u32)>,
}

fn expand_product<A: Atom>(factors: &[(A, u32)]) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (a, k) in factors {
        let e = a.expand();
        for _ in 0..*k {
            acc = &acc * &e;
        }
    }
    acc
}

impl<A: Atom> Frac<A> {
    pub fn zero() -> Self {
        Frac { num: LaurentPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Frac { num: LaurentPoly::one(), den: Vec::new() }
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Frac { num, den: Vec::new() }
    }

    pub fn new(num: LaurentPoly, den_atoms: Vec<A>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut d = den_atoms;
        d.sort();
        let mut den: Vec<(A, u32)> = Vec::new();
        for a in d {
            match den.last_mut() {
                Some((b, k)) if *b == a => *k += 1,
                _ => den.push((a, 1)),
            }
        }
        Frac { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &[(A, u32)] {
        &self.den
    }

    pub fn den_atoms(&self) -> impl Iterator<Item = &A> {
        self.den.iter().flat_map(|(a, k)| std::iter::repeat_n(a, *k as usize))
    }

    pub fn den_poly(&self) -> LaurentPoly {
        expand_product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Frac { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        Frac { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let num = &self.num * p;
        if num.is_zero() {
            return Self::zero();
        }
        Frac { num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let num = &self.num * &o.num;
        if num.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (a, k) in &o.den {
            match den.binary_search_by(|(b, _)| b.cmp(a)) {
                Ok(i) => den[i].1 += k,
                Err(i) => den.insert(i, (a.clone(), *k)),
            }
        }
        Frac { num, den }
    }

    /// lcm of the two denominators plus the cofactors for each side.
    fn lcm(a: &[(A, u32)], b: &[(A, u32)]) -> (Vec<(A, u32)>, Vec<(A, u32)>, Vec<(A, u32)>) {
        let (mut i, mut j) = (0, 0);
        let (mut l, mut ca, mut cb) = (Vec::new(), Vec::new(), Vec::new());
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    l.push(a[i].clone());
                    cb.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    l.push(b[j].clone());
                    ca.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (x, y) = (a[i].1, b[j].1);
                    l.push((a[i].0.clone(), x.max(y)));
                    if x < y {
                        ca.push((a[i].0.clone(), y - x));
                    } else if y < x {
                        cb.push((a[i].0.clone(), x - y));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        (l, ca, cb)
    }

    fn combine(&self, o: &Self, subtract: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { o.neg() } else { o.clone() };
        }
        let (den, ca, cb) = Self::lcm(&self.den, &o.den);
        let na = if ca.is_empty() { self.num.clone() } else { &self.num * &expand_product(&ca) };
        let nb = if cb.is_empty() { o.num.clone() } else { &o.num * &expand_product(&cb) };
        let num = if subtract { &na - &nb } else { &na + &nb };
        if num.is_zero() {
            return Self::zero();
        }
        Frac { num, den }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn equals(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    pub fn to_rational_fn(&self) -> RationalFn {
        RationalFn::new(self.num.clone(), self.den_poly()).expect("atom products are nonzero")
    }
}

/// Bracket `[m]` with `m` positively oriented and nontrivial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BracketAtom(pub Monomial);

impl Atom for BracketAtom {
    fn expand(&self) -> LaurentPoly {
        bracket(&self.0).expect("bracket atoms live on the half lattice")
    }
}

pub type BracketFraction = Frac<BracketAtom>;

impl Frac<BracketAtom> {
    pub fn from_bracket_product(bp: &BracketProduct) -> Result<Self> {
        if bp.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::new(bp.num_poly()?, bp.den().iter().map(|m| BracketAtom(*m)).collect()))
    }

    pub fn psi(&self, n: i32) -> Self {
        let mut den: Vec<(BracketAtom, u32)> = self.den.iter().map(|(a, k)| (BracketAtom(a.0.pow(n)), *k)).collect();
        den.sort();
        Frac { num: self.num.psi(n), den }
    }

    /// Substitution on numerator and denominator arguments; a denominator
    /// argument becoming trivial is an error.
    pub fn substitute(&self, images: &[Option<Monomial>; NVARS]) -> Result<Self> {
        let mut num = self.num.substitute(images)?;
        let mut atoms = Vec::new();
        let mut sign = 1i64;
        for (a, k) in &self.den {
            let m = a.0.substitute(images)?;
            if m.is_one() {
                return Err(Error::TrivialWeightInDenominator(format!("[{}] after substitution", a.0)));
            }
            let (o, flipped) = m.orient();
            if flipped && k % 2 == 1 {
                sign = -sign;
            }
            for _ in 0..*k {
                atoms.push(BracketAtom(o));
            }
        }
        if sign < 0 {
            num = -&num;
        }
        Ok(Self::new(num, atoms))
    }

    pub fn cy_reduce(&self) -> Result<Self> {
        let mut images: [Option<Monomial>; NVARS] = [None; NVARS];
        images[super::monomial::T4] = Some(Monomial::t(-1, -1, -1, 0));
        self.substitute(&images)
    }
}

/// Quotient of two Laurent polynomials, equality by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let mut r = RationalFn { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn { num: p, den: LaurentPoly::one() }
    }

    pub fn from_bracket_product(bp: &BracketProduct) -> Result<Self> {
        if bp.is_zero() {
            return Ok(Self::from_poly(LaurentPoly::zero()));
        }
        Self::new(bp.num_poly()?, bp.den_poly()?)
    }

    /// Strip the leading monomial and coefficient of the denominator.
    fn normalize(&mut self) {
        let (m, c) = self.den.terms()[0].clone();
        if m.is_one() && c.is_one() {
            return;
        }
        let inv_m = m.inv();
        let inv_c = Q::one() / c;
        self.den = self.den.mul_monomial(&inv_m).scale(&inv_c);
        self.num = self.num.mul_monomial(&inv_m).scale(&inv_c);
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn equals(&self, o: &RationalFn) -> bool {
        (&self.num * &o.den - &o.num * &self.den).is_zero()
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn cy_reduce(&self) -> RationalFn {
        RationalFn::new(self.num.cy_reduce(), self.den.cy_reduce()).expect("reduction keeps denominators nonzero")
    }

    pub fn constant(c: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(q_int(c)))
    }
}
