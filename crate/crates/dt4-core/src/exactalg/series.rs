use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use super::bracket::{bracket, BracketProduct};
use super::frac::BracketFraction;
use super::modp::{EvalPoint, Fp};
use super::monomial::{Monomial, LATTICE, MAX_SERIES};
use super::poly::{q_frac, q_int, LaurentPoly, Q};
use crate::error::{Error, Result};

/// Coefficient ring of a truncated series.
pub trait Coeff: Clone + Send + Sync + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale_q(&self, c: &Q) -> Self;
}

/// Coefficient rings carrying the Adams operations.
pub trait Adams: Coeff {
    fn adams(&self, n: i32) -> Self;
}

impl Coeff for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_q(&self, c: &Q) -> Self {
        self * c
    }
}

impl Adams for Q {
    fn adams(&self, _n: i32) -> Self {
        self.clone()
    }
}

impl Coeff for BracketFraction {
    fn zero() -> Self {
        BracketFraction::zero()
    }
    fn one() -> Self {
        BracketFraction::one()
    }
    fn is_zero(&self) -> bool {
        BracketFraction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        BracketFraction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BracketFraction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BracketFraction::mul(self, o)
    }
    fn neg(&self) -> Self {
        BracketFraction::neg(self)
    }
    fn scale_q(&self, c: &Q) -> Self {
        self.scale(c)
    }
}

impl Adams for BracketFraction {
    fn adams(&self, n: i32) -> Self {
        self.psi(n)
    }
}

impl<const P: u64> Coeff for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp::add(*self, *o)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        Fp::neg(*self)
    }
    fn scale_q(&self, c: &Q) -> Self {
        Fp::mul(*self, Fp::from_q(c).expect("scalar denominators are small"))
    }
}

/// Series exponent vector.
pub type SExp = [i32; MAX_SERIES];

pub fn sexp(v: &[i32]) -> SExp {
    let mut e = [0; MAX_SERIES];
    e[..v.len()].copy_from_slice(v);
    e
}

pub fn total_degree(e: &SExp) -> i32 {
    e.iter().sum()
}

/// Multivariate series truncated at total degree `order`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries<C: Coeff> {
    nvars: usize,
    order: u32,
    terms: BTreeMap<SExp, C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(nvars: usize, order: u32) -> Self {
        assert!(nvars <= MAX_SERIES);
        TruncatedSeries { nvars, order, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, order: u32) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(&[0; MAX_SERIES], C::one());
        s
    }

    pub fn monomial(nvars: usize, order: u32, e: &[i32], c: C) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(&sexp(e), c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SExp, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponent(&self, e: &SExp) -> Vec<i32> {
        e[..self.nvars].to_vec()
    }

    /// Accumulate; terms beyond the order are dropped.
    pub fn add_term(&mut self, e: &SExp, c: C) {
        if total_degree(e) > self.order as i32 || c.is_zero() {
            return;
        }
        debug_assert!(e[self.nvars..].iter().all(|&x| x == 0));
        match self.terms.get_mut(e) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(e);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(*e, c);
            }
        }
    }

    pub fn coeff(&self, e: &[i32]) -> C {
        self.terms.get(&sexp(e)).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&[])
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.order != o.order {
            return Err(Error::OrderMismatch(self.order, o.order));
        }
        if self.nvars != o.nvars {
            return Err(Error::Invalid(format!("series in {} and {} variables", self.nvars, o.nvars)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(e, c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.add_term(e, c.neg());
        }
        Ok(s)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut s = Self::zero(self.nvars, self.order);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for k in 0..MAX_SERIES {
                    e[k] += eb[k];
                }
                if total_degree(&e) <= self.order as i32 {
                    s.add_term(&e, ca.mul(cb));
                }
            }
        }
        Ok(s)
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        self.map_coeffs(|x| x.scale_q(c))
    }

    pub fn map_coeffs<F: FnMut(&C) -> C>(&self, mut f: F) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            s.add_term(e, f(c));
        }
        s
    }

    pub fn try_map_coeffs<D: Coeff, F: FnMut(&C) -> Result<D>>(&self, mut f: F) -> Result<TruncatedSeries<D>> {
        let mut s = TruncatedSeries::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            s.add_term(e, f(c)?);
        }
        Ok(s)
    }

    /// Re-truncate at a lower order.
    pub fn truncate(&self, order: u32) -> Self {
        let mut s = Self::zero(self.nvars, order.min(self.order));
        for (e, c) in &self.terms {
            s.add_term(e, c.clone());
        }
        s
    }

    /// Assert every exponent is non-negative.
    pub fn finalize(self) -> Result<Self> {
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| e.iter().any(|&x| x < 0)) {
            return Err(Error::Invalid(format!("negative series exponent {:?} survived", &e[..self.nvars])));
        }
        Ok(self)
    }

    /// Substitute `q_i -> sign_i q_i`.
    pub fn flip_signs(&self, negate: &[bool]) -> Self {
        self.map_terms(|e, c| {
            let odd = e.iter().zip(negate).filter(|(x, n)| **n && x.rem_euclid(2) == 1).count() % 2 == 1;
            if odd {
                c.neg()
            } else {
                c.clone()
            }
        })
    }

    fn map_terms<F: FnMut(&SExp, &C) -> C>(&self, mut f: F) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            s.add_term(e, f(e, c));
        }
        s
    }

    /// `exp(f)` for `f` whose terms all have positive total degree.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.keys().any(|e| total_degree(e) <= 0) {
            return Err(Error::NonzeroConstantTerm);
        }
        let d = self.order as usize;
        let mut g: Vec<Vec<(SExp, C)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            g[total_degree(e) as usize].push((*e, c.clone()));
        }
        // Euler operator: n E_n = sum_k k g_k E_{n-k}
        let mut parts: Vec<BTreeMap<SExp, C>> = vec![BTreeMap::new(); d + 1];
        parts[0].insert([0; MAX_SERIES], C::one());
        for n in 1..=d {
            let mut acc: BTreeMap<SExp, C> = BTreeMap::new();
            for k in 1..=n {
                let kq = q_int(k as i64);
                for (eg, cg) in &g[k] {
                    let cgk = cg.scale_q(&kq);
                    for (ee, ce) in &parts[n - k] {
                        let mut e = *eg;
                        for i in 0..MAX_SERIES {
                            e[i] += ee[i];
                        }
                        let prod = cgk.mul(ce);
                        match acc.get_mut(&e) {
                            Some(x) => *x = x.add(&prod),
                            None => {
                                acc.insert(e, prod);
                            }
                        }
                    }
                }
            }
            let inv_n = q_frac(1, n as i64);
            parts[n] = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e, c.scale_q(&inv_n))).collect();
        }
        let mut s = Self::zero(self.nvars, self.order);
        for p in parts {
            for (e, c) in p {
                s.add_term(&e, c);
            }
        }
        Ok(s)
    }

    /// Exponents times `n`, coefficients through `f`.
    pub fn scale_exponents<F: FnMut(&C) -> C>(&self, n: i32, mut f: F) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2.iter_mut().for_each(|x| *x *= n);
            if total_degree(&e2) <= self.order as i32 {
                s.add_term(&e2, f(c));
            }
        }
        s
    }
}

impl<C: Adams> TruncatedSeries<C> {
    pub fn psi(&self, n: i32) -> Self {
        self.scale_exponents(n, |c| c.adams(n))
    }

    /// `Exp(f) = exp(sum_n psi_n(f) / n)`.
    pub fn plethystic_exp(&self) -> Result<Self> {
        if self.terms.keys().any(|e| total_degree(e) <= 0) {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut log = Self::zero(self.nvars, self.order);
        for n in 1..=self.order as i32 {
            log = log.add(&self.psi(n).scale_q(&q_frac(1, n as i64)))?;
        }
        log.exp()
    }
}

/// Expansion of a bracket product in positive series degree: the value is
/// `coef * sum_e terms[e] q^e`, with `coef` free of series variables.
#[derive(Clone, Debug)]
pub struct QExpansion {
    pub nvars: usize,
    pub order: u32,
    pub coef: BracketProduct,
    pub terms: BTreeMap<SExp, LaurentPoly>,
}

fn mul_truncated(a: &LaurentPoly, b: &LaurentPoly, max_q: i32) -> LaurentPoly {
    let mut v = Vec::new();
    for (ma, ca) in a.terms() {
        let da = ma.series_degree_q();
        for (mb, cb) in b.terms() {
            if da + mb.series_degree_q() <= max_q {
                v.push((*ma * *mb, ca * cb));
            }
        }
    }
    LaurentPoly::from_terms(v)
}

/// Expand `bp` to total series degree `order` in `nvars` series variables.
pub fn q_expand(bp: &BracketProduct, nvars: usize, order: u32) -> Result<QExpansion> {
    let mut coef_num = Vec::new();
    let mut coef_den = Vec::new();
    let mut base = LaurentPoly::monomial(bp.prefactor(), q_int(bp.sign() as i64));
    let mut geo: Vec<Monomial> = Vec::new();
    let mut terms = BTreeMap::new();
    if bp.is_zero() {
        return Ok(QExpansion { nvars, order, coef: BracketProduct::one(), terms });
    }
    for m in bp.num() {
        if m.has_series() {
            base = &base * &bracket(m)?;
        } else {
            coef_num.push(*m);
        }
    }
    for m in bp.den() {
        if !m.has_series() {
            coef_den.push(*m);
            continue;
        }
        let s = m.series_degree_q();
        let h = m.sqrt()?;
        if s > 0 {
            // 1/[m] = -m^{1/2} / (1 - m)
            base = base.mul_monomial(&h).scale(&q_int(-1));
            geo.push(*m);
        } else if s < 0 {
            // 1/[m] = m^{-1/2} / (1 - m^{-1})
            base = base.mul_monomial(&h.inv());
            geo.push(m.inv());
        } else {
            return Err(Error::NonExpandable(format!("[{m}] has series degree 0")));
        }
    }
    let max_q = order as i32 * LATTICE as i32;
    let dmin = base.terms().iter().map(|(m, _)| m.series_degree_q()).min().unwrap_or(0);
    let budget = max_q - dmin;
    let mut g = LaurentPoly::one();
    for u in &geo {
        let du = u.series_degree_q();
        let kmax = if budget < 0 { 0 } else { budget / du };
        let mut sum = Vec::new();
        let mut p = Monomial::ONE;
        for _ in 0..=kmax {
            sum.push((p, q_int(1)));
            p = p * *u;
        }
        g = mul_truncated(&g, &LaurentPoly::from_terms(sum), budget);
    }
    let full = mul_truncated(&base, &g, max_q);
    let mut grouped: BTreeMap<SExp, Vec<(Monomial, Q)>> = BTreeMap::new();
    for (m, c) in full.into_terms() {
        let e = m
            .series_exponents(nvars)
            .ok_or_else(|| Error::LatticeViolation(format!("non-integral series exponent in {m}")))?;
        grouped.entry(sexp(&e)).or_default().push((m.coeff_part(), c));
    }
    for (e, v) in grouped {
        let p = LaurentPoly::from_terms(v);
        if !p.is_zero() && total_degree(&e) <= order as i32 {
            terms.insert(e, p);
        }
    }
    Ok(QExpansion { nvars, order, coef: BracketProduct::new(1, Monomial::ONE, coef_num, coef_den)?, terms })
}

impl QExpansion {
    pub fn to_exact(&self) -> Result<TruncatedSeries<BracketFraction>> {
        let base = BracketFraction::from_bracket_product(&self.coef)?;
        let mut s = TruncatedSeries::zero(self.nvars, self.order);
        for (e, p) in &self.terms {
            s.add_term(e, base.mul_poly(p));
        }
        Ok(s)
    }

    pub fn to_modular<const P: u64>(&self, pt: &EvalPoint<P>) -> Result<TruncatedSeries<Fp<P>>> {
        let base = pt.bracket_product(&self.coef)?;
        let mut s = TruncatedSeries::zero(self.nvars, self.order);
        for (e, p) in &self.terms {
            s.add_term(e, base.mul(pt.poly(p)?));
        }
        Ok(s)
    }
}

/// A formal sum of bracket products: the argument of a plethystic exponential.
#[derive(Clone, Debug, Default)]
pub struct ExpArgument {
    pub terms: Vec<BracketProduct>,
}

impl ExpArgument {
    pub fn new(terms: Vec<BracketProduct>) -> Self {
        ExpArgument { terms: terms.into_iter().filter(|t| !t.is_zero()).collect() }
    }

    pub fn push(&mut self, bp: BracketProduct) {
        if !bp.is_zero() {
            self.terms.push(bp);
        }
    }

    pub fn extend(&mut self, o: ExpArgument) {
        self.terms.extend(o.terms);
    }

    pub fn psi(&self, n: i32) -> Self {
        ExpArgument { terms: self.terms.iter().map(|t| t.psi(n)).collect() }
    }

    pub fn neg(&self) -> Self {
        ExpArgument { terms: self.terms.iter().map(|t| t.neg()).collect() }
    }

    pub fn substitute(&self, images: &[Option<Monomial>; super::monomial::NVARS]) -> Result<Self> {
        Ok(ExpArgument::new(self.terms.iter().map(|t| t.substitute(images)).collect::<Result<Vec<_>>>()?))
    }

    /// Series of the argument itself through a coefficient converter.
    pub fn expand_with<C: Coeff, F>(&self, nvars: usize, order: u32, conv: &F) -> Result<TruncatedSeries<C>>
    where
        F: Fn(&QExpansion) -> Result<TruncatedSeries<C>>,
    {
        let mut s = TruncatedSeries::zero(nvars, order);
        for t in &self.terms {
            s = s.add(&conv(&q_expand(t, nvars, order)?)?)?;
        }
        Ok(s)
    }

    /// `Exp` of the argument, with the Adams operations applied symbolically
    /// before expansion so that any coefficient backend works.
    pub fn plethystic_exp_with<C: Coeff, F>(&self, nvars: usize, order: u32, conv: &F) -> Result<TruncatedSeries<C>>
    where
        F: Fn(&QExpansion) -> Result<TruncatedSeries<C>>,
    {
        let mut log = TruncatedSeries::zero(nvars, order);
        for n in 1..=order as i32 {
            let part = self.psi(n).expand_with(nvars, order, conv)?;
            log = log.add(&part.scale_q(&q_frac(1, n as i64)))?;
        }
        log.exp()
    }

    pub fn plethystic_exp_exact(&self, nvars: usize, order: u32) -> Result<TruncatedSeries<BracketFraction>> {
        self.plethystic_exp_with(nvars, order, &|x: &QExpansion| x.to_exact())
    }

    pub fn plethystic_exp_modular<const P: u64>(
        &self,
        nvars: usize,
        order: u32,
        pt: &EvalPoint<P>,
    ) -> Result<TruncatedSeries<Fp<P>>> {
        self.plethystic_exp_with(nvars, order, &|x: &QExpansion| x.to_modular(pt))
    }
}
