use std::collections::BTreeMap;
use std::fmt;

use super::monomial::{Monomial, NVARS, T4};
use super::poly::{q_int, LaurentPoly};
use crate::error::{Error, Result};

/// `[m] = m^{1/2} - m^{-1/2}`.
pub fn bracket(m: &Monomial) -> Result<LaurentPoly> {
    if m.is_one() {
        return Ok(LaurentPoly::zero());
    }
    let h = m.sqrt()?;
    Ok(LaurentPoly::from_terms([(h, q_int(1)), (h.inv(), q_int(-1))]))
}

/// Integer-coefficient class in the representation ring, stored CY-reduced
/// by the callers that need it.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KClass {
    terms: BTreeMap<Monomial, i64>,
}

impl KClass {
    pub fn zero() -> Self {
        KClass::default()
    }

    pub fn monomial(m: Monomial, c: i64) -> Self {
        let mut k = KClass::zero();
        k.add_term(m, c);
        k
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(it: I) -> Self {
        let mut k = KClass::zero();
        for (m, c) in it {
            k.add_term(m, c);
        }
        k
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
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

    pub fn coeff(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn trivial_coeff(&self) -> i64 {
        self.coeff(&Monomial::ONE)
    }

    /// Virtual rank: evaluation at all weights equal to 1.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, o: &KClass) -> KClass {
        let mut k = self.clone();
        for (m, c) in &o.terms {
            k.add_term(*m, *c);
        }
        k
    }

    pub fn sub(&self, o: &KClass) -> KClass {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, s: i64) -> KClass {
        KClass::from_terms(self.terms.iter().map(|(m, c)| (*m, c * s)))
    }

    pub fn mul(&self, o: &KClass) -> KClass {
        let mut k = KClass::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                k.add_term(*a * *b, ca * cb);
            }
        }
        k
    }

    pub fn mul_monomial(&self, m: &Monomial) -> KClass {
        KClass::from_terms(self.terms.iter().map(|(a, c)| (*a * *m, *c)))
    }

    pub fn bar(&self) -> KClass {
        KClass::from_terms(self.terms.iter().map(|(m, c)| (m.bar(), *c)))
    }

    pub fn cy_reduce(&self) -> KClass {
        KClass::from_terms(self.terms.iter().map(|(m, c)| (m.cy_reduce(), *c)))
    }

    pub fn is_cy_reduced(&self) -> bool {
        self.terms.keys().all(|m| m.get(T4) == 0)
    }

    pub fn filter<F: FnMut(&Monomial) -> bool>(&self, mut keep: F) -> KClass {
        KClass::from_terms(self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, *c)))
    }

    pub fn map_monomials<F: FnMut(&Monomial) -> Monomial>(&self, mut f: F) -> KClass {
        KClass::from_terms(self.terms.iter().map(|(m, c)| (f(m), *c)))
    }

    pub fn substitute(&self, images: &[Option<Monomial>; NVARS]) -> Result<KClass> {
        let mut k = KClass::zero();
        for (m, c) in &self.terms {
            k.add_term(m.substitute(images)?, *c);
        }
        Ok(k)
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, q_int(*c))))
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| match c {
                1 => m.to_string(),
                _ => format!("{c}*{m}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `sign * prefactor * prod [num] / prod [den]`, canonical: every argument is
/// positively oriented, both lists sorted, common factors cancelled.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BracketProduct {
    sign: i8,
    prefactor: Monomial,
    num: Vec<Monomial>,
    den: Vec<Monomial>,
}

impl BracketProduct {
    pub fn one() -> Self {
        BracketProduct { sign: 1, prefactor: Monomial::ONE, num: vec![], den: vec![] }
    }

    pub fn new(sign: i8, prefactor: Monomial, num: Vec<Monomial>, den: Vec<Monomial>) -> Result<Self> {
        let mut s = if sign < 0 { -1 } else { 1 };
        let mut orient = |v: Vec<Monomial>| -> Result<Vec<Monomial>> {
            let mut out = Vec::with_capacity(v.len());
            for m in v {
                if m.quarters().iter().any(|x| x % 2 != 0) {
                    return Err(Error::LatticeViolation(format!("bracket argument {m}")));
                }
                let (o, flipped) = m.orient();
                if flipped {
                    s = -s;
                }
                out.push(o);
            }
            out.sort_unstable();
            Ok(out)
        };
        let num = orient(num)?;
        let den = orient(den)?;
        if let Some(m) = den.iter().find(|m| m.is_one()) {
            return Err(Error::TrivialWeightInDenominator(m.to_string()));
        }
        let mut bp = BracketProduct { sign: s, prefactor, num, den };
        bp.cancel();
        Ok(bp)
    }

    fn cancel(&mut self) {
        let (mut i, mut j) = (0, 0);
        let mut num = Vec::with_capacity(self.num.len());
        let mut den = Vec::with_capacity(self.den.len());
        while i < self.num.len() && j < self.den.len() {
            match self.num[i].cmp(&self.den[j]) {
                std::cmp::Ordering::Less => {
                    num.push(self.num[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    den.push(self.den[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        num.extend_from_slice(&self.num[i..]);
        den.extend_from_slice(&self.den[j..]);
        self.num = num;
        self.den = den;
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn prefactor(&self) -> Monomial {
        self.prefactor
    }

    pub fn num(&self) -> &[Monomial] {
        &self.num
    }

    pub fn den(&self) -> &[Monomial] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().any(|m| m.is_one())
    }

    pub fn neg(&self) -> Self {
        let mut b = self.clone();
        b.sign = -b.sign;
        b
    }

    pub fn with_sign(&self, s: i8) -> Self {
        let mut b = self.clone();
        b.sign *= if s < 0 { -1 } else { 1 };
        b
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut b = self.clone();
        b.prefactor = b.prefactor * *m;
        b
    }

    pub fn mul(&self, o: &BracketProduct) -> Self {
        let mut num = self.num.clone();
        num.extend_from_slice(&o.num);
        let mut den = self.den.clone();
        den.extend_from_slice(&o.den);
        num.sort_unstable();
        den.sort_unstable();
        let mut b = BracketProduct { sign: self.sign * o.sign, prefactor: self.prefactor * o.prefactor, num, den };
        b.cancel();
        b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::TrivialWeightInDenominator("inverse of zero".into()));
        }
        Ok(BracketProduct { sign: self.sign, prefactor: self.prefactor.inv(), num: self.den.clone(), den: self.num.clone() })
    }

    /// Adams operation: every exponent, including those inside brackets, times `n`.
    pub fn psi(&self, n: i32) -> Self {
        let map = |v: &[Monomial]| {
            let mut o: Vec<Monomial> = v.iter().map(|m| m.pow(n)).collect();
            o.sort_unstable();
            o
        };
        BracketProduct { sign: self.sign, prefactor: self.prefactor.pow(n), num: map(&self.num), den: map(&self.den) }
    }

    /// Homomorphic substitution inside prefactor and bracket arguments.
    pub fn substitute(&self, images: &[Option<Monomial>; NVARS]) -> Result<Self> {
        let sub = |v: &[Monomial]| -> Result<Vec<Monomial>> { v.iter().map(|m| m.substitute(images)).collect() };
        BracketProduct::new(self.sign, self.prefactor.substitute(images)?, sub(&self.num)?, sub(&self.den)?)
    }

    pub fn cy_reduce(&self) -> Result<Self> {
        let red = |v: &[Monomial]| v.iter().map(|m| m.cy_reduce()).collect::<Vec<_>>();
        BracketProduct::new(self.sign, self.prefactor.cy_reduce(), red(&self.num), red(&self.den))
    }

    /// Expanded numerator including sign and prefactor.
    pub fn num_poly(&self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::monomial(self.prefactor, q_int(self.sign as i64));
        for m in &self.num {
            acc = &acc * &bracket(m)?;
        }
        Ok(acc)
    }

    pub fn den_poly(&self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        for m in &self.den {
            acc = &acc * &bracket(m)?;
        }
        Ok(acc)
    }

    pub fn has_series(&self) -> bool {
        self.prefactor.has_series() || self.num.iter().chain(self.den.iter()).any(|m| m.has_series())
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        if self.sign < 0 {
            s.push('-');
        }
        let mut head = Vec::new();
        if !self.prefactor.is_one() {
            head.push(self.prefactor.fmt_with(names));
        }
        head.extend(self.num.iter().map(|m| format!("[{}]", m.fmt_with(names))));
        if head.is_empty() {
            head.push("1".into());
        }
        s.push_str(&head.join("*"));
        if !self.den.is_empty() {
            let d: Vec<String> = self.den.iter().map(|m| format!("[{}]", m.fmt_with(names))).collect();
            s.push_str(&format!("/({})", d.join("*")));
        }
        s
    }
}

impl fmt::Display for BracketProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&super::monomial::default_names()))
    }
}

impl fmt::Debug for BracketProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[V] = prod [m]^{c_m}` for `V = sum c_m m`. A positive trivial coefficient
/// puts `[1] = 0` in the numerator; a negative one is a non-movable class.
pub fn bracket_class(v: &KClass) -> Result<BracketProduct> {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (m, &c) in v.terms() {
        let m = m.cy_reduce();
        if m.is_one() && c < 0 {
            return Err(Error::TrivialWeightInDenominator(format!("coefficient {c} of the trivial weight in {v}")));
        }
        let target = if c > 0 { &mut num } else { &mut den };
        for _ in 0..c.unsigned_abs() {
            target.push(m);
        }
    }
    BracketProduct::new(1, Monomial::ONE, num, den)
}
