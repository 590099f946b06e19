use std::fmt;
use std::ops::{Div, Mul};

use crate::error::{Error, Result};

/// Number of variable slots in every monomial.
pub const NVARS: usize = 12;
/// Exponents are stored in units of `1/LATTICE`.
pub const LATTICE: i16 = 4;

pub const T1: usize = 0;
pub const T2: usize = 1;
pub const T3: usize = 2;
pub const T4: usize = 3;
pub const Y: usize = 4;
/// First series-variable slot.
pub const S0: usize = 5;
pub const MAX_SERIES: usize = NVARS - S0;

/// A Laurent monomial on the quarter lattice, exponents stored times four.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    e: [i16; NVARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: [0; NVARS] };

    pub fn one() -> Self {
        Self::ONE
    }

    /// Raw constructor from quarter units.
    pub fn from_quarters(e: [i16; NVARS]) -> Self {
        Monomial { e }
    }

    /// The variable in slot `i` to the first power.
    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = LATTICE;
        Monomial { e }
    }

    /// Build from integral exponents `(slot, power)`.
    pub fn from_ints(pairs: &[(usize, i32)]) -> Self {
        let mut e = [0i16; NVARS];
        for &(i, p) in pairs {
            e[i] += (p * LATTICE as i32) as i16;
        }
        Monomial { e }
    }

    /// `t1^a t2^b t3^c t4^d`.
    pub fn t(a: i32, b: i32, c: i32, d: i32) -> Self {
        Self::from_ints(&[(T1, a), (T2, b), (T3, c), (T4, d)])
    }

    pub fn quarters(&self) -> &[i16; NVARS] {
        &self.e
    }

    pub fn get(&self, i: usize) -> i16 {
        self.e[i]
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn inv(&self) -> Self {
        let mut e = self.e;
        e.iter_mut().for_each(|x| *x = -*x);
        Monomial { e }
    }

    pub fn pow(&self, n: i32) -> Self {
        let mut e = self.e;
        e.iter_mut().for_each(|x| *x = (*x as i32 * n) as i16);
        Monomial { e }
    }

    /// Square root; fails unless every exponent is on the half lattice.
    pub fn sqrt(&self) -> Result<Self> {
        if self.e.iter().any(|x| x % 2 != 0) {
            return Err(Error::LatticeViolation(format!("sqrt of {self}")));
        }
        let mut e = self.e;
        e.iter_mut().for_each(|x| *x /= 2);
        Ok(Monomial { e })
    }

    pub fn is_integral(&self) -> bool {
        self.e.iter().all(|x| x % LATTICE == 0)
    }

    /// Eliminate t4 via t4 = (t1 t2 t3)^-1.
    pub fn cy_reduce(&self) -> Self {
        let d = self.e[T4];
        if d == 0 {
            return *self;
        }
        let mut e = self.e;
        e[T1] -= d;
        e[T2] -= d;
        e[T3] -= d;
        e[T4] = 0;
        Monomial { e }
    }

    /// Bar involution on coefficient variables only.
    pub fn bar(&self) -> Self {
        let mut e = self.e;
        e[..S0].iter_mut().for_each(|x| *x = -*x);
        Monomial { e }
    }

    /// Sum of series exponents in quarter units.
    pub fn series_degree_q(&self) -> i32 {
        self.e[S0..].iter().map(|&x| x as i32).sum()
    }

    pub fn has_series(&self) -> bool {
        self.e[S0..].iter().any(|&x| x != 0)
    }

    pub fn coeff_part(&self) -> Self {
        let mut e = self.e;
        e[S0..].iter_mut().for_each(|x| *x = 0);
        Monomial { e }
    }

    pub fn series_part(&self) -> Self {
        let mut e = self.e;
        e[..S0].iter_mut().for_each(|x| *x = 0);
        Monomial { e }
    }

    /// Integral series exponents, if they are integral.
    pub fn series_exponents(&self, nseries: usize) -> Option<Vec<i32>> {
        let mut out = Vec::with_capacity(nseries);
        for (k, &x) in self.e[S0..].iter().enumerate() {
            if x % LATTICE != 0 {
                return None;
            }
            if k < nseries {
                out.push((x / LATTICE) as i32);
            } else if x != 0 {
                return None;
            }
        }
        Some(out)
    }

    pub fn from_series_exponents(exps: &[i32]) -> Self {
        let mut e = [0i16; NVARS];
        for (k, &x) in exps.iter().enumerate() {
            e[S0 + k] = (x * LATTICE as i32) as i16;
        }
        Monomial { e }
    }

    /// True when the first nonzero exponent is positive (or the monomial is 1).
    pub fn is_positively_oriented(&self) -> bool {
        match self.e.iter().find(|&&x| x != 0) {
            Some(&x) => x > 0,
            None => true,
        }
    }

    /// Returns the positively oriented representative of `{m, m^-1}` and
    /// whether inversion happened.
    pub fn orient(&self) -> (Self, bool) {
        if self.is_positively_oriented() {
            (*self, false)
        } else {
            (self.inv(), true)
        }
    }

    /// Substitute each slot by a monomial: `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Option<Monomial>; NVARS]) -> Result<Self> {
        let mut acc = [0i32; NVARS];
        for i in 0..NVARS {
            let p = self.e[i] as i32;
            if p == 0 {
                continue;
            }
            match &images[i] {
                None => acc[i] += p * LATTICE as i32,
                Some(img) => {
                    for j in 0..NVARS {
                        acc[j] += p * img.e[j] as i32;
                    }
                }
            }
        }
        let mut e = [0i16; NVARS];
        for j in 0..NVARS {
            if acc[j] % LATTICE as i32 != 0 {
                return Err(Error::LatticeViolation(format!("substitution into {self}")));
            }
            let v = acc[j] / LATTICE as i32;
            e[j] = i16::try_from(v).map_err(|_| Error::LatticeViolation(format!("overflow in {self}")))?;
        }
        Ok(Monomial { e })
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &x) in self.e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = names.get(i).map(String::as_str).unwrap_or("?");
            if x == LATTICE {
                parts.push(name.to_string());
            } else if x % LATTICE == 0 {
                parts.push(format!("{name}^{}", x / LATTICE));
            } else {
                let g = num_integer::gcd(x.abs(), LATTICE);
                parts.push(format!("{name}^({}/{})", x / g, LATTICE / g));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut e = self.e;
        for i in 0..NVARS {
            e[i] += rhs.e[i];
        }
        Monomial { e }
    }
}

impl Div for Monomial {
    type Output = Monomial;
    fn div(self, rhs: Monomial) -> Monomial {
        let mut e = self.e;
        for i in 0..NVARS {
            e[i] -= rhs.e[i];
        }
        Monomial { e }
    }
}

pub fn default_names() -> Vec<String> {
    let mut v: Vec<String> = ["t1", "t2", "t3", "t4", "y"].iter().map(|s| s.to_string()).collect();
    v.extend((0..MAX_SERIES).map(|k| format!("q{k}")));
    v
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names()))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Variable names and the CY relation mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    pub coeff_vars: Vec<String>,
    pub series_vars: Vec<String>,
    pub cy_reduced: bool,
}

impl VarTable {
    pub fn new(series_vars: Vec<String>) -> Result<Self> {
        let coeff_vars: Vec<String> = ["t1", "t2", "t3", "t4", "y"].iter().map(|s| s.to_string()).collect();
        if series_vars.len() > MAX_SERIES {
            return Err(Error::Invalid(format!("at most {MAX_SERIES} series variables")));
        }
        let mut all: Vec<&String> = coeff_vars.iter().chain(series_vars.iter()).collect();
        all.sort();
        all.dedup();
        if all.len() != coeff_vars.len() + series_vars.len() {
            return Err(Error::Invalid("duplicate variable names".into()));
        }
        Ok(VarTable { coeff_vars, series_vars, cy_reduced: true })
    }

    pub fn indexed(prefix: &str, n: usize) -> Self {
        Self::new((0..n).map(|k| format!("{prefix}{k}")).collect()).expect("indexed names are unique")
    }

    pub fn nseries(&self) -> usize {
        self.series_vars.len()
    }

    pub fn names(&self) -> Vec<String> {
        let mut v = self.coeff_vars.clone();
        v.extend(self.series_vars.iter().cloned());
        v
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        m.fmt_with(&self.names())
    }

    pub fn reduce(&self, m: &Monomial) -> Monomial {
        if self.cy_reduced {
            m.cy_reduce()
        } else {
            *m
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cy_reduce_is_idempotent_and_kills_t4() {
        let m = Monomial::t(1, -2, 0, 3);
        let r = m.cy_reduce();
        assert_eq!(r.get(T4), 0);
        assert_eq!(r, r.cy_reduce());
        assert_eq!(r, Monomial::t(-2, -5, -3, 0));
    }

    #[test]
    fn orientation_flips_negative_leading_exponent() {
        let m = Monomial::t(-1, 2, 0, 0);
        let (o, flipped) = m.orient();
        assert!(flipped);
        assert_eq!(o, Monomial::t(1, -2, 0, 0));
    }

    #[test]
    fn sqrt_requires_half_lattice() {
        let m = Monomial::from_quarters([2, 0, 0, 0, 2, 4, 0, 0, 0, 0, 0, 0]);
        assert!(m.sqrt().is_ok());
        assert!(m.sqrt().unwrap().sqrt().is_err());
    }

    #[test]
    fn display_uses_fractional_powers() {
        let m = Monomial::from_quarters([2, -4, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(m.to_string(), "t1^(1/2)*t2^-1*y^(1/4)");
    }

    #[test]
    fn var_table_rejects_duplicates() {
        assert!(VarTable::new(vec!["q".into(), "q".into()]).is_err());
        assert!(VarTable::new(vec!["y".into()]).is_err());
        assert_eq!(VarTable::indexed("q", 3).nseries(), 3);
    }
}
