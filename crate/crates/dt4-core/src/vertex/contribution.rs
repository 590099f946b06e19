use std::fmt;

use super::class::{vertex_class_for, Twist};
use crate::error::{Error, Result};
use crate::exactalg::{bracket_class, BracketProduct};
use crate::partitions::{color_counts, ColorProfile, GroupAction, SolidPartition};

/// Sign exponent as an integer functional of the partition:
/// `r0 * |pi|_{R0} + size * |pi| + diag * #{(a,a,a,d): a<d} + constant`.
/// The empty partition always gets sign `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignRule {
    pub r0: i64,
    pub size: i64,
    pub diag: i64,
    pub constant: i64,
}

impl Default for SignRule {
    fn default() -> Self {
        SignRule { r0: 1, size: 0, diag: 1, constant: 0 }
    }
}

impl SignRule {
    /// The default with the diagonal term dropped.
    pub fn no_diag() -> Self {
        SignRule { diag: 0, ..Self::default() }
    }

    /// The default negated on every nonempty partition.
    pub fn flipped() -> Self {
        SignRule { constant: 1, ..Self::default() }
    }

    /// `default`, `no-diag`, `flipped`, or a sum of terms such as `r0+diag`,
    /// `size+2*diag+1`, `-r0`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "default" => return Ok(Self::default()),
            "no-diag" => return Ok(Self::no_diag()),
            "flipped" => return Ok(Self::flipped()),
            _ => {}
        }
        let bad = || Error::Invalid(format!("sign rule {spec:?}"));
        let mut rule = SignRule { r0: 0, size: 0, diag: 0, constant: 0 };
        let normalized = spec.replace(' ', "").replace('-', "+-");
        for term in normalized.split('+').filter(|t| !t.is_empty()) {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term),
            };
            let (coef, name) = match body.split_once('*') {
                Some((c, n)) => (c.parse::<i64>().map_err(|_| bad())?, n),
                None => match body.parse::<i64>() {
                    Ok(c) => (c, "1"),
                    Err(_) => (1, body),
                },
            };
            let coef = if neg { -coef } else { coef };
            match name {
                "r0" => rule.r0 += coef,
                "size" => rule.size += coef,
                "diag" => rule.diag += coef,
                "1" => rule.constant += coef,
                _ => return Err(bad()),
            }
        }
        Ok(rule)
    }

    pub fn exponent(&self, p: &SolidPartition, action: Option<&GroupAction>) -> i64 {
        if p.is_empty() {
            return 0;
        }
        let r0 = match action {
            Some(g) => p.boxes().iter().filter(|b| g.color_of_point(b) == 0).count(),
            None => p.len(),
        } as i64;
        self.r0 * r0 + self.size * p.len() as i64 + self.diag * p.diagonal_count() as i64 + self.constant
    }

    pub fn sign(&self, p: &SolidPartition, action: Option<&GroupAction>) -> i8 {
        if self.exponent(p, action).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for SignRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, n) in [(self.r0, "r0"), (self.size, "size"), (self.diag, "diag")] {
            match c {
                0 => {}
                1 => parts.push(n.to_string()),
                _ => parts.push(format!("{c}*{n}")),
            }
        }
        if self.constant != 0 || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        f.write_str(&parts.join("+").replace("+-", "-"))
    }
}

/// Signed value of one torus fixed point. `value` carries no series variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub sign: i8,
    pub value: BracketProduct,
    pub partition: SolidPartition,
    pub profile: ColorProfile,
}

impl Contribution {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `sign * value` as one bracket product.
    pub fn signed_value(&self) -> BracketProduct {
        self.value.with_sign(self.sign)
    }
}

pub fn profile_of(p: &SolidPartition, action: Option<&GroupAction>) -> ColorProfile {
    match action {
        Some(g) => color_counts(p, g),
        None => ColorProfile(vec![p.len() as u32]),
    }
}

/// `(-1)^sigma [-v~]`, with `v~` replaced by its G-fixed part under an action.
pub fn contribution(p: &SolidPartition, action: Option<&GroupAction>, rule: &SignRule) -> Result<Contribution> {
    let v = vertex_class_for(p, Twist::Nekrasov, action);
    let c1 = v.trivial_coeff();
    if c1 > 0 {
        return Err(Error::TrivialWeightInDenominator(format!("trivial coefficient {c1}")).at_partition(p.id()));
    }
    let value = bracket_class(&v.scale(-1)).map_err(|e| e.at_partition(p.id()))?;
    Ok(Contribution { sign: rule.sign(p, action), value, partition: p.clone(), profile: profile_of(p, action) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Monomial, Y};

    fn origin() -> SolidPartition {
        SolidPartition::new(vec![[0, 0, 0, 0]]).unwrap()
    }

    #[test]
    fn single_box_value() {
        let c = contribution(&origin(), None, &SignRule::default()).unwrap();
        let t = |a, b, c| Monomial::t(a, b, c, 0);
        let expect = BracketProduct::new(
            1,
            Monomial::ONE,
            vec![Monomial::var(Y), t(1, 1, 0), t(1, 0, 1), t(0, 1, 1)],
            vec![t(1, 0, 0), t(0, 1, 0), t(0, 0, 1), Monomial::t(0, 0, 0, 1).cy_reduce()],
        )
        .unwrap();
        assert_eq!(c.sign, -1);
        assert_eq!(c.value, expect);
    }

    #[test]
    fn empty_is_one() {
        let c = contribution(&SolidPartition::empty(), None, &SignRule::default()).unwrap();
        assert_eq!((c.sign, c.value), (1, BracketProduct::one()));
    }

    #[test]
    fn z2_single_box() {
        let g = GroupAction::zr(2).unwrap();
        let c = contribution(&origin(), Some(&g), &SignRule::default()).unwrap();
        let expect = BracketProduct::new(
            1,
            Monomial::ONE,
            vec![Monomial::var(Y), Monomial::t(1, 1, 0, 0)],
            vec![Monomial::t(0, 0, 1, 0), Monomial::t(0, 0, 0, 1).cy_reduce()],
        )
        .unwrap();
        assert_eq!(c.sign, -1);
        assert_eq!(c.value, expect);
    }

    #[test]
    fn sign_rule_parsing() {
        assert_eq!(SignRule::parse("r0+diag").unwrap(), SignRule::default());
        assert_eq!(SignRule::parse("r0").unwrap(), SignRule::no_diag());
        assert_eq!(SignRule::parse("r0+diag+1").unwrap(), SignRule::flipped());
        let r = SignRule::parse("size-2*diag").unwrap();
        assert_eq!((r.size, r.diag), (1, -2));
        assert_eq!(SignRule::parse(&r.to_string()).unwrap(), r);
        assert!(SignRule::parse("colour").is_err());
        let p = SolidPartition::new(vec![[0, 0, 0, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(SignRule::default().exponent(&p, None), 3);
    }
}
