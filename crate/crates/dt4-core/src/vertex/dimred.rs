use super::class::{vertex_class_for, Twist};
use super::contribution::{profile_of, Contribution, SignRule};
use crate::error::{Error, Result};
use crate::exactalg::{bracket_class, images, KClass, Monomial, T4, Y};
use crate::partitions::{GroupAction, SolidPartition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Zero,
    Value(Contribution),
}

/// `v~` (G-fixed) at `y = t4`, CY-reduced.
pub fn reduced_class(p: &SolidPartition, action: Option<&GroupAction>) -> Result<KClass> {
    let v = vertex_class_for(p, Twist::Nekrasov, action);
    Ok(v.substitute(&images(&[(Y, Monomial::var(T4))]))?.cy_reduce())
}

/// Specialization `y = t4` of a fixed-point contribution. The returned sign is
/// the four-dimensional one times `(-1)^{|pi|_{R0}}`; the three-dimensional
/// series is then read with `q0 -> -q0`.
pub fn dimensional_reduce(p: &SolidPartition, action: Option<&GroupAction>, rule: &SignRule) -> Result<Reduced> {
    let v = reduced_class(p, action)?;
    let c1 = v.trivial_coeff();
    if c1 < 0 {
        return Ok(Reduced::Zero);
    }
    if c1 > 0 {
        return Err(Error::PoleAtReduction(p.id()));
    }
    let value = bracket_class(&v.scale(-1)).map_err(|e| e.at_partition(p.id()))?;
    let profile = profile_of(p, action);
    let flip = if profile.0[0] % 2 == 1 { -1 } else { 1 };
    Ok(Reduced::Value(Contribution { sign: rule.sign(p, action) * flip, value, partition: p.clone(), profile }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::BracketProduct;

    #[test]
    fn box_in_fourth_direction_vanishes() {
        let p = SolidPartition::new(vec![[0, 0, 0, 0], [0, 0, 0, 1]]).unwrap();
        assert_eq!(dimensional_reduce(&p, None, &SignRule::default()).unwrap(), Reduced::Zero);
    }

    #[test]
    fn single_box_reduces_to_3d_vertex() {
        let p = SolidPartition::new(vec![[0, 0, 0, 0]]).unwrap();
        let Reduced::Value(c) = dimensional_reduce(&p, None, &SignRule::default()).unwrap() else { panic!() };
        let t = |a, b, c| Monomial::t(a, b, c, 0);
        let expect =
            BracketProduct::new(1, Monomial::ONE, vec![t(1, 1, 0), t(1, 0, 1), t(0, 1, 1)], vec![t(1, 0, 0), t(0, 1, 0), t(0, 0, 1)])
                .unwrap();
        assert_eq!(c.value, expect);
        assert_eq!(c.sign, 1);
        let e = dimensional_reduce(&SolidPartition::empty(), None, &SignRule::default()).unwrap();
        assert_eq!(e, Reduced::Value(Contribution {
            sign: 1,
            value: BracketProduct::one(),
            partition: SolidPartition::empty(),
            profile: profile_of(&SolidPartition::empty(), None),
        }));
    }
}
