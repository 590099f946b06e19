use crate::exactalg::{KClass, Monomial, T1, T2, T3, T4, Y};
use crate::partitions::{character_unreduced, GroupAction, SolidPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    None,
    /// Adds `-Zbar * y`, the tautological insertion.
    Nekrasov,
}

/// `(1 - t1^{-1})(1 - t2^{-1})(1 - t3^{-1})`.
fn p123_bar() -> KClass {
    let mut p = KClass::monomial(Monomial::ONE, 1);
    for i in [T1, T2, T3] {
        let f = KClass::from_terms([(Monomial::ONE, 1), (Monomial::var(i).inv(), -1)]);
        p = p.mul(&f);
    }
    p
}

/// `v = Z - P123bar Z Zbar` (optionally `- Zbar y`) in the four-variable ring.
pub fn vertex_class_unreduced(p: &SolidPartition, twist: Twist) -> KClass {
    let z = character_unreduced(p);
    let zb = z.bar();
    let mut v = z.sub(&p123_bar().mul(&z).mul(&zb));
    if twist == Twist::Nekrasov {
        v = v.sub(&zb.mul_monomial(&Monomial::var(Y)));
    }
    v
}

pub fn vertex_class(p: &SolidPartition, twist: Twist) -> KClass {
    vertex_class_unreduced(p, twist).cy_reduce()
}

/// Monomials of trivial G-weight; `y` is G-invariant.
pub fn g_fixed_part(v: &KClass, action: &GroupAction) -> KClass {
    v.filter(|m| action.is_invariant(m))
}

pub fn vertex_class_for(p: &SolidPartition, twist: Twist, action: Option<&GroupAction>) -> KClass {
    let v = vertex_class(p, twist);
    match action {
        Some(g) => g_fixed_part(&v, g),
        None => v,
    }
}

/// `T^vir = Z + Zbar/(t1t2t3t4) - P1234 Z Zbar/(t1t2t3t4)`, CY-reduced.
pub fn virtual_tangent(p: &SolidPartition) -> KClass {
    let z = character_unreduced(p);
    let zb = z.bar();
    let kinv = Monomial::t(-1, -1, -1, -1);
    let mut p1234 = KClass::monomial(Monomial::ONE, 1);
    for i in [T1, T2, T3, T4] {
        p1234 = p1234.mul(&KClass::from_terms([(Monomial::ONE, 1), (Monomial::var(i), -1)]));
    }
    z.add(&zb.mul_monomial(&kinv)).sub(&p1234.mul(&z).mul(&zb).mul_monomial(&kinv)).cy_reduce()
}

/// The tautological part `Zbar y + Z y^{-1}` that the twist removes from `T^vir`.
pub fn tautological_pair(p: &SolidPartition) -> KClass {
    let z = character_unreduced(p);
    let y = Monomial::var(Y);
    z.bar().mul_monomial(&y).add(&z.mul_monomial(&y.inv())).cy_reduce()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin() -> SolidPartition {
        SolidPartition::new(vec![[0, 0, 0, 0]]).unwrap()
    }

    fn single_box_untwisted() -> KClass {
        let t = |a, b, c| Monomial::t(a, b, c, 0);
        KClass::from_terms([
            (t(-1, 0, 0), 1),
            (t(0, -1, 0), 1),
            (t(0, 0, -1), 1),
            (t(-1, -1, 0), -1),
            (t(-1, 0, -1), -1),
            (t(0, -1, -1), -1),
            (Monomial::var(T4).cy_reduce(), 1),
        ])
    }

    #[test]
    fn single_box_classes() {
        assert_eq!(vertex_class(&origin(), Twist::None), single_box_untwisted());
        let tw = single_box_untwisted().sub(&KClass::monomial(Monomial::var(Y), 1));
        assert_eq!(vertex_class(&origin(), Twist::Nekrasov), tw);
        assert!(vertex_class(&SolidPartition::empty(), Twist::Nekrasov).is_zero());
    }

    #[test]
    fn z2_fixed_part_of_single_box() {
        let g = GroupAction::zr(2).unwrap();
        let v = g_fixed_part(&vertex_class(&origin(), Twist::Nekrasov), &g);
        let expect = KClass::from_terms([
            (Monomial::var(Y), -1),
            (Monomial::t(0, 0, -1, 0), 1),
            (Monomial::t(-1, -1, 0, 0), -1),
            (Monomial::var(T4).cy_reduce(), 1),
        ]);
        assert_eq!(v, expect);
        let odd = KClass::from_terms([(Monomial::var(T1), 1), (Monomial::var(T2), -1)]);
        assert!(g_fixed_part(&odd, &g).is_zero());
    }
}
