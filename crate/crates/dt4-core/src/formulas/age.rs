use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactalg::{q_frac, Q};
use crate::partitions::GroupAction;

/// `age(g) = sum a_i / r` for `g = diag(zeta^{a_1}, .., zeta^{a_4})`, `0 <= a_i < r`.
pub fn age(r: u32, a: [u32; 4]) -> Result<Q> {
    if r == 0 {
        return Err(Error::Invalid("order 0".into()));
    }
    let a = a.map(|x| x % r);
    let s: u32 = a.iter().sum();
    if s % r != 0 {
        return Err(Error::NotSU4(format!("{a:?} mod {r}")));
    }
    let (n, d) = (s as i64, r as i64);
    let g = n.gcd(&d);
    Ok(q_frac(n / g, d / g))
}

/// First group element of age greater than one, if any.
pub fn age_witness(g: &GroupAction) -> Result<Option<([u32; 4], u32)>> {
    let (l, elems) = g.elements();
    for e in elems {
        if age(l, e)? > q_frac(1, 1) {
            return Ok(Some((e, l)));
        }
    }
    Ok(None)
}

pub fn is_age_at_most_one(g: &GroupAction) -> Result<bool> {
    Ok(age_witness(g)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ages() {
        assert_eq!(age(3, [1, 1, 1, 0]).unwrap(), q_frac(1, 1));
        assert_eq!(age(3, [2, 2, 2, 0]).unwrap(), q_frac(2, 1));
        assert!(matches!(age(3, [1, 0, 0, 0]), Err(Error::NotSU4(_))));
    }

    #[test]
    fn classification() {
        assert!(is_age_at_most_one(&GroupAction::zr(5).unwrap()).unwrap());
        assert!(is_age_at_most_one(&GroupAction::z2z2()).unwrap());
        let w = age_witness(&GroupAction::z3age2()).unwrap().unwrap();
        assert_eq!(w, ([2, 2, 2, 0], 3));
    }
}
