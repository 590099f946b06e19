use crate::error::{Error, Result};
use crate::exactalg::{BracketProduct, Monomial, T1, T4, Y};

use super::nekrasov::q_interval;
use super::Family;

/// Genus-zero K-theoretic GV invariant `P_{1,beta}` of a positive curve
/// class on the crepant resolution.
#[derive(Clone, Debug)]
pub struct PositiveClass {
    pub name: String,
    /// Coordinates in the basis of exceptional curves.
    pub coords: Vec<u32>,
    /// `Q^beta` written in the orbifold series variables.
    pub q: Monomial,
    pub gv: BracketProduct,
}

#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub family: Family,
    pub basis: Vec<String>,
    pub classes: Vec<PositiveClass>,
}

#[derive(Clone, Debug)]
pub enum GvValue {
    Root(BracketProduct),
    NotPositiveRoot,
}

fn bp(num: &[Monomial], den: &[Monomial]) -> BracketProduct {
    BracketProduct::new(1, Monomial::ONE, num.to_vec(), den.to_vec())
        .and_then(|b| b.cy_reduce())
        .expect("static table")
}

fn t(a: i32, b: i32, c: i32) -> Monomial {
    Monomial::t(a, b, c, 0)
}

fn class_name(basis: &[String], coords: &[u32]) -> String {
    let parts: Vec<String> = basis
        .iter()
        .zip(coords)
        .filter(|(_, &c)| c > 0)
        .map(|(b, &c)| if c == 1 { b.clone() } else { format!("{c}{b}") })
        .collect();
    parts.join("+")
}

pub fn root_system(family: Family) -> RootSystemData {
    let y = Monomial::var(Y);
    let t4 = Monomial::var(T4);
    match family {
        Family::Zr(r) => {
            let n = r as usize;
            let basis: Vec<String> = (1..n).map(|k| format!("b{k}")).collect();
            let mut classes = Vec::new();
            for i in 1..n {
                for j in i..n {
                    let coords: Vec<u32> = (1..n).map(|k| (i <= k && k <= j) as u32).collect();
                    classes.push(PositiveClass {
                        name: class_name(&basis, &coords),
                        coords,
                        q: q_interval(n, i, j),
                        gv: bp(&[t(0, 0, 1) * t4, y], &[t(0, 0, 1), t4]),
                    });
                }
            }
            RootSystemData { family, basis, classes }
        }
        Family::Z2Z2 => {
            let basis: Vec<String> = ["b10", "b01", "b11"].iter().map(|s| s.to_string()).collect();
            let unit = bp(&[y], &[t4]);
            let table: Vec<([u32; 3], BracketProduct)> = vec![
                ([0, 1, 0], unit.clone()),
                ([1, 0, 0], unit.clone()),
                ([0, 0, 1], unit.clone()),
                ([1, 1, 1], unit),
                ([1, 1, 0], bp(&[t(1, 1, -1), y], &[t(0, 0, 2), t4])),
                ([1, 0, 1], bp(&[t(1, -1, 1), y], &[t(0, 2, 0), t4])),
                ([0, 1, 1], bp(&[t(-1, 1, 1), y], &[t(2, 0, 0), t4])),
            ];
            let classes = table
                .into_iter()
                .map(|(c, gv)| PositiveClass {
                    name: class_name(&basis, &c),
                    coords: c.to_vec(),
                    q: Monomial::from_series_exponents(&[0, c[0] as i32, c[1] as i32, c[2] as i32]),
                    gv,
                })
                .collect();
            RootSystemData { family, basis, classes }
        }
    }
}

/// Parse `b1+2b3`, `b10+b01`, `2*b1` against a basis.
pub fn parse_class(basis: &[String], s: &str) -> Result<Vec<u32>> {
    let mut coords = vec![0u32; basis.len()];
    for term in s.split('+') {
        let term = term.trim().replace('*', "");
        let split = term.find(|c: char| !c.is_ascii_digit()).ok_or_else(|| Error::UnknownClass(s.into()))?;
        let (k, name) = term.split_at(split);
        let k: u32 = if k.is_empty() { 1 } else { k.parse().map_err(|_| Error::UnknownClass(s.into()))? };
        let i = basis.iter().position(|b| b == name).ok_or_else(|| Error::UnknownClass(s.into()))?;
        coords[i] += k;
    }
    Ok(coords)
}

/// GV invariant of a named class; classes that are not positive roots get
/// the tag `NotPositiveRoot` (value zero).
pub fn gv_invariant(family: Family, class: &str) -> Result<GvValue> {
    let data = root_system(family);
    let coords = parse_class(&data.basis, class)?;
    Ok(match data.classes.iter().find(|c| c.coords == coords) {
        Some(c) => GvValue::Root(c.gv.clone()),
        None => GvValue::NotPositiveRoot,
    })
}

pub const A5_HYPOTHESIS: &str = "Ext^1_Y(O_C, O_C)^T = 0 for every torus-fixed curve C";

/// Genus-zero GV invariants for the A5 quotient in variables `t` (slot t1)
/// and `t4`, subject to `t^3 t4 = 1`; recorded as data, valid under
/// [`A5_HYPOTHESIS`].
#[derive(Clone, Debug)]
pub struct A5Class {
    pub coords: [u32; 4],
    pub gv: BracketProduct,
}

pub fn a5_table() -> Vec<A5Class> {
    let tt = Monomial::var(T1);
    let t4 = Monomial::var(T4);
    let y = Monomial::var(Y);
    let raw = |num: Vec<Monomial>, den: Vec<Monomial>| BracketProduct::new(1, Monomial::ONE, num, den).expect("static");
    vec![
        A5Class { coords: [3, 5, 4, 3], gv: raw(vec![y], vec![t4]) },
        A5Class { coords: [2, 4, 4, 2], gv: raw(vec![tt, y], vec![tt.pow(2), t4]) },
        A5Class { coords: [2, 4, 3, 2], gv: raw(vec![tt.pow(2), y], vec![tt, t4]) },
        A5Class { coords: [1, 2, 2, 1], gv: raw(vec![tt.pow(2), tt.pow(2), y], vec![tt, tt, t4]) },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zr_roots_are_intervals() {
        let d = root_system(Family::Zr(4));
        assert_eq!(d.classes.len(), 6);
        assert_eq!(d.classes[1].name, "b1+b2");
        assert!(matches!(gv_invariant(Family::Zr(4), "b2+b3").unwrap(), GvValue::Root(_)));
        assert!(matches!(gv_invariant(Family::Zr(4), "b1+b3").unwrap(), GvValue::NotPositiveRoot));
        assert!(matches!(gv_invariant(Family::Zr(4), "2b1").unwrap(), GvValue::NotPositiveRoot));
        assert!(matches!(gv_invariant(Family::Zr(4), "b9"), Err(Error::UnknownClass(_))));
    }

    #[test]
    fn z2z2_table() {
        let d = root_system(Family::Z2Z2);
        assert_eq!(d.classes.len(), 7);
        assert!(matches!(gv_invariant(Family::Z2Z2, "b10+b01").unwrap(), GvValue::Root(_)));
        assert!(matches!(gv_invariant(Family::Z2Z2, "2b10").unwrap(), GvValue::NotPositiveRoot));
    }

    #[test]
    fn a5_data() {
        assert_eq!(a5_table().len(), 4);
        assert!(A5_HYPOTHESIS.contains("Ext^1"));
    }
}
