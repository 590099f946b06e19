//! MacMahon-type closed forms for the cohomological and insertion-free limits.

use num_integer::Integer;

use super::Family;
use crate::error::Result;
use crate::exactalg::series::sexp;
use crate::exactalg::{q_int, Atom, Frac, LaurentPoly, Q, TruncatedSeries};
use crate::vertex::{CohomFraction, LinearForm};

/// `prod num / prod den` over integer linear forms in `(lambda1, lambda2, lambda3, m)`.
pub fn ratio(num: &[[i64; 4]], den: &[[i64; 4]]) -> CohomFraction {
    let mut p = LaurentPoly::constant(q_int(1));
    for f in num {
        p = &p * &LinearForm(*f).expand();
    }
    let mut scalar = Q::from_integer(1.into());
    let mut atoms = Vec::new();
    for f in den {
        let g = f.iter().fold(0i64, |a, &b| a.gcd(&b));
        let lead = *f.iter().find(|&&x| x != 0).expect("nonzero form");
        let g = if lead < 0 { -g } else { g };
        scalar /= Q::from_integer(g.into());
        atoms.push(LinearForm(f.map(|x| x / g)));
    }
    Frac::new(p.scale(&scalar), atoms)
}

const L1: [i64; 4] = [1, 0, 0, 0];
const L2: [i64; 4] = [0, 1, 0, 0];
const L3: [i64; 4] = [0, 0, 1, 0];
const M: [i64; 4] = [0, 0, 0, 1];
/// `lambda1 + lambda2 + lambda3 = -lambda4`.
const L123: [i64; 4] = [1, 1, 1, 0];
const L12: [i64; 4] = [1, 1, 0, 0];

/// A factor `M(Q, q)^e` (`pair = false`) or `M~(Q, q)^e = M(Q,q)^e M(Q^{-1},q)^e`,
/// with `Q` and `q` as exponent vectors in the orbifold variables.
#[derive(Clone, Debug)]
pub struct MacMahonFactor {
    pub big_q: Vec<i32>,
    pub pair: bool,
    pub exponent: CohomFraction,
}

fn sum(parts: &[CohomFraction]) -> CohomFraction {
    parts.iter().fold(CohomFraction::zero(), |a, b| a.add(b))
}

fn mono(nvars: usize, ones: &[usize]) -> Vec<i32> {
    (0..nvars).map(|k| ones.contains(&k) as i32).collect()
}

/// The MacMahon factors of the cohomological limit. With `with_m = false`
/// every exponent is divided by `m`, which gives the insertion-free
/// exponents `lim M(Q,q)^{c m} = e^{c q Q}`.
pub fn cohomological_factors(family: Family, with_m: bool) -> Vec<MacMahonFactor> {
    // -m/lambda4 = m/(lambda1+lambda2+lambda3)
    let pre: Vec<[i64; 4]> = if with_m { vec![M] } else { vec![] };
    let scaled = |num: &[[i64; 4]], den: &[[i64; 4]]| {
        let mut n = pre.clone();
        n.extend_from_slice(num);
        let mut d = vec![L123];
        d.extend_from_slice(den);
        ratio(&n, &d)
    };
    match family {
        Family::Zr(r) => {
            let n = r as usize;
            let rr = r as i64;
            let e0 = sum(&[
                scaled(&[L12], &[L3]).scale(&q_int(rr)),
                scaled(&[L12, L123], &[L1, L2]).scale(&Q::new(1.into(), rr.into())),
            ]);
            let mut out = vec![MacMahonFactor { big_q: vec![0; n], pair: false, exponent: e0 }];
            for i in 1..n {
                for j in i..n {
                    out.push(MacMahonFactor {
                        big_q: (0..n).map(|k| (i <= k && k <= j) as i32).collect(),
                        pair: true,
                        exponent: scaled(&[L12], &[L3]),
                    });
                }
            }
            out
        }
        Family::Z2Z2 => {
            // slots: q00, q10, q01, q11
            let unit = scaled(&[], &[]);
            let e0 = sum(&[
                unit.neg(),
                scaled(&[L1], &[L2]),
                scaled(&[L2], &[L1]),
                scaled(&[L1], &[L3]),
                scaled(&[L3], &[L1]),
                scaled(&[L2], &[L3]),
                scaled(&[L3], &[L2]),
            ]);
            let half = Q::new(1.into(), 2.into());
            let mut out = vec![MacMahonFactor { big_q: vec![0; 4], pair: false, exponent: e0 }];
            for ones in [&[1usize][..], &[2], &[3], &[1, 2, 3]] {
                out.push(MacMahonFactor { big_q: mono(4, ones), pair: true, exponent: unit.clone() });
            }
            out.push(MacMahonFactor {
                big_q: mono(4, &[1, 2]),
                pair: true,
                exponent: scaled(&[[1, 1, -1, 0]], &[L3]).scale(&half),
            });
            out.push(MacMahonFactor {
                big_q: mono(4, &[1, 3]),
                pair: true,
                exponent: scaled(&[[1, -1, 1, 0]], &[L2]).scale(&half),
            });
            out.push(MacMahonFactor {
                big_q: mono(4, &[2, 3]),
                pair: true,
                exponent: scaled(&[[-1, 1, 1, 0]], &[L1]).scale(&half),
            });
            out
        }
    }
}

fn shifted(a: &[i32], b: &[i32], k: i32, sign: i32) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| sign * x + k * y).collect()
}

/// `prod M(Q,q)^e` as a truncated series: `Exp(sum e Q q/(1-q)^2)`.
pub fn cohomological_closed_form(family: Family, order: u32) -> Result<TruncatedSeries<CohomFraction>> {
    let n = family.nvars();
    let q = vec![1; n];
    let mut arg = TruncatedSeries::zero(n, order);
    for f in cohomological_factors(family, true) {
        let signs: &[i32] = if f.pair { &[1, -1] } else { &[1] };
        for &s in signs {
            for k in 1..=order as i32 {
                let e = shifted(&f.big_q, &q, k, s);
                if e.iter().sum::<i32>() <= order as i32 {
                    arg.add_term(&sexp(&e), f.exponent.scale(&q_int(k as i64)));
                }
            }
        }
    }
    arg.plethystic_exp()
}

/// `prod exp(e' q Q)` with `e'` the insertion-free exponents.
pub fn insertion_free_closed_form(family: Family, order: u32) -> Result<TruncatedSeries<CohomFraction>> {
    let n = family.nvars();
    let q = vec![1; n];
    let mut arg = TruncatedSeries::zero(n, order);
    for f in cohomological_factors(family, false) {
        let signs: &[i32] = if f.pair { &[1, -1] } else { &[1] };
        for &s in signs {
            let e = shifted(&f.big_q, &q, 1, s);
            if e.iter().sum::<i32>() <= order as i32 {
                arg.add_term(&sexp(&e), f.exponent.clone());
            }
        }
    }
    arg.exp()
}

/// `M(Q, q) = Exp(Q q / (1-q)^2)` over the rationals, in variables `(Q, q)`.
pub fn macmahon_series(order: u32) -> Result<TruncatedSeries<Q>> {
    let mut arg = TruncatedSeries::zero(2, order);
    for k in 1..order as i32 {
        arg.add_term(&sexp(&[1, k]), q_int(k as i64));
    }
    arg.plethystic_exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_partition_counts() {
        // M(1, q) = sum pp(n) q^n
        let mut arg = TruncatedSeries::<Q>::zero(1, 6);
        for k in 1..=6 {
            arg.add_term(&sexp(&[k]), q_int(k as i64));
        }
        let m = arg.plethystic_exp().unwrap();
        let pp: Vec<i64> = vec![1, 1, 3, 6, 13, 24, 48];
        for (n, c) in pp.iter().enumerate() {
            assert_eq!(m.coeff(&[n as i32]), q_int(*c));
        }
    }

    #[test]
    fn two_variable_macmahon() {
        let m = macmahon_series(4).unwrap();
        assert_eq!(m.coeff(&[1, 2]), q_int(2));
        assert_eq!(m.coeff(&[2, 2]), q_int(1));
    }

    #[test]
    fn trivial_exponent_is_the_cube_ratio() {
        // r = 1: (l1+l2)(l1+l3)(l2+l3) m / (l1 l2 l3 (l1+l2+l3))
        let f = &cohomological_factors(Family::Zr(1), true)[0].exponent;
        let expect = ratio(&[L12, [1, 0, 1, 0], [0, 1, 1, 0], M], &[L1, L2, L3, L123]);
        assert!(f.equals(&expect));
    }

    #[test]
    fn free_exponents_drop_m() {
        let a = &cohomological_factors(Family::Z2Z2, true)[5].exponent;
        let b = &cohomological_factors(Family::Z2Z2, false)[5].exponent;
        assert!(a.equals(&b.mul(&ratio(&[M], &[]))));
    }
}
