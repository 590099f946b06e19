use crate::error::{Error, Result};
use crate::exactalg::monomial::LATTICE;
use crate::exactalg::{BracketProduct, ExpArgument, Monomial, T1, T2, T3, Y};

use super::Family;

pub type Chart = [Monomial; 4];

fn half(slots: &[usize]) -> Monomial {
    let mut e = *Monomial::ONE.quarters();
    for &i in slots {
        e[i] = LATTICE / 2;
    }
    Monomial::from_quarters(e)
}

/// `y^{1/2}`.
pub fn sqrt_y() -> Monomial {
    half(&[Y])
}

/// `kappa^{1/2} = (t1 t2 t3)^{1/2}`.
pub fn sqrt_kappa() -> Monomial {
    half(&[T1, T2, T3])
}

fn check_cy(chart: &Chart) -> Result<()> {
    let p = chart.iter().fold(Monomial::ONE, |a, b| a * *b);
    if !p.cy_reduce().is_one() {
        return Err(Error::ChartNotCalabiYau(format!("{:?}", chart)));
    }
    Ok(())
}

/// `[c1c2][c2c3][c1c3]/([c1][c2][c3][c4]) * [y]/([y^{1/2}q][y^{1/2}q^{-1}])`.
pub fn nekrasov_f(chart: &Chart, q: Monomial) -> Result<BracketProduct> {
    check_cy(chart)?;
    let [c1, c2, c3, c4] = *chart;
    let h = sqrt_y();
    BracketProduct::new(
        1,
        Monomial::ONE,
        vec![c1 * c2, c2 * c3, c1 * c3, Monomial::var(Y)],
        vec![c1, c2, c3, c4, h * q, h * q.inv()],
    )?
    .cy_reduce()
}

/// Three-dimensional factor `[c1c2][c2c3][c1c3]/([c1][c2][c3]) / ([k^{1/2}q][k^{1/2}q^{-1}])`.
pub fn nekrasov_f_3d(chart: &[Monomial; 3], q: Monomial) -> Result<BracketProduct> {
    let [c1, c2, c3] = *chart;
    if (c1 * c2 * c3).cy_reduce() != Monomial::t(1, 1, 1, 0) {
        return Err(Error::ChartNotCalabiYau(format!("{:?}", chart)));
    }
    let h = sqrt_kappa();
    BracketProduct::new(1, Monomial::ONE, vec![c1 * c2, c2 * c3, c1 * c3], vec![c1, c2, c3, h * q, h * q.inv()])?
        .cy_reduce()
}

pub fn identity_chart() -> Chart {
    [Monomial::t(1, 0, 0, 0), Monomial::t(0, 1, 0, 0), Monomial::t(0, 0, 1, 0), Monomial::t(0, 0, 0, 1)]
}

/// Charts of the minimal resolution of `C^2/Z_r` times `C^2`.
pub fn zr_charts(r: u32) -> Vec<Chart> {
    let r = r as i32;
    (0..r)
        .map(|k| {
            [
                Monomial::t(r - k, -k, 0, 0),
                Monomial::t(-r + k + 1, k + 1, 0, 0),
                Monomial::t(0, 0, 1, 0),
                Monomial::t(0, 0, 0, 1),
            ]
        })
        .collect()
}

pub fn z2z2_charts() -> Vec<Chart> {
    let t4 = Monomial::t(0, 0, 0, 1);
    vec![
        [Monomial::t(2, 0, 0, 0), Monomial::t(0, 2, 0, 0), Monomial::t(-1, -1, 1, 0), t4],
        [Monomial::t(2, 0, 0, 0), Monomial::t(-1, 1, -1, 0), Monomial::t(0, 0, 2, 0), t4],
        [Monomial::t(1, -1, -1, 0), Monomial::t(0, 2, 0, 0), Monomial::t(0, 0, 2, 0), t4],
        [Monomial::t(-1, 1, 1, 0), Monomial::t(1, -1, 1, 0), Monomial::t(1, 1, -1, 0), t4],
    ]
}

pub fn charts(family: Family) -> Vec<Chart> {
    match family {
        Family::Zr(r) => zr_charts(r),
        Family::Z2Z2 => z2z2_charts(),
    }
}

/// Product of all series variables: `q_(r)` resp. `q_(2,2)`.
pub fn total_q(nvars: usize) -> Monomial {
    Monomial::from_series_exponents(&vec![1; nvars])
}

/// `q_[i,j] = q_i ... q_j`.
pub fn q_interval(nvars: usize, i: usize, j: usize) -> Monomial {
    let e: Vec<i32> = (0..nvars).map(|k| (i <= k && k <= j) as i32).collect();
    Monomial::from_series_exponents(&e)
}

/// The coloured families: `(coefficient bracket product without q, Q-monomial)`
/// such that each family contributes `(Q + Q^{-1}) * coefficient / ([s q][s q^{-1}])`.
/// In four dimensions the coefficient carries `[y]/[t4]`, in three it does not.
pub fn colour_families(family: Family, four_d: bool) -> Result<Vec<(BracketProduct, Monomial)>> {
    let t4 = Monomial::t(0, 0, 0, 1);
    let (extra_num, extra_den) = if four_d { (vec![Monomial::var(Y)], vec![t4]) } else { (vec![], vec![]) };
    let with = |num: Vec<Monomial>, den: Vec<Monomial>| -> Result<BracketProduct> {
        let mut n = num;
        n.extend(extra_num.iter().copied());
        let mut d = den;
        d.extend(extra_den.iter().copied());
        BracketProduct::new(1, Monomial::ONE, n, d)?.cy_reduce()
    };
    let mut out = Vec::new();
    match family {
        Family::Zr(r) => {
            let n = r as usize;
            for i in 1..n {
                for j in i..n {
                    out.push((with(vec![Monomial::t(1, 1, 0, 0)], vec![Monomial::t(0, 0, 1, 0)])?, q_interval(n, i, j)));
                }
            }
        }
        Family::Z2Z2 => {
            // series slots: q00, q10, q01, q11
            let q = |a: i32, b: i32, c: i32| Monomial::from_series_exponents(&[0, a, b, c]);
            out.push((with(vec![Monomial::t(1, 1, -1, 0)], vec![Monomial::t(0, 0, 2, 0)])?, q(1, 1, 0)));
            out.push((with(vec![Monomial::t(1, -1, 1, 0)], vec![Monomial::t(0, 2, 0, 0)])?, q(1, 0, 1)));
            out.push((with(vec![Monomial::t(-1, 1, 1, 0)], vec![Monomial::t(2, 0, 0, 0)])?, q(0, 1, 1)));
            for m in [q(1, 0, 0), q(0, 1, 0), q(0, 0, 1), q(1, 1, 1)] {
                out.push((with(vec![], vec![])?, m));
            }
        }
    }
    Ok(out)
}

fn series_den(q: Monomial, four_d: bool) -> Result<BracketProduct> {
    let h = if four_d { sqrt_y() } else { sqrt_kappa() };
    BracketProduct::new(1, Monomial::ONE, vec![], vec![h * q, h * q.inv()])
}

/// `F_r` resp. `F_{2,2}`: the chart sum in the single variable `q`.
pub fn degree_zero_argument(family: Family, q: Monomial) -> Result<ExpArgument> {
    let mut a = ExpArgument::default();
    for c in charts(family) {
        a.push(nekrasov_f(&c, q)?);
    }
    Ok(a)
}

pub fn colour_argument(family: Family, nvars: usize, four_d: bool) -> Result<ExpArgument> {
    let q = total_q(nvars);
    let den = series_den(q, four_d)?;
    let mut a = ExpArgument::default();
    for (coef, m) in colour_families(family, four_d)? {
        let base = coef.mul(&den);
        a.push(base.mul_monomial(&m));
        a.push(base.mul_monomial(&m.inv()));
    }
    Ok(a)
}

/// `F_r + F_r^col` resp. `F_{2,2} + F_{2,2}^col`.
pub fn build_orbifold_argument(family: Family) -> Result<ExpArgument> {
    let nvars = family.nvars();
    let mut a = degree_zero_argument(family, total_q(nvars))?;
    a.extend(colour_argument(family, nvars, true)?);
    Ok(a)
}

/// Three-dimensional counterpart `F^3D_r + F^{col,3D}_r` (resp. `(2,2)`).
pub fn build_orbifold_argument_3d(family: Family) -> Result<ExpArgument> {
    let nvars = family.nvars();
    let q = total_q(nvars);
    let mut a = ExpArgument::default();
    for c in charts(family) {
        a.push(nekrasov_f_3d(&[c[0], c[1], c[2]], q)?);
    }
    a.extend(colour_argument(family, nvars, false)?);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q_expand, BracketFraction, S0};

    #[test]
    fn charts_are_calabi_yau() {
        for r in 1..6 {
            for c in zr_charts(r) {
                assert!(check_cy(&c).is_ok());
            }
        }
        for c in z2z2_charts() {
            assert!(check_cy(&c).is_ok());
        }
        let bad = [Monomial::t(1, 0, 0, 0), Monomial::t(1, 0, 0, 0), Monomial::t(0, 0, 1, 0), Monomial::t(0, 0, 0, 1)];
        assert!(matches!(nekrasov_f(&bad, Monomial::var(S0)), Err(Error::ChartNotCalabiYau(_))));
    }

    #[test]
    fn first_chart_of_zr() {
        let c = zr_charts(3)[0];
        assert_eq!(c[0], Monomial::t(3, 0, 0, 0));
        assert_eq!(c[1], Monomial::t(-2, 1, 0, 0));
    }

    #[test]
    fn identity_chart_q1_coefficient() {
        let f = nekrasov_f(&identity_chart(), Monomial::var(S0)).unwrap();
        let s = q_expand(&f, 1, 1).unwrap().to_exact().unwrap();
        let t = |a, b, c| Monomial::t(a, b, c, 0);
        let expect = BracketProduct::new(
            -1,
            Monomial::ONE,
            vec![Monomial::var(Y), t(1, 1, 0), t(1, 0, 1), t(0, 1, 1)],
            vec![t(1, 0, 0), t(0, 1, 0), t(0, 0, 1), Monomial::t(0, 0, 0, 1).cy_reduce()],
        )
        .unwrap();
        assert!(s.coeff(&[1]).equals(&BracketFraction::from_bracket_product(&expect).unwrap()));
    }

    #[test]
    fn zr1_has_no_colour_terms() {
        assert!(colour_argument(Family::Zr(1), 1, true).unwrap().terms.is_empty());
        assert_eq!(build_orbifold_argument(Family::Zr(1)).unwrap().terms.len(), 1);
        assert_eq!(colour_argument(Family::Z2Z2, 4, true).unwrap().terms.len(), 14);
    }
}
