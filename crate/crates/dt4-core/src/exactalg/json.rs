use serde_json::{json, Value};

use super::frac::{BracketFraction, RationalFn};
use super::modp::Fp;
use super::monomial::{Monomial, LATTICE, NVARS};
use super::poly::{LaurentPoly, Q};
use super::series::{Coeff, TruncatedSeries};

pub fn q_to_string(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn exps(m: &Monomial, nslots: usize) -> Value {
    Value::Array(m.quarters()[..nslots].iter().map(|&x| json!(x)).collect())
}

/// Canonical form: terms in lexicographic exponent order, quarter units.
pub fn poly_to_json(p: &LaurentPoly) -> Value {
    let terms: Vec<Value> =
        p.terms().iter().map(|(m, c)| json!({"exp": exps(m, NVARS), "coeff": q_to_string(c)})).collect();
    json!({"lattice_denominator": LATTICE, "terms": terms})
}

pub fn rational_fn_to_json(r: &RationalFn) -> Value {
    json!({"num": poly_to_json(&r.num), "den": poly_to_json(&r.den)})
}

pub trait JsonCoeff {
    fn to_json(&self) -> Value;
}

impl JsonCoeff for BracketFraction {
    fn to_json(&self) -> Value {
        rational_fn_to_json(&self.to_rational_fn())
    }
}

impl JsonCoeff for Q {
    fn to_json(&self) -> Value {
        json!(q_to_string(self))
    }
}

impl<const P: u64> JsonCoeff for Fp<P> {
    fn to_json(&self) -> Value {
        json!({"prime": P.to_string(), "value": self.0.to_string()})
    }
}

pub fn series_to_json<C: Coeff + JsonCoeff>(s: &TruncatedSeries<C>, names: &[String]) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| {
            let q: Vec<i64> = s.exponent(e).iter().map(|&x| x as i64 * LATTICE as i64).collect();
            json!({"exp": q, "coeff": c.to_json()})
        })
        .collect();
    json!({
        "lattice_denominator": LATTICE,
        "order": s.order(),
        "variables": names,
        "terms": terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::T1;
    use crate::exactalg::poly::{q_frac, q_int};

    #[test]
    fn terms_sorted_and_fractional() {
        let p = LaurentPoly::from_terms([(Monomial::var(T1), q_frac(1, 2)), (Monomial::ONE, q_int(-3))]);
        let v = poly_to_json(&p);
        assert_eq!(v["lattice_denominator"], 4);
        assert_eq!(v["terms"][0]["coeff"], "-3/1");
        assert_eq!(v["terms"][1]["coeff"], "1/2");
        assert_eq!(v["terms"][1]["exp"][0], 4);
    }
}
