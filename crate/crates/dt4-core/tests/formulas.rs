use dt4_core::exactalg::{
    bracket, images, q_expand, q_frac, Atom, BracketFraction, BracketProduct, Frac, Monomial, S0, T1, T2, T3, T4, Y,
};
use dt4_core::formulas::gv::{gv_invariant, GvValue};
use dt4_core::formulas::macmahon::insertion_free_closed_form;
use dt4_core::formulas::nekrasov::{build_orbifold_argument, identity_chart, nekrasov_f, zr_charts};
use dt4_core::formulas::pt::gv_at_t4;
use dt4_core::formulas::{age, age_witness, is_age_at_most_one, root_system, Family};
use dt4_core::partitions::{GroupAction, SolidPartition};
use dt4_core::vertex::{insertion_free_contribution, LinearForm, SignRule};
use dt4_core::{Error, Parallelism};

fn bp(num: &[Monomial], den: &[Monomial]) -> BracketProduct {
    BracketProduct::new(1, Monomial::ONE, num.to_vec(), den.to_vec()).unwrap().cy_reduce().unwrap()
}

fn same(a: &BracketProduct, b: &BracketProduct) -> bool {
    BracketFraction::from_bracket_product(a).unwrap().equals(&BracketFraction::from_bracket_product(b).unwrap())
}

#[test]
fn t3t4_bracket_is_minus_t1t2_bracket() {
    let a = bracket(&Monomial::t(0, 0, 1, 1).cy_reduce()).unwrap();
    let b = bracket(&Monomial::t(1, 1, 0, 0)).unwrap();
    assert_eq!(a, -&b);
}

#[test]
fn gv_values_for_z2() {
    let t3 = Monomial::t(0, 0, 1, 0);
    let t4 = Monomial::var(T4);
    let expect = bp(&[t3 * t4, Monomial::var(Y)], &[t3, t4]);
    match gv_invariant(Family::Zr(2), "b1").unwrap() {
        GvValue::Root(v) => assert!(same(&v, &expect)),
        GvValue::NotPositiveRoot => panic!("b1 is a root"),
    }
    assert!(matches!(gv_invariant(Family::Zr(2), "2b1").unwrap(), GvValue::NotPositiveRoot));
    assert!(matches!(gv_invariant(Family::Zr(2), "b7"), Err(Error::UnknownClass(_))));
}

#[test]
fn gv_at_t4_drops_the_insertion() {
    let c = &root_system(Family::Zr(2)).classes[0];
    let t3 = Monomial::t(0, 0, 1, 0);
    assert!(same(&gv_at_t4(c).unwrap(), &bp(&[t3 * Monomial::var(T4)], &[t3])));
}

#[test]
fn positive_root_counts() {
    assert_eq!(root_system(Family::Zr(4)).classes.len(), 6);
    assert_eq!(root_system(Family::Z2Z2).classes.len(), 7);
}

#[test]
fn trivial_argument_is_the_single_nekrasov_factor() {
    let a = build_orbifold_argument(Family::Zr(1)).unwrap().plethystic_exp_exact(1, 4).unwrap();
    let f = nekrasov_f(&identity_chart(), Monomial::var(S0)).unwrap();
    let b = dt4_core::exactalg::ExpArgument::new(vec![f.clone()]).plethystic_exp_exact(1, 4).unwrap();
    // single-factor expansion agrees with the log of the plethystic exponential at q^1
    let single = q_expand(&f, 1, 4).unwrap().to_exact().unwrap();
    assert!(single.coeff(&[1]).equals(&b.coeff(&[1])));
    for n in 0..=4 {
        assert!(a.coeff(&[n]).equals(&b.coeff(&[n])), "q^{n}");
    }
}

/// Degree-zero series on a chart is the C^4 series in the chart weights.
#[test]
fn chart_substitution_of_the_vertex() {
    let z = dt4_core::vertex::dt_partition_function(None, 2, &SignRule::default(), Parallelism::Sequential).unwrap();
    for chart in zr_charts(3) {
        let im = images(&[(T1, chart[0]), (T2, chart[1]), (T3, chart[2])]);
        let f = nekrasov_f(&chart, Monomial::var(S0)).unwrap();
        let e = dt4_core::exactalg::ExpArgument::new(vec![f]).plethystic_exp_exact(1, 2).unwrap();
        for n in 0..=2 {
            let lhs = z.coeff(&[n]).substitute(&im).unwrap().cy_reduce().unwrap();
            assert!(lhs.equals(&e.coeff(&[n])), "chart {chart:?} q^{n}");
        }
    }
}

#[test]
fn insertion_free_single_box() {
    let l = |a, b, c| LinearForm([a, b, c, 0]);
    // -(l1+l2)(l1+l3)(l2+l3) / (l1 l2 l3 l4), l4 = -(l1+l2+l3)
    let num = &(&l(1, 1, 0).expand() * &l(1, 0, 1).expand()) * &l(0, 1, 1).expand();
    let expect = Frac::new(num, vec![l(1, 0, 0), l(0, 1, 0), l(0, 0, 1), l(1, 1, 1)]);
    let closed = insertion_free_closed_form(Family::Zr(1), 1).unwrap();
    assert!(closed.coeff(&[1]).equals(&expect));
    let p = SolidPartition::new(vec![[0, 0, 0, 0]]).unwrap();
    let v = insertion_free_contribution(&p, None, &SignRule::default()).unwrap();
    assert!(v.equals(&expect));
}

#[test]
fn ages() {
    assert_eq!(age(2, [1, 1, 0, 0]).unwrap(), q_frac(1, 1));
    assert_eq!(age(2, [1, 1, 1, 1]).unwrap(), q_frac(2, 1));
    assert_eq!(age(3, [2, 2, 2, 0]).unwrap(), q_frac(2, 1));
    assert!(matches!(age(2, [1, 0, 0, 0]), Err(Error::NotSU4(_))));
    assert!(is_age_at_most_one(&GroupAction::zr(5).unwrap()).unwrap());
    assert!(is_age_at_most_one(&GroupAction::z2z2()).unwrap());
    assert_eq!(age_witness(&GroupAction::z3age2()).unwrap(), Some(([2, 2, 2, 0], 3)));
}
