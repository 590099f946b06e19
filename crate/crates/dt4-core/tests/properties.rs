mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn laurent_ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_ring_laws(&a, &b, &c)?;
    }

    #[test]
    fn bracket_is_antisymmetric(m in arb_nontrivial_monomial()) {
        prop_bracket_antisymmetry(&m)?;
    }

    #[test]
    fn reduction_is_idempotent(p in arb_partition(), m in arb_t_monomial()) {
        prop_reduction_idempotent(&p, &m)?;
    }

    #[test]
    fn fixed_part_is_idempotent_and_real(p in arb_partition(), g in arb_group()) {
        prop_fixed_part(&p, &g)?;
    }

    #[test]
    fn vertex_and_dual_give_tangent(p in arb_partition()) {
        prop_tangent_reconstruction(&p)?;
    }

    #[test]
    fn reduced_representative_evaluates_equal(b in arb_bracket_product(), seed in any::<u64>()) {
        prop_representative_independence(&b, seed)?;
    }

    #[test]
    fn fraction_sum_agrees_with_cross_multiplication(a in arb_bracket_product(), b in arb_bracket_product()) {
        prop_frac_add(&a, &b)?;
    }
}

#[test]
fn series_do_not_depend_on_worker_count() {
    worker_determinism().unwrap();
}

#[test]
fn zr_is_symmetric_under_swapping_the_plane() {
    zr_swap_symmetry(2, 4).unwrap();
    zr_swap_symmetry(3, 3).unwrap();
}
