//! The two homology routes against each other, and the chain-complex
//! identities they rest on.

use phbound::gf2::{
    components, cycle_code_dim, face_edge_matrix, homology_dim_direct, homology_dim_formula,
    incidence_matrix, HomologyContext,
};
use phbound::percolation::sample_config;
use phbound::{build_torus, dual, EdgeConfig, Gf2Matrix};
use proptest::prelude::*;

#[test]
fn three_torus_exhaustive_sweep() {
    let t = build_torus(3).unwrap();
    let ctx = HomologyContext::new(&t).unwrap();
    let mut histogram = [0usize; 3];
    for mask in 0..1u64 << 18 {
        let eps = EdgeConfig::from_mask(18, mask);
        let f = ctx.formula(&eps).unwrap();
        assert_eq!(f, ctx.direct(&eps).unwrap(), "mask {mask:#x}");
        histogram[f] += 1;
    }
    assert_eq!(histogram.iter().sum::<usize>(), 1 << 18);
    assert!(histogram[2] > 0);
}

#[test]
fn figure_style_examples() {
    let t = build_torus(3).unwrap();
    assert_eq!(homology_dim_formula(&t, &EdgeConfig::full(18)).unwrap(), 2);
    assert_eq!(homology_dim_direct(&t, &EdgeConfig::full(18)).unwrap(), 2);
    assert_eq!(homology_dim_formula(&t, &EdgeConfig::empty(18)).unwrap(), 0);
    let face = EdgeConfig::from_edges(18, t.face(4).iter().map(|&e| e as usize));
    assert_eq!(homology_dim_direct(&t, &face).unwrap(), 0);
    assert_eq!(cycle_code_dim(&t, &face).unwrap(), 1);
    assert_eq!(components(&t, &face).unwrap(), 6);

    // the east edges of one row wrap around the five-torus
    let t5 = build_torus(5).unwrap();
    let row = EdgeConfig::from_edges(50, (0..5).map(|c| 2 * c));
    assert_eq!(homology_dim_formula(&t5, &row).unwrap(), 1);
    assert_eq!(homology_dim_direct(&t5, &row).unwrap(), 1);
}

#[test]
fn incidence_rank_of_the_three_torus() {
    let t = build_torus(3).unwrap();
    let b = incidence_matrix(&t, &EdgeConfig::full(18)).unwrap();
    assert_eq!(b.rank(), 8);
    assert!((0..18).all(|c| b.column_weight(c) == 2));
    assert_eq!(cycle_code_dim(&t, &EdgeConfig::full(18)).unwrap(), 10);
    assert_eq!(cycle_code_dim(&t, &EdgeConfig::empty(18)).unwrap(), 0);
}

#[test]
fn non_closed_tilings_are_refused() {
    let ball = phbound::build_ball(5, 2).unwrap();
    let eps = EdgeConfig::full(ball.edge_count());
    assert!(homology_dim_formula(&ball, &eps).is_err());
    assert!(homology_dim_direct(&ball, &eps).is_err());
    let t = build_torus(3).unwrap();
    assert!(homology_dim_formula(&t, &EdgeConfig::full(17)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn routes_agree_on_random_tori(k in 3u32..=7, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let t = build_torus(k).unwrap();
        let ctx = HomologyContext::new(&t).unwrap();
        let eps = sample_config(&t, p, seed).unwrap();
        prop_assert_eq!(ctx.formula(&eps).unwrap(), ctx.direct(&eps).unwrap());
    }

    #[test]
    fn boundary_of_boundary_vanishes(k in 3u32..=8) {
        for t in [build_torus(k).unwrap(), dual(&build_torus(k).unwrap()).unwrap()] {
            let d1 = incidence_matrix(&t, &EdgeConfig::full(t.edge_count())).unwrap();
            let d2 = face_edge_matrix(&t).transpose();
            prop_assert!(d1.mul(&d2).is_zero());
        }
    }

    #[test]
    fn cycle_code_through_rank(k in 3u32..=6, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let t = build_torus(k).unwrap();
        let eps = sample_config(&t, p, seed).unwrap();
        let kappa = components(&t, &eps).unwrap();
        let rank = incidence_matrix(&t, &eps).unwrap().rank();
        prop_assert_eq!(rank, t.vertex_count() - kappa);
        prop_assert_eq!(cycle_code_dim(&t, &eps).unwrap(), eps.count_ones() - rank);
    }

    #[test]
    fn rank_ignores_column_order(bits in proptest::collection::vec(any::<bool>(), 10 * 14), shift in 0usize..14) {
        let m = Gf2Matrix::from_fn(10, 14, |r, c| bits[r * 14 + c]);
        let rolled = Gf2Matrix::from_fn(10, 14, |r, c| bits[r * 14 + (c + shift) % 14]);
        prop_assert_eq!(m.rank(), rolled.rank());
        prop_assert!(m.rank() <= 10);
    }
}
