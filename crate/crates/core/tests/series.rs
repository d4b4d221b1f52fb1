//! Series evaluation and root finding on enumerated tallies.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use phbound::bound::{eval_fn, term};
use phbound::{enumerate, eval_dn, solve_ph};

fn exact_f(tally: &phbound::TallyTable, p: &BigRational) -> BigRational {
    let one = BigRational::one();
    let q = &one - p;
    let pow = |x: &BigRational, k: u32| (0..k).fold(BigRational::one(), |acc, _| acc * x);
    let mut sum = BigRational::zero();
    for (s, c) in tally.rows() {
        let w = pow(p, s.edges) * pow(&q, s.boundary) - pow(&q, s.edges) * pow(p, s.boundary);
        sum += BigRational::new(BigInt::from(c.clone()), BigInt::from(s.vertices)) * w;
    }
    let two_over_m = BigRational::new(2.into(), BigInt::from(tally.m()));
    p - &two_over_m + two_over_m * sum
}

#[test]
fn double_precision_matches_exact_arithmetic() {
    let t = enumerate(5, 8).unwrap();
    let p = BigRational::new(3.into(), 10.into());
    let exact = exact_f(&t, &p).to_f64().unwrap();
    assert!((eval_fn(&t, 0.3) - exact).abs() < 1e-12, "{} vs {exact}", eval_fn(&t, 0.3));
}

#[test]
fn bound_sharpens_with_size() {
    let full = enumerate(5, 8).unwrap();
    let mut last = f64::INFINITY;
    for n in 0..=8 {
        let r = solve_ph(&full.truncated(n), 1e-10).unwrap();
        assert!(r.p_h <= last + 1e-12, "n={n}: {} > {last}", r.p_h);
        assert!(r.p_h <= 0.4);
        assert!(r.bracket.0 < r.p_h || r.bracket.0 == r.bracket.1);
        assert!(r.p_h <= r.bracket.1);
        assert!(r.residual <= 1e-10);
        last = r.p_h;
    }
}

#[test]
fn root_of_the_full_table() {
    let r = solve_ph(&enumerate(5, 8).unwrap(), 1e-12).unwrap();
    // regression value for the 21-row table, from an independent solver
    assert!((r.p_h - 0.299_938_218_5).abs() < 1e-9, "{}", r.p_h);
    assert_eq!(r.sign_changes, 1);
    assert!(r.certified);
}

#[test]
fn series_vanishes_at_one_half_and_root_at_zero() {
    for m in 4..=7 {
        let t = enumerate(m, 4).unwrap();
        assert!(eval_dn(&t, 0.5).abs() < 1e-15);
        assert!(eval_fn(&t, 0.0).abs() < 1e-14);
    }
}

#[test]
fn square_lattice_calibration() {
    for n in 0..=5 {
        let r = solve_ph(&enumerate(4, n).unwrap(), 1e-9).unwrap();
        assert_eq!(r.p_h, 0.5, "n={n}");
    }
}

#[test]
fn terms_positive_for_enumerated_rows() {
    let t = enumerate(6, 5).unwrap();
    for (s, _) in t.rows() {
        assert!(s.boundary > s.edges);
        for k in 1..500 {
            assert!(term(s.edges, s.boundary, k as f64 / 1000.0) > 0.0);
        }
    }
}

#[test]
fn cancellation_near_zero_is_not_a_root() {
    // at n = 7 the series cancels to ~1e-16 near p = 0.001, where the sign is noise
    let t = enumerate(6, 7).unwrap();
    for n in 0..=7 {
        let r = solve_ph(&t.truncated(n), 1e-9).unwrap();
        assert_eq!(r.sign_changes, 1, "n={n}");
    }
    assert!((solve_ph(&t, 1e-9).unwrap().p_h - 0.240507).abs() < 1e-6);
}
