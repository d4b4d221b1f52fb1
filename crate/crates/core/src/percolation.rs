//! Random edge configurations on finite tilings and the component and rank
//! statistics behind the series.
//!
//! Randomness is keyed so that any trial can be replayed alone: trial `i`
//! of a run with master seed `s` uses the seed [`trial_seed`]`(s, i)`, and
//! edge `e` consumes the `e`-th draw of a ChaCha8 stream keyed by that seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

use crate::animals::for_each_connected_subgraph;
use crate::error::{Error, Result};
use crate::gf2::{EdgeConfig, HomologyContext};
use crate::tiling::Tiling;
use crate::unionfind::UnionFind;

/// Largest edge count accepted by the exhaustive sweeps.
pub const MAX_EXHAUSTIVE_EDGES: usize = 22;

/// Seed of trial `index` in a run keyed by `master`: the `index`-th output
/// of a SplitMix64 sequence started at `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("p must lie in [0, 1] (got {p})")))
    }
}

/// Opens each edge of `t` independently with probability `p`.
pub fn sample_config(t: &Tiling, p: f64, seed: u64) -> Result<EdgeConfig> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut eps = EdgeConfig::empty(t.edge_count());
    for e in 0..t.edge_count() {
        if rng.gen::<f64>() < p {
            eps.set(e, true);
        }
    }
    Ok(eps)
}

/// Connected components of `(V, eps)`; isolated vertices count.
pub fn count_components(t: &Tiling, eps: &EdgeConfig) -> Result<usize> {
    crate::gf2::components(t, eps)
}

/// Component structure of `(V, eps)`: the number of components and the
/// open edge count of the largest one.
fn component_profile(t: &Tiling, eps: &EdgeConfig) -> (UnionFind, usize) {
    let mut uf = UnionFind::new(t.vertex_count());
    for e in eps.iter_ones() {
        let [a, b] = t.edge(e);
        uf.union(a as usize, b as usize);
    }
    let mut edges_at = vec![0usize; t.vertex_count()];
    for e in eps.iter_ones() {
        let r = uf.find(t.edge(e)[0] as usize);
        edges_at[r] += 1;
    }
    let largest = edges_at.into_iter().max().unwrap_or(0);
    (uf, largest)
}

/// Edge sets of the components of `(V, eps)` that have at least one edge,
/// each as a config on the same host.
pub fn component_configs(t: &Tiling, eps: &EdgeConfig) -> Vec<EdgeConfig> {
    let (mut uf, _) = component_profile(t, eps);
    let mut by_root: std::collections::BTreeMap<usize, EdgeConfig> = Default::default();
    for e in eps.iter_ones() {
        let r = uf.find(t.edge(e)[0] as usize);
        by_root
            .entry(r)
            .or_insert_with(|| EdgeConfig::empty(t.edge_count()))
            .set(e, true);
    }
    by_root.into_values().collect()
}

/// One sampled configuration and its statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub p: f64,
    pub kappa: usize,
    pub rank_primal: usize,
    pub rank_dual_complement: usize,
    pub h1_dim: usize,
    pub largest_component_edges: usize,
}

/// Header line of the trial CSV format.
pub const TRIAL_CSV_HEADER: &str =
    "seed,p,kappa,rank_primal,rank_dual_complement,h1_dim,largest_component_edges";

impl TrialRecord {
    /// `(rank G*_{~eps} - rank G_eps) / |E|`.
    pub fn normalized_rank_difference(&self, edge_count: usize) -> f64 {
        (self.rank_dual_complement as f64 - self.rank_primal as f64) / edge_count as f64
    }
}

pub fn trials_to_csv(records: &[TrialRecord]) -> String {
    let mut s = String::from(TRIAL_CSV_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.seed,
            r.p,
            r.kappa,
            r.rank_primal,
            r.rank_dual_complement,
            r.h1_dim,
            r.largest_component_edges
        );
    }
    s
}

/// Ranks and homology of `eps`; `seed` and `p` are recorded as given.
pub fn rank_difference_trial(
    ctx: &HomologyContext<'_>,
    eps: &EdgeConfig,
    seed: u64,
    p: f64,
) -> Result<TrialRecord> {
    let t = ctx.tiling();
    eps.check_host(t)?;
    let (uf, largest) = component_profile(t, eps);
    let kappa = uf.components();
    Ok(TrialRecord {
        seed,
        p,
        kappa,
        rank_primal: t.vertex_count() - kappa,
        rank_dual_complement: ctx.rank_dual_complement(eps)?,
        h1_dim: ctx.formula(eps)?,
        largest_component_edges: largest,
    })
}

/// Samples trial `index` of the run keyed by `master`.
pub fn run_trial(ctx: &HomologyContext<'_>, p: f64, master: u64, index: u64) -> Result<TrialRecord> {
    let seed = trial_seed(master, index);
    let eps = sample_config(ctx.tiling(), p, seed)?;
    rank_difference_trial(ctx, &eps, seed, p)
}

/// `trials` independent trials, in index order whatever the schedule.
pub fn run_trials(
    ctx: &HomologyContext<'_>,
    p: f64,
    trials: usize,
    master: u64,
) -> Result<Vec<TrialRecord>> {
    check_probability(p)?;
    (0..trials as u64)
        .into_par_iter()
        .map(|i| run_trial(ctx, p, master, i))
        .collect()
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`; zero for one trial.
    pub stderr: f64,
    pub trials: usize,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Estimate {
        let n = xs.len();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let stderr = if n > 1 {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Estimate {
            mean,
            stderr,
            trials: n,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("estimate serializes")
    }
}

/// Mean of the normalized rank difference over `trials` random
/// configurations of the closed tiling `t`.
pub fn monte_carlo_rank_difference(t: &Tiling, p: f64, trials: usize, seed: u64) -> Result<Estimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let ctx = HomologyContext::new(t)?;
    let records = run_trials(&ctx, p, trials, seed)?;
    let xs: Vec<f64> = records
        .iter()
        .map(|r| r.normalized_rank_difference(t.edge_count()))
        .collect();
    Ok(Estimate::from_samples(&xs))
}

fn check_exhaustive(t: &Tiling) -> Result<()> {
    if t.edge_count() > MAX_EXHAUSTIVE_EDGES {
        return Err(Error::Resource {
            what: "exhaustive edge sweep",
            needed: t.edge_count(),
            limit: MAX_EXHAUSTIVE_EDGES,
        });
    }
    Ok(())
}

/// `E_p[kappa]` by summing over all `2^|E|` configurations.
pub fn expected_kappa_bruteforce(t: &Tiling, p: f64) -> Result<f64> {
    check_probability(p)?;
    check_exhaustive(t)?;
    let ne = t.edge_count();
    let q = 1.0 - p;
    let pow_p: Vec<f64> = (0..=ne).map(|k| p.powi(k as i32)).collect();
    let pow_q: Vec<f64> = (0..=ne).map(|k| q.powi(k as i32)).collect();
    // E[kappa] = sum_k P(|eps| = k config) * kappa, grouped by open count
    let mut by_open = vec![0u64; ne + 1];
    let mut weighted = vec![0u64; ne + 1];
    for mask in 0..1u64 << ne {
        let mut uf = UnionFind::new(t.vertex_count());
        for e in 0..ne {
            if mask >> e & 1 == 1 {
                let [a, b] = t.edge(e);
                uf.union(a as usize, b as usize);
            }
        }
        let k = mask.count_ones() as usize;
        by_open[k] += 1;
        weighted[k] += uf.components() as u64;
    }
    debug_assert_eq!(by_open.iter().sum::<u64>(), 1u64 << ne);
    Ok((0..=ne)
        .map(|k| weighted[k] as f64 * pow_p[k] * pow_q[ne - k])
        .sum())
}

/// `E_p[kappa]` as a sum over connected subgraphs `C` of
/// `p^|E(C)| (1-p)^|boundary(C)|`, the probability that `C` is a component.
pub fn expected_kappa_series(t: &Tiling, p: f64) -> Result<f64> {
    check_probability(p)?;
    check_exhaustive(t)?;
    let q = 1.0 - p;
    let mut total = 0.0;
    for_each_connected_subgraph(t, |c| {
        total += p.powi(c.stats.edges as i32) * q.powi(c.stats.boundary as i32);
    })?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{build_polygon, build_torus, dual};
    use proptest::prelude::*;

    #[test]
    fn extreme_probabilities() {
        let t = build_torus(4).unwrap();
        assert_eq!(sample_config(&t, 0.0, 3).unwrap().count_ones(), 0);
        assert_eq!(sample_config(&t, 1.0, 3).unwrap().count_ones(), 32);
        assert!(sample_config(&t, 1.5, 3).is_err());
    }

    #[test]
    fn sampling_is_reproducible() {
        let t = build_torus(6).unwrap();
        let a = sample_config(&t, 0.4, 99).unwrap();
        assert_eq!(a, sample_config(&t, 0.4, 99).unwrap());
        assert_ne!(a, sample_config(&t, 0.4, 100).unwrap());
    }

    #[test]
    fn components_of_extremes() {
        let t = build_torus(3).unwrap();
        assert_eq!(count_components(&t, &EdgeConfig::empty(18)).unwrap(), 9);
        assert_eq!(count_components(&t, &EdgeConfig::full(18)).unwrap(), 1);
    }

    #[test]
    fn torus_trials_at_the_extremes() {
        let t = build_torus(3).unwrap();
        let ctx = HomologyContext::new(&t).unwrap();
        let full = rank_difference_trial(&ctx, &EdgeConfig::full(18), 0, 1.0).unwrap();
        assert_eq!((full.rank_primal, full.rank_dual_complement, full.h1_dim), (8, 0, 2));
        assert_eq!(full.largest_component_edges, 18);
        let none = rank_difference_trial(&ctx, &EdgeConfig::empty(18), 0, 0.0).unwrap();
        assert_eq!((none.rank_primal, none.rank_dual_complement, none.h1_dim), (0, 8, 0));
    }

    #[test]
    fn zero_probability_estimate_is_exact() {
        let k = 6;
        let est = monte_carlo_rank_difference(&build_torus(k).unwrap(), 0.0, 5, 1).unwrap();
        let want = (k * k - 1) as f64 / (2 * k * k) as f64;
        assert!((est.mean - want).abs() < 1e-15);
        assert!(est.stderr < 1e-15);
        assert!(monte_carlo_rank_difference(&build_torus(3).unwrap(), 0.3, 0, 1).is_err());
    }

    #[test]
    fn triangle_expected_components() {
        let tri = build_polygon(3).unwrap();
        assert_eq!(expected_kappa_bruteforce(&tri, 0.5).unwrap(), 1.625);
        assert_eq!(expected_kappa_series(&tri, 0.5).unwrap(), 1.625);
        for p in [0.0f64, 0.2, 0.9] {
            let q = 1.0 - p;
            let closed = 3.0 * q * q + 3.0 * p * q * q + 3.0 * p * p * q + p * p * p;
            assert!((expected_kappa_series(&tri, p).unwrap() - closed).abs() < 1e-14);
        }
    }

    #[test]
    fn series_at_p_zero_counts_vertices() {
        let t = build_torus(3).unwrap();
        assert_eq!(expected_kappa_series(&t, 0.0).unwrap(), 9.0);
        assert!(expected_kappa_bruteforce(&build_torus(4).unwrap(), 0.5).is_err());
    }

    #[test]
    fn csv_has_one_line_per_trial() {
        let t = build_torus(3).unwrap();
        let ctx = HomologyContext::new(&t).unwrap();
        let rs = run_trials(&ctx, 0.5, 4, 11).unwrap();
        let csv = trials_to_csv(&rs);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with(TRIAL_CSV_HEADER));
        assert_eq!(rs[2], run_trial(&ctx, 0.5, 11, 2).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn trial_identities(seed in any::<u64>(), p in 0.0f64..=1.0) {
            let t = build_torus(5).unwrap();
            let ctx = HomologyContext::new(&t).unwrap();
            let r = run_trial(&ctx, p, seed, 0).unwrap();
            prop_assert_eq!(r.rank_primal, 25 - r.kappa);
            let eps = sample_config(&t, p, r.seed).unwrap();
            let rank = crate::gf2::incidence_matrix(&t, &eps).unwrap().rank();
            prop_assert_eq!(eps.count_ones() - rank, eps.count_ones() + r.kappa - 25);
            prop_assert_eq!(r.h1_dim, ctx.direct(&eps).unwrap());
        }

        #[test]
        fn small_clusters_carry_no_homology(seed in any::<u64>(), p in 0.05f64..0.35) {
            let k = 6;
            let t = build_torus(k).unwrap();
            let ctx = HomologyContext::new(&t).unwrap();
            let r = run_trial(&ctx, p, seed, 0).unwrap();
            if r.largest_component_edges < k as usize {
                prop_assert_eq!(r.h1_dim, 0);
            }
        }

        #[test]
        fn homology_is_subadditive(seed in any::<u64>(), p in 0.2f64..0.8) {
            let t = build_torus(5).unwrap();
            let ctx = HomologyContext::new(&t).unwrap();
            let eps = sample_config(&t, p, seed).unwrap();
            let whole = ctx.formula(&eps).unwrap();
            let parts: usize = component_configs(&t, &eps)
                .iter()
                .map(|c| ctx.formula(c).unwrap())
                .sum();
            prop_assert!(whole <= parts, "{whole} > {parts}");
        }
    }

    #[test]
    fn dual_complement_rank_matches_dual_at_flipped_p() {
        // on a self-dual torus the two statistics agree in distribution
        let t = build_torus(8).unwrap();
        let d = dual(&t).unwrap();
        let ctx = HomologyContext::new(&t).unwrap();
        let dctx = HomologyContext::new(&d).unwrap();
        let n = 400;
        let p = 0.35;
        let a: Vec<f64> = run_trials(&ctx, p, n, 5)
            .unwrap()
            .iter()
            .map(|r| r.rank_dual_complement as f64)
            .collect();
        let b: Vec<f64> = run_trials(&dctx, 1.0 - p, n, 6)
            .unwrap()
            .iter()
            .map(|r| r.rank_primal as f64)
            .collect();
        let (ea, eb) = (Estimate::from_samples(&a), Estimate::from_samples(&b));
        let se = (ea.stderr.powi(2) + eb.stderr.powi(2)).sqrt();
        assert!((ea.mean - eb.mean).abs() < 5.0 * se, "{ea:?} vs {eb:?}");
    }
}
