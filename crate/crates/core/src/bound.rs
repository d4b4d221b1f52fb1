//! The truncated rank-difference series and the upper bound it yields.
//!
//! For a tally of rooted animals up to `n` edges,
//!
//! ```text
//! D_n(p) = (2/m) * sum over rows of count/v * (p^e (1-p)^b - (1-p)^e p^b)
//! ```
//!
//! and `p_h(n)` is the largest root of `f_n(p) = p - 2/m + D_n(p)` in
//! `(0, 1/2]`. The root `p = 0` is always present and is ignored.

use serde::Serialize;

use crate::animals::{count_as_f64, stream, AnimalStats, TallyTable};
use crate::error::{Error, Result};

/// Spacing of the descending scan that brackets the root.
pub const GRID_STEP: f64 = 1e-3;

/// Grid values this small come from cancellation close to `p = 0` and carry
/// no sign; the scan skips them.
const NOISE_FLOOR: f64 = 1e-12;

/// Neumaier's compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `p^e (1-p)^b - (1-p)^e p^b`, the signed weight of one animal.
pub fn term(e: u32, b: u32, p: f64) -> f64 {
    let q = 1.0 - p;
    p.powi(e as i32) * q.powi(b as i32) - q.powi(e as i32) * p.powi(b as i32)
}

/// `D_n(p)` for the given tally, summed in the table's fixed row order.
pub fn eval_dn(tally: &TallyTable, p: f64) -> f64 {
    let mut acc = Compensated::default();
    for (AnimalStats { edges, vertices, boundary }, count) in tally.rows() {
        acc.add(count_as_f64(count) / vertices as f64 * term(edges, boundary, p));
    }
    2.0 / tally.m() as f64 * acc.value()
}

/// `f_n(p) = p - 2/m + D_n(p)`.
pub fn eval_fn(tally: &TallyTable, p: f64) -> f64 {
    let mut acc = Compensated::default();
    acc.add(p);
    acc.add(-2.0 / tally.m() as f64);
    acc.add(eval_dn(tally, p));
    acc.value()
}

/// The computed bound together with what is needed to audit it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundResult {
    pub m: u32,
    pub n: u32,
    pub p_h: f64,
    /// `|f_n(p_h)|`.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub tally_digest: String,
    pub tolerance: f64,
    /// Sign changes of `f_n` seen on the scan grid over `(0, 1/2]`.
    pub sign_changes: usize,
    /// False for `m = 4`, where the series terms are not all positive and
    /// the result is a calibration value rather than a bound.
    pub certified: bool,
}

impl BoundResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bound result serializes")
    }
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Largest root of `f_n` in `(0, 1/2]`, bracketed to width below `tol`.
///
/// The scan runs down from 1/2 in steps of [`GRID_STEP`]; the first sign
/// change met is refined by bisection. An exact zero at a grid point is
/// returned as is.
pub fn solve_ph(tally: &TallyTable, tol: f64) -> Result<BoundResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive (got {tol})")));
    }
    let m = tally.m();
    match tally.get(0, 1, m) {
        Some(c) if *c == 1u32.into() => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "tally lacks the row (0, 1, {m}) with count 1"
            )))
        }
    }
    let f = |p: f64| eval_fn(tally, p);

    let steps = (0.5 / GRID_STEP).round() as usize;
    let grid: Vec<f64> = (0..steps).map(|k| 0.5 - k as f64 * GRID_STEP).collect();
    let values: Vec<f64> = grid.iter().map(|&p| f(p)).collect();

    let mut sign_changes = 0;
    let mut bracket = None;
    let mut prev = 0;
    let mut prev_k = 0;
    for (k, &v) in values.iter().enumerate() {
        if v == 0.0 {
            bracket.get_or_insert((grid[k], grid[k]));
            continue;
        }
        if v.abs() <= NOISE_FLOOR {
            continue;
        }
        let s = sign(v);
        if prev != 0 && s != prev {
            sign_changes += 1;
            bracket.get_or_insert((grid[k], grid[prev_k]));
        }
        prev = s;
        prev_k = k;
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::NoSignChange { grid_step: GRID_STEP })?;

    let p_h = if lo == hi {
        // exact zero on the grid; report a degenerate bracket just below it
        lo = (hi - tol).max(0.0);
        hi
    } else {
        let s_lo = sign(f(lo));
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..200 {
            mid = 0.5 * (lo + hi);
            let fm = f(mid);
            if hi - lo < tol && fm.abs() <= tol {
                break;
            }
            if sign(fm) == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * hi {
                break;
            }
        }
        mid
    };

    Ok(BoundResult {
        m,
        n: tally.max_edges(),
        p_h,
        residual: f(p_h).abs(),
        bracket: (lo, hi),
        tally_digest: tally.digest(),
        tolerance: tol,
        sign_changes,
        certified: m >= 5,
    })
}

/// Enumerates the animals of `{m,m}` up to `max_edges` edges and solves
/// for the resulting bound on the critical probability.
pub fn upper_bound(m: u32, max_edges: u32, tol: f64) -> Result<BoundResult> {
    solve_ph(&crate::animals::enumerate(m, max_edges)?, tol)
}

/// Edge isoperimetric constant of `{m,m}`,
/// `(m - 2) * sqrt(1 - 4 / (m - 2)^2)`.
pub fn isoperimetric_constant(m: u32) -> Result<f64> {
    if m < 5 {
        return Err(Error::InvalidArgument(format!(
            "the isoperimetric constant is defined here for m >= 5 (got {m})"
        )));
    }
    let k = (m - 2) as f64;
    Ok(k * (1.0 - 4.0 / (k * k)).sqrt())
}

/// What an isoperimetry sweep saw.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperimetryReport {
    pub m: u32,
    pub max_edges: u32,
    /// Animals checked, the empty one included.
    pub animals: u64,
    /// Smallest `boundary / edges` over animals with at least one edge.
    pub min_ratio: f64,
    pub min_ratio_at: Option<(u32, u32, u32)>,
}

/// Checks `boundary > edges` for every animal of `{m,m}` with
/// `1..=max_edges` edges.
pub fn check_isoperimetry(m: u32, max_edges: u32) -> Result<IsoperimetryReport> {
    if m < 5 {
        return Err(Error::InvalidArgument(format!(
            "isoperimetry holds only for m >= 5 (got {m})"
        )));
    }
    let mut animals = 0u64;
    let mut min_ratio = f64::INFINITY;
    let mut min_at = None;
    let mut violation = None;
    stream(m, max_edges, |s| {
        animals += 1;
        if s.edges == 0 {
            return;
        }
        if s.boundary <= s.edges && violation.is_none() {
            violation = Some(s);
        }
        let r = s.boundary as f64 / s.edges as f64;
        if r < min_ratio {
            min_ratio = r;
            min_at = Some((s.edges, s.vertices, s.boundary));
        }
    })?;
    if let Some(s) = violation {
        return Err(Error::IsoperimetryViolation {
            edges: s.edges,
            boundary: s.boundary,
        });
    }
    Ok(IsoperimetryReport {
        m,
        max_edges,
        animals,
        min_ratio,
        min_ratio_at: min_at,
    })
}
