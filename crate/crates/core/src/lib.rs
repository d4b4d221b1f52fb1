//! Rigorous upper bounds on the bond-percolation threshold of the
//! self-dual hyperbolic tilings `{m,m}`.
//!
//! The pipeline is: build a ball of `{m,m}` ([`tiling`]), enumerate the
//! connected edge-subgraphs containing its centre ([`animals`]), evaluate
//! the truncated rank-difference series and solve for its largest root
//! ([`bound`]). The [`gf2`] and [`percolation`] modules implement the
//! homology and component-counting identities behind the series, with
//! independent routes that check each other on small tori.

pub mod animals;
pub mod bound;
pub mod digest;
pub mod error;
pub mod gf2;
pub mod percolation;
pub mod tiling;
mod unionfind;

pub use animals::{enumerate, stream, Animal, AnimalStats, EnumerationOptions, TallyTable};
pub use bound::{eval_dn, isoperimetric_constant, solve_ph, BoundResult};
pub use error::{Error, Result};
pub use gf2::{EdgeConfig, Gf2Matrix};
pub use percolation::{Estimate, TrialRecord};
pub use tiling::{build_ball, build_torus, dual, validate, BallCertificate, Tiling, TilingKind};
pub use unionfind::UnionFind;
