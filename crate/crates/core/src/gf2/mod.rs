//! Linear algebra over the two-element field, and the first homology of
//! edge subsets of closed tilings.
//!
//! Two independent routes compute `dim H_1(G_eps)`:
//!
//! * [`homology_dim_formula`] uses only component counts:
//!   `|eps| - |F| + 1 + rank G*_{~eps} - rank G_eps`, with each graph rank
//!   read off as `|V| - kappa`.
//! * [`homology_dim_direct`] follows the quotient definition
//!   `ker d1 / im d2` restricted to `eps`, built from explicit incidence
//!   matrices, a null-space basis and a matrix product.

mod matrix;

pub use matrix::Gf2Matrix;

use crate::error::{Error, Result};
use crate::tiling::{dual, Tiling};
use crate::unionfind::UnionFind;

/// A subset of a tiling's edges, one bit per edge index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeConfig {
    len: usize,
    words: Vec<u64>,
}

impl EdgeConfig {
    pub fn empty(len: usize) -> EdgeConfig {
        EdgeConfig {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> EdgeConfig {
        EdgeConfig::empty(len).complement()
    }

    pub fn from_edges(len: usize, edges: impl IntoIterator<Item = usize>) -> EdgeConfig {
        let mut c = EdgeConfig::empty(len);
        for e in edges {
            c.set(e, true);
        }
        c
    }

    /// Low `len` bits of `mask`, bit `i` = edge `i`.
    pub fn from_mask(len: usize, mask: u64) -> EdgeConfig {
        assert!(len <= 64, "mask constructor is limited to 64 edges");
        let mut c = EdgeConfig::empty(len);
        if len > 0 {
            c.words[0] = mask & low_bits(len);
        }
        c
    }

    /// Parses `'0'`/`'1'` characters, character `i` = edge `i`.
    pub fn from_bitstring(s: &str) -> Result<EdgeConfig> {
        let mut c = EdgeConfig::empty(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => c.set(i, true),
                other => {
                    return Err(Error::Parse(format!(
                        "bitstring may contain only 0 and 1, found {other:?}"
                    )))
                }
            }
        }
        Ok(c)
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, e: usize) -> bool {
        self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn set(&mut self, e: usize, value: bool) {
        assert!(e < self.len, "edge {e} out of range {}", self.len);
        let bit = 1u64 << (e % 64);
        if value {
            self.words[e / 64] |= bit;
        } else {
            self.words[e / 64] &= !bit;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> EdgeConfig {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            if !self.len.is_multiple_of(64) {
                *last &= low_bits(self.len % 64);
            }
        }
        EdgeConfig {
            len: self.len,
            words,
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&e| self.get(e))
    }

    pub(crate) fn check_host(&self, t: &Tiling) -> Result<()> {
        if self.len != t.edge_count() {
            return Err(Error::Precondition(format!(
                "edge configuration has {} bits but the tiling has {} edges",
                self.len,
                t.edge_count()
            )));
        }
        Ok(())
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertex-edge incidence matrix of `G_eps`: `|V|` rows, one column per edge
/// of `eps` in ascending edge order.
pub fn incidence_matrix(t: &Tiling, eps: &EdgeConfig) -> Result<Gf2Matrix> {
    eps.check_host(t)?;
    let mut m = Gf2Matrix::zeros(t.vertex_count(), eps.count_ones());
    for (col, e) in eps.iter_ones().enumerate() {
        let [a, b] = t.edge(e);
        m.toggle(a as usize, col);
        if a != b {
            m.toggle(b as usize, col);
        }
    }
    Ok(m)
}

/// Face-edge incidence matrix (the matrix of the face boundary map): one row
/// per face, one column per edge.
pub fn face_edge_matrix(t: &Tiling) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(t.face_count(), t.edge_count());
    for f in 0..t.face_count() {
        for &e in t.face(f) {
            m.toggle(f, e as usize);
        }
    }
    m
}

/// Number of connected components of `(V, eps)`, isolated vertices included.
pub fn components(t: &Tiling, eps: &EdgeConfig) -> Result<usize> {
    eps.check_host(t)?;
    let mut uf = UnionFind::new(t.vertex_count());
    for e in eps.iter_ones() {
        let [a, b] = t.edge(e);
        uf.union(a as usize, b as usize);
    }
    Ok(uf.components())
}

/// Dimension of the cycle code of `G_eps`: `|eps| - |V| + kappa`.
pub fn cycle_code_dim(t: &Tiling, eps: &EdgeConfig) -> Result<usize> {
    let kappa = components(t, eps)?;
    Ok(eps.count_ones() + kappa - t.vertex_count())
}

/// Precomputed data for repeated homology evaluations on one closed tiling.
#[derive(Debug, Clone)]
pub struct HomologyContext<'a> {
    primal: &'a Tiling,
    dual: Tiling,
    faces: Gf2Matrix,
}

impl<'a> HomologyContext<'a> {
    /// Fails unless `t` is closed, connected and has `2|E| = m|F|` for its
    /// vertex degree `m`.
    pub fn new(t: &'a Tiling) -> Result<HomologyContext<'a>> {
        if !t.is_closed() {
            return Err(Error::Precondition(
                "homology of edge subsets needs a closed tiling".into(),
            ));
        }
        let m = t.kind().vertex_degree() as usize;
        if 2 * t.edge_count() != m * t.face_count() {
            return Err(Error::Precondition(format!(
                "(2/m)|E| = {}/{m} does not equal |F| = {}",
                2 * t.edge_count(),
                t.face_count()
            )));
        }
        if components(t, &EdgeConfig::full(t.edge_count()))? != 1 {
            return Err(Error::Precondition("tiling is not connected".into()));
        }
        let d = dual(t)?;
        Ok(HomologyContext {
            primal: t,
            dual: d,
            faces: face_edge_matrix(t),
        })
    }

    pub fn tiling(&self) -> &Tiling {
        self.primal
    }

    pub fn dual(&self) -> &Tiling {
        &self.dual
    }

    /// `rank G_eps = |V| - kappa(G_eps)`.
    pub fn rank_primal(&self, eps: &EdgeConfig) -> Result<usize> {
        Ok(self.primal.vertex_count() - components(self.primal, eps)?)
    }

    /// `rank G*_{~eps} = |F| - kappa(G*_{~eps})`.
    pub fn rank_dual_complement(&self, eps: &EdgeConfig) -> Result<usize> {
        Ok(self.dual.vertex_count() - components(&self.dual, &eps.complement())?)
    }

    pub fn formula(&self, eps: &EdgeConfig) -> Result<usize> {
        eps.check_host(self.primal)?;
        let value = eps.count_ones() as i64 - self.primal.face_count() as i64
            + 1
            + self.rank_dual_complement(eps)? as i64
            - self.rank_primal(eps)? as i64;
        usize::try_from(value).map_err(|_| {
            Error::Inconsistent(format!("homology formula produced negative value {value}"))
        })
    }

    pub fn direct(&self, eps: &EdgeConfig) -> Result<usize> {
        eps.check_host(self.primal)?;
        let cycles = eps.count_ones() - incidence_matrix(self.primal, eps)?.rank();
        // face chains whose boundary avoids the complement of eps
        let restricted = incidence_matrix(&self.dual, &eps.complement())?;
        let admissible = restricted.left_kernel();
        let boundaries = admissible.mul(&self.faces).rank();
        cycles.checked_sub(boundaries).ok_or_else(|| {
            Error::Inconsistent(format!(
                "{boundaries} independent boundaries exceed {cycles} independent cycles"
            ))
        })
    }
}

/// `dim H_1(G_eps) = |eps| - (2/m)|E| + 1 + rank G*_{~eps} - rank G_eps`,
/// with `(2/m)|E|` read as `|F|`.
pub fn homology_dim_formula(t: &Tiling, eps: &EdgeConfig) -> Result<usize> {
    HomologyContext::new(t)?.formula(eps)
}

/// `dim ker d1^eps - dim im d2^eps` by explicit linear algebra.
pub fn homology_dim_direct(t: &Tiling, eps: &EdgeConfig) -> Result<usize> {
    HomologyContext::new(t)?.direct(eps)
}
