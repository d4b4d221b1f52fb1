//! Combinatorial surface tilings.
//!
//! A [`Tiling`] is a graph cellularly embedded in a surface, stored as an
//! edge list, a list of faces (each a cyclic list of edge indices), and a
//! rotation system (the cyclic order of edges around each vertex). Three
//! families are built here:
//!
//! * disk-shaped balls of the self-dual `{m,m}` tiling ([`build_ball`]),
//! * `k x k` square tori ([`build_torus`]),
//! * duals of closed tilings ([`dual`]).
//!
//! Edge indices are shared between a closed tiling and its dual, so an edge
//! configuration on one side can be read on the other without translation.

mod ball;
mod validate;

pub use ball::{build_ball, build_ball_with_limit, DEFAULT_VERTEX_LIMIT};
pub use validate::{validate, BallCertificate, Check};

use serde::Serialize;

use crate::error::{Error, Result};

/// Which family a tiling belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TilingKind {
    /// Simply-connected patch of `{m,m}`: every vertex at graph distance
    /// `< radius` from `root` has all `m` edges and `m` faces present.
    DiskPatch { m: u32, radius: u32, root: u32 },
    /// Square `k x k` torus with opposite sides identified.
    Torus { k: u32 },
    /// A single `n`-cycle embedded in the sphere as two `n`-gon faces.
    Polygon { n: u32 },
    /// Dual of a closed tiling.
    Dual { of: Box<TilingKind> },
}

impl TilingKind {
    /// Expected number of edges on every face.
    pub fn face_length(&self) -> u32 {
        match self {
            TilingKind::DiskPatch { m, .. } => *m,
            TilingKind::Torus { .. } => 4,
            TilingKind::Polygon { n } => *n,
            TilingKind::Dual { of } => of.vertex_degree(),
        }
    }

    /// Expected degree of every (interior) vertex.
    pub fn vertex_degree(&self) -> u32 {
        match self {
            TilingKind::DiskPatch { m, .. } => *m,
            TilingKind::Torus { .. } => 4,
            TilingKind::Polygon { .. } => 2,
            TilingKind::Dual { of } => of.face_length(),
        }
    }

    pub fn is_closed(&self) -> bool {
        !matches!(self, TilingKind::DiskPatch { .. })
    }

    /// Euler characteristic of the underlying surface.
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            TilingKind::DiskPatch { .. } => 1,
            TilingKind::Torus { .. } => 0,
            TilingKind::Polygon { .. } => 2,
            TilingKind::Dual { of } => of.euler_characteristic(),
        }
    }

    /// Whether the tiling is allowed to carry parallel edges (the dual of a
    /// polygon is a bundle of parallel edges between two vertices).
    pub(crate) fn allows_multi_edges(&self) -> bool {
        match self {
            TilingKind::Dual { of } => matches!(**of, TilingKind::Polygon { .. }),
            _ => false,
        }
    }

    pub(crate) fn is_polygon_sphere(&self) -> bool {
        match self {
            TilingKind::Polygon { .. } => true,
            TilingKind::Dual { of } => of.is_polygon_sphere(),
            _ => false,
        }
    }
}

/// A combinatorial tiling with compressed face and rotation storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub(crate) kind: TilingKind,
    pub(crate) vertex_count: usize,
    pub(crate) edges: Vec<[u32; 2]>,
    pub(crate) face_offsets: Vec<u32>,
    pub(crate) face_edges: Vec<u32>,
    pub(crate) rot_offsets: Vec<u32>,
    pub(crate) rot_edges: Vec<u32>,
}

impl Tiling {
    pub fn kind(&self) -> &TilingKind {
        &self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.face_offsets.len() - 1
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> [u32; 2] {
        self.edges[e]
    }

    /// Edges of face `f` in cyclic order.
    pub fn face(&self, f: usize) -> &[u32] {
        let lo = self.face_offsets[f] as usize;
        let hi = self.face_offsets[f + 1] as usize;
        &self.face_edges[lo..hi]
    }

    pub fn faces(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.face_count()).map(move |f| self.face(f))
    }

    /// Edges at `v` in cyclic order.
    pub fn rotation(&self, v: usize) -> &[u32] {
        let lo = self.rot_offsets[v] as usize;
        let hi = self.rot_offsets[v + 1] as usize;
        &self.rot_edges[lo..hi]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation(v).len()
    }

    /// The endpoint of edge `e` that is not `v`.
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a as usize == v {
            b as usize
        } else {
            a as usize
        }
    }

    pub fn is_closed(&self) -> bool {
        self.kind.is_closed()
    }

    /// Face length parameter (`m` for `{m,m}` patches, 4 for square tori).
    pub fn face_length(&self) -> u32 {
        self.kind.face_length()
    }

    /// For every edge, the faces that contain it (one or two entries).
    pub fn edge_faces(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::with_capacity(2); self.edge_count()];
        for f in 0..self.face_count() {
            for &e in self.face(f) {
                out[e as usize].push(f as u32);
            }
        }
        out
    }

    /// Graph distance from `root` to every vertex (`u32::MAX` if unreachable).
    pub fn bfs_distances(&self, root: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count];
        let mut queue = std::collections::VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &e in self.rotation(v) {
                let w = self.opposite(e as usize, v);
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Canonical JSON document: `{kind, m, vertex_count, edges, faces}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            kind: &'a TilingKind,
            m: u32,
            vertex_count: usize,
            edges: &'a [[u32; 2]],
            faces: Vec<&'a [u32]>,
        }
        let doc = Doc {
            kind: &self.kind,
            m: self.face_length(),
            vertex_count: self.vertex_count,
            edges: &self.edges,
            faces: self.faces().collect(),
        };
        serde_json::to_string(&doc).expect("tiling serialization cannot fail")
    }

    pub(crate) fn from_parts(
        kind: TilingKind,
        vertex_count: usize,
        edges: Vec<[u32; 2]>,
        faces: &[Vec<u32>],
        rotations: &[Vec<u32>],
    ) -> Tiling {
        let (face_offsets, face_edges) = flatten(faces);
        let (rot_offsets, rot_edges) = flatten(rotations);
        Tiling {
            kind,
            vertex_count,
            edges,
            face_offsets,
            face_edges,
            rot_offsets,
            rot_edges,
        }
    }
}

fn flatten(lists: &[Vec<u32>]) -> (Vec<u32>, Vec<u32>) {
    let mut offsets = Vec::with_capacity(lists.len() + 1);
    let mut flat = Vec::with_capacity(lists.iter().map(Vec::len).sum());
    offsets.push(0);
    for l in lists {
        flat.extend_from_slice(l);
        offsets.push(flat.len() as u32);
    }
    (offsets, flat)
}

/// Square `k x k` torus. Vertex `(row, col)` has index `row * k + col`;
/// the edge leaving it eastwards is `2 * index`, northwards `2 * index + 1`.
pub fn build_torus(k: u32) -> Result<Tiling> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!(
            "torus side must be at least 3 (got {k}); smaller sides create loops or parallel edges"
        )));
    }
    let k = k as usize;
    let idx = |r: usize, c: usize| (r % k) * k + (c % k);
    let east = |r: usize, c: usize| (2 * idx(r, c)) as u32;
    let north = |r: usize, c: usize| (2 * idx(r, c) + 1) as u32;

    let mut edges = Vec::with_capacity(2 * k * k);
    for r in 0..k {
        for c in 0..k {
            edges.push([idx(r, c) as u32, idx(r, c + 1) as u32]);
            edges.push([idx(r, c) as u32, idx(r + 1, c) as u32]);
        }
    }
    let mut faces = Vec::with_capacity(k * k);
    let mut rotations = Vec::with_capacity(k * k);
    for r in 0..k {
        for c in 0..k {
            // counter-clockwise around the unit square with lower-left (r, c)
            faces.push(vec![east(r, c), north(r, c + 1), east(r + 1, c), north(r, c)]);
            // east, north, west, south
            rotations.push(vec![
                east(r, c),
                north(r, c),
                east(r, c + k - 1),
                north(r + k - 1, c),
            ]);
        }
    }
    Ok(Tiling::from_parts(
        TilingKind::Torus { k: k as u32 },
        k * k,
        edges,
        &faces,
        &rotations,
    ))
}

/// The cycle graph `C_n` drawn on the sphere: two `n`-gon faces.
pub fn build_polygon(n: u32) -> Result<Tiling> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "polygon needs at least 3 sides (got {n})"
        )));
    }
    let n = n as usize;
    let edges: Vec<[u32; 2]> = (0..n).map(|i| [i as u32, ((i + 1) % n) as u32]).collect();
    let inner: Vec<u32> = (0..n as u32).collect();
    let outer: Vec<u32> = inner.iter().rev().copied().collect();
    let rotations: Vec<Vec<u32>> = (0..n)
        .map(|i| vec![i as u32, ((i + n - 1) % n) as u32])
        .collect();
    Ok(Tiling::from_parts(
        TilingKind::Polygon { n: n as u32 },
        n,
        edges,
        &[inner, outer],
        &rotations,
    ))
}

/// Dual of a closed tiling. Vertex `f` of the result is face `f` of `t`,
/// edge `i` of the result crosses edge `i` of `t`, and face `v` of the
/// result is the rotation around vertex `v` of `t`.
pub fn dual(t: &Tiling) -> Result<Tiling> {
    let edge_faces = t.edge_faces();
    if let Some((e, fs)) = edge_faces.iter().enumerate().find(|(_, fs)| fs.len() != 2) {
        return Err(Error::Precondition(format!(
            "dual requires a closed tiling; edge {e} lies on {} face(s)",
            fs.len()
        )));
    }
    let edges: Vec<[u32; 2]> = edge_faces
        .iter()
        .map(|fs| [fs[0].min(fs[1]), fs[0].max(fs[1])])
        .collect();
    let faces: Vec<Vec<u32>> = (0..t.vertex_count).map(|v| t.rotation(v).to_vec()).collect();
    let rotations: Vec<Vec<u32>> = (0..t.face_count()).map(|f| t.face(f).to_vec()).collect();
    Ok(Tiling::from_parts(
        TilingKind::Dual {
            of: Box::new(t.kind.clone()),
        },
        t.face_count(),
        edges,
        &faces,
        &rotations,
    ))
}
