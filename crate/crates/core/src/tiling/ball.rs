//! Layered face-closure construction of balls in the `{m,m}` tiling.
//!
//! The patch is always a closed disk whose boundary is kept as a cyclic
//! doubly-linked list of vertices, oriented so that the interior lies on the
//! left. Each boundary vertex stores its incident edges in a ring buffer, in
//! counter-clockwise order from the edge to its boundary successor to the
//! edge to its boundary predecessor; the exterior gap sits between the two
//! ends of the ring.
//!
//! A new `m`-gon is always glued along a maximal boundary path whose inner
//! vertices are missing exactly one face. Those vertices are closed off by
//! the new face, the path endpoints gain one face and one edge, and the rest
//! of the face is fresh vertices. Vertices are completed layer by layer in
//! order of graph distance from the root, and within a layer the vertex with
//! the most faces already present goes first.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{Tiling, TilingKind};
use crate::error::{Error, Result};

/// Default cap on the number of vertices a ball may have.
pub const DEFAULT_VERTEX_LIMIT: usize = 40_000_000;

const NONE: u32 = u32::MAX;

/// Builds the ball of radius `radius` around vertex 0 of `{m,m}`.
pub fn build_ball(m: u32, radius: u32) -> Result<Tiling> {
    build_ball_with_limit(m, radius, DEFAULT_VERTEX_LIMIT)
}

/// As [`build_ball`], failing with [`Error::Resource`] once the patch would
/// exceed `vertex_limit` vertices.
pub fn build_ball_with_limit(m: u32, radius: u32, vertex_limit: usize) -> Result<Tiling> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!(
            "{{m,m}} tilings need m >= 4 (got {m})"
        )));
    }
    if m > 64 {
        return Err(Error::InvalidArgument(format!("m = {m} is too large")));
    }
    if radius < 1 {
        return Err(Error::InvalidArgument("ball radius must be at least 1".into()));
    }
    let limit = vertex_limit.min(u32::MAX as usize - 1);
    let mut b = Builder::new(m as usize, limit)?;
    b.complete(0, None)?;
    for layer in 1..radius {
        b.complete_layer(layer)?;
    }
    Ok(b.finish(radius))
}

struct Builder {
    m: usize,
    limit: usize,
    edges: Vec<[u32; 2]>,
    face_edges: Vec<u32>,
    rot: Vec<u32>,
    rot_start: Vec<u8>,
    rot_len: Vec<u8>,
    faces_at: Vec<u8>,
    next: Vec<u32>,
    prev: Vec<u32>,
    dist: Vec<u32>,
}

impl Builder {
    fn new(m: usize, limit: usize) -> Result<Builder> {
        let mut b = Builder {
            m,
            limit,
            edges: Vec::new(),
            face_edges: Vec::new(),
            rot: Vec::new(),
            rot_start: Vec::new(),
            rot_len: Vec::new(),
            faces_at: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            dist: Vec::new(),
        };
        // seed face 0 -> 1 -> ... -> m-1 -> 0, counter-clockwise
        for _ in 0..m {
            b.new_vertex()?;
        }
        for i in 0..m {
            b.edges.push([i as u32, ((i + 1) % m) as u32]);
        }
        for i in 0..m {
            let to_next = i as u32;
            let to_prev = ((i + m - 1) % m) as u32;
            b.push_back(i, to_next);
            b.push_back(i, to_prev);
            b.faces_at[i] = 1;
            b.next[i] = ((i + 1) % m) as u32;
            b.prev[i] = ((i + m - 1) % m) as u32;
        }
        b.face_edges.extend(0..m as u32);
        b.dist[0] = 0;
        Ok(b)
    }

    fn vertex_count(&self) -> usize {
        self.faces_at.len()
    }

    fn new_vertex(&mut self) -> Result<u32> {
        let v = self.vertex_count();
        if v >= self.limit {
            return Err(Error::Resource {
                what: "ball vertices",
                needed: v + 1,
                limit: self.limit,
            });
        }
        self.rot.extend(std::iter::repeat_n(NONE, self.m));
        self.rot_start.push(0);
        self.rot_len.push(0);
        self.faces_at.push(0);
        self.next.push(NONE);
        self.prev.push(NONE);
        self.dist.push(NONE);
        Ok(v as u32)
    }

    fn slot(&self, v: usize, i: usize) -> usize {
        v * self.m + (self.rot_start[v] as usize + i) % self.m
    }

    fn push_front(&mut self, v: usize, e: u32) -> Result<()> {
        self.check_room(v)?;
        self.rot_start[v] = ((self.rot_start[v] as usize + self.m - 1) % self.m) as u8;
        self.rot_len[v] += 1;
        let s = self.slot(v, 0);
        self.rot[s] = e;
        Ok(())
    }

    fn push_back(&mut self, v: usize, e: u32) {
        let s = self.slot(v, self.rot_len[v] as usize);
        self.rot[s] = e;
        self.rot_len[v] += 1;
    }

    fn check_room(&self, v: usize) -> Result<()> {
        if self.rot_len[v] as usize >= self.m {
            return Err(Error::Inconsistent(format!(
                "vertex {v} would exceed degree {}",
                self.m
            )));
        }
        Ok(())
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        (0..self.rot_len[a] as usize).any(|i| {
            let [x, y] = self.edges[self.rot[self.slot(a, i)] as usize];
            (x as usize == b) || (y as usize == b)
        })
    }

    /// Edge from boundary vertex `v` to its successor.
    fn edge_to_next(&self, v: usize) -> u32 {
        self.rot[self.slot(v, 0)]
    }

    fn is_complete(&self, v: usize) -> bool {
        self.faces_at[v] as usize == self.m
    }

    /// Glues one face along the boundary path `path` (successor order).
    /// Returns the path endpoints, whose face count changed.
    fn glue(&mut self, path: &[u32]) -> Result<[u32; 2]> {
        let m = self.m;
        let j = path.len() - 1;
        if j == 0 || j >= m {
            return Err(Error::Inconsistent(format!(
                "face would be glued along a boundary path of {j} edges"
            )));
        }
        let first = path[0] as usize;
        let last = path[j] as usize;
        if first == last {
            return Err(Error::Inconsistent("boundary path closes on itself".into()));
        }
        if j == m - 1 && self.adjacent(first, last) {
            return Err(Error::Inconsistent(format!(
                "closing edge {first}-{last} would duplicate an existing edge"
            )));
        }
        let span = m - j;
        let mut chain = Vec::with_capacity(span + 1);
        chain.push(first as u32);
        for _ in 1..span {
            chain.push(self.new_vertex()?);
        }
        chain.push(last as u32);

        let face_start = self.face_edges.len();
        for &u in &path[..j] {
            let e = self.edge_to_next(u as usize);
            self.face_edges.push(e);
        }
        let first_new_edge = self.edges.len() as u32;
        for w in chain.windows(2) {
            self.edges.push([w[0], w[1]]);
        }
        for k in (0..span).rev() {
            self.face_edges.push(first_new_edge + k as u32);
        }
        debug_assert_eq!(self.face_edges.len() - face_start, m);

        self.push_front(first, first_new_edge)?;
        self.check_room(last)?;
        self.push_back(last, first_new_edge + span as u32 - 1);
        for k in 1..span {
            let x = chain[k] as usize;
            self.push_back(x, first_new_edge + k as u32);
            self.push_back(x, first_new_edge + k as u32 - 1);
            self.faces_at[x] = 1;
        }
        for &u in path {
            self.faces_at[u as usize] += 1;
        }
        for &u in &path[1..j] {
            let u = u as usize;
            if !self.is_complete(u) {
                return Err(Error::Inconsistent(format!(
                    "inner path vertex {u} left with {} faces",
                    self.faces_at[u]
                )));
            }
            self.next[u] = NONE;
            self.prev[u] = NONE;
        }
        for w in chain.windows(2) {
            self.next[w[0] as usize] = w[1];
            self.prev[w[1] as usize] = w[0];
        }
        if self.faces_at[first] as usize > m || self.faces_at[last] as usize > m {
            return Err(Error::Inconsistent("vertex exceeds m faces".into()));
        }
        Ok([first as u32, last as u32])
    }

    /// Boundary path starting at `v` and running forward through vertices
    /// that are missing exactly one face.
    fn forward_path(&self, v: u32, path: &mut VecDeque<u32>) {
        let almost = (self.m - 1) as u8;
        let mut cur = v;
        loop {
            let n = self.next[cur as usize];
            path.push_back(n);
            if self.faces_at[n as usize] != almost || path.len() > self.m {
                break;
            }
            cur = n;
        }
    }

    fn backward_path(&self, v: u32, path: &mut VecDeque<u32>) {
        let almost = (self.m - 1) as u8;
        let mut cur = v;
        loop {
            let p = self.prev[cur as usize];
            path.push_front(p);
            if self.faces_at[p as usize] != almost || path.len() > self.m {
                break;
            }
            cur = p;
        }
    }

    /// Adds faces around `v` until it has all `m`. Every vertex whose face
    /// count changed is reported to `touched`.
    fn complete(&mut self, v: u32, mut touched: Option<&mut Vec<u32>>) -> Result<()> {
        let mut path = VecDeque::with_capacity(self.m + 1);
        while !self.is_complete(v as usize) {
            path.clear();
            path.push_back(v);
            if self.faces_at[v as usize] as usize == self.m - 1 {
                self.backward_path(v, &mut path);
            }
            self.forward_path(v, &mut path);
            let ends = self.glue(path.make_contiguous())?;
            if let Some(t) = touched.as_deref_mut() {
                t.extend_from_slice(&ends);
            }
        }
        Ok(())
    }

    fn recompute_distances(&mut self) {
        let n = self.vertex_count();
        self.dist.clear();
        self.dist.resize(n, NONE);
        self.dist[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(v) = queue.pop_front() {
            let v = v as usize;
            for i in 0..self.rot_len[v] as usize {
                let e = self.rot[self.slot(v, i)] as usize;
                let [a, b] = self.edges[e];
                let w = if a as usize == v { b } else { a } as usize;
                if self.dist[w] == NONE {
                    self.dist[w] = self.dist[v] + 1;
                    queue.push_back(w as u32);
                }
            }
        }
    }

    /// Completes every vertex at distance `layer`, highest face count first
    /// and lowest index among ties.
    fn complete_layer(&mut self, layer: u32) -> Result<()> {
        self.recompute_distances();
        let mut heap: BinaryHeap<(u8, Reverse<u32>)> = (0..self.vertex_count())
            .filter(|&v| self.dist[v] == layer && !self.is_complete(v))
            .map(|v| (self.faces_at[v], Reverse(v as u32)))
            .collect();
        let mut touched = Vec::new();
        while let Some((faces, Reverse(v))) = heap.pop() {
            if self.is_complete(v as usize) || self.faces_at[v as usize] != faces {
                continue;
            }
            touched.clear();
            self.complete(v, Some(&mut touched))?;
            for &u in &touched {
                let u = u as usize;
                if self.dist[u] == layer && !self.is_complete(u) {
                    heap.push((self.faces_at[u], Reverse(u as u32)));
                }
            }
        }
        Ok(())
    }

    fn finish(self, radius: u32) -> Tiling {
        let n = self.vertex_count();
        let m = self.m;
        let mut rot_offsets = Vec::with_capacity(n + 1);
        let mut rot_edges = Vec::with_capacity(2 * self.edges.len());
        rot_offsets.push(0u32);
        for v in 0..n {
            for i in 0..self.rot_len[v] as usize {
                rot_edges.push(self.rot[self.slot(v, i)]);
            }
            rot_offsets.push(rot_edges.len() as u32);
        }
        let face_count = self.face_edges.len() / m;
        let face_offsets = (0..=face_count).map(|f| (f * m) as u32).collect();
        Tiling {
            kind: TilingKind::DiskPatch {
                m: m as u32,
                radius,
                root: 0,
            },
            vertex_count: n,
            edges: self.edges,
            face_offsets,
            face_edges: self.face_edges,
            rot_offsets,
            rot_edges,
        }
    }
}
