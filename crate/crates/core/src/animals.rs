//! Enumeration of rooted bond animals.
//!
//! An animal is a connected set of edges containing a fixed root vertex (the
//! empty set counts, standing for the root alone). Every animal is generated
//! exactly once by growing connected sets over an untried-edge stack with a
//! per-branch exclusion set: an edge popped from the stack is excluded from
//! the rest of that branch's siblings, so no animal is reached twice and no
//! isomorphism test is needed.
//!
//! For each animal the enumerator tracks `|E(C)|`, `|V(C)|` and the boundary
//! `|d(C)|`, the number of host edges that touch `V(C)` but are not in
//! `E(C)`. Writing `internal` for the host edges with both ends in `V(C)`,
//! `|d(C)| = sum of degrees over V(C) - internal - |E(C)|`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::digest::sha256_hex;
use crate::error::{Error, Result};
use crate::tiling::{build_ball_with_limit, Tiling, DEFAULT_VERTEX_LIMIT};

/// The key statistics of one animal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnimalStats {
    pub edges: u32,
    pub vertices: u32,
    pub boundary: u32,
}

impl AnimalStats {
    pub fn new(edges: u32, vertices: u32, boundary: u32) -> AnimalStats {
        AnimalStats {
            edges,
            vertices,
            boundary,
        }
    }
}

/// A rooted connected edge-subgraph of a host tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Animal {
    root: u32,
    edges: Vec<u32>,
}

impl Animal {
    /// Checks that `edges` is connected and contains `root` (or is empty).
    pub fn new(host: &Tiling, root: u32, edges: impl IntoIterator<Item = u32>) -> Result<Animal> {
        let mut edges: Vec<u32> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        if (root as usize) >= host.vertex_count() {
            return Err(Error::InvalidArgument(format!("root {root} is not a host vertex")));
        }
        if let Some(&e) = edges.iter().find(|&&e| e as usize >= host.edge_count()) {
            return Err(Error::InvalidArgument(format!("edge {e} is not a host edge")));
        }
        let a = Animal { root, edges };
        let verts = a.vertex_set(host);
        let mut uf = crate::UnionFind::new(verts.len());
        let index = |v: u32| verts.binary_search(&v).unwrap();
        for &e in &a.edges {
            let [x, y] = host.edge(e as usize);
            uf.union(index(x), index(y));
        }
        if verts.binary_search(&root).is_err() {
            return Err(Error::InvalidArgument("animal does not contain its root".into()));
        }
        if uf.components() != 1 {
            return Err(Error::InvalidArgument("animal edges are not connected".into()));
        }
        Ok(a)
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn edge_set(&self) -> &[u32] {
        &self.edges
    }

    /// Sorted endpoints of the edges, or just the root for the empty animal.
    pub fn vertex_set(&self, host: &Tiling) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .edges
            .iter()
            .flat_map(|&e| host.edge(e as usize))
            .chain([self.root])
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Statistics of `a`; every vertex of `a` must have its full neighbourhood
/// present in `host`.
pub fn animal_stats(a: &Animal, host: &Tiling) -> Result<AnimalStats> {
    let interior = interior_mask(host);
    let verts = a.vertex_set(host);
    if let Some(&v) = verts.iter().find(|&&v| !interior[v as usize]) {
        return Err(Error::Frontier { vertex: v as usize });
    }
    let mut incident: Vec<u32> = verts
        .iter()
        .flat_map(|&v| host.rotation(v as usize).iter().copied())
        .collect();
    incident.sort_unstable();
    incident.dedup();
    Ok(AnimalStats {
        edges: a.edges.len() as u32,
        vertices: verts.len() as u32,
        boundary: (incident.len() - a.edges.len()) as u32,
    })
}

/// Vertices whose incident edges and faces are all present: every vertex of
/// a closed tiling, and the completed vertices of a disk patch.
pub(crate) fn interior_mask(t: &Tiling) -> Vec<bool> {
    if t.is_closed() {
        return vec![true; t.vertex_count()];
    }
    let m = t.kind().vertex_degree() as usize;
    let mut faces_at = vec![0usize; t.vertex_count()];
    for f in 0..t.face_count() {
        let face = t.face(f);
        // each vertex of a face is the shared endpoint of two consecutive edges
        for i in 0..face.len() {
            let a = t.edge(face[i] as usize);
            let b = t.edge(face[(i + 1) % face.len()] as usize);
            if let Some(&v) = a.iter().find(|x| b.contains(x)) {
                faces_at[v as usize] += 1;
            }
        }
    }
    (0..t.vertex_count())
        .map(|v| t.degree(v) == m && faces_at[v] == m)
        .collect()
}

/// Adjacency of a host graph in the compact form the search wants.
pub(crate) struct Host {
    offsets: Vec<u32>,
    nbrs: Vec<(u32, u32)>,
    ends: Vec<[u32; 2]>,
    degree: Vec<u32>,
    interior: Vec<bool>,
    /// Vertices that may join an animal only through its last possible
    /// edge. Their true degree is known but some neighbours are absent.
    tip: Vec<bool>,
}

impl Host {
    pub(crate) fn new(t: &Tiling) -> Host {
        let interior = interior_mask(t);
        let mut offsets = Vec::with_capacity(t.vertex_count() + 1);
        let mut nbrs = Vec::with_capacity(2 * t.edge_count());
        offsets.push(0);
        for v in 0..t.vertex_count() {
            for &e in t.rotation(v) {
                nbrs.push((e, t.opposite(e as usize, v) as u32));
            }
            offsets.push(nbrs.len() as u32);
        }
        Host {
            offsets,
            nbrs,
            ends: t.edges().to_vec(),
            degree: (0..t.vertex_count()).map(|v| t.degree(v) as u32).collect(),
            interior,
            tip: vec![false; t.vertex_count()],
        }
    }

    /// Host for rooted animals of `{m,m}` with at most `max_edges` edges,
    /// rooted at vertex 0.
    ///
    /// Only vertices within distance `max_edges` of the root are kept. The
    /// ball is built with radius `max_edges`, so every kept vertex closer
    /// than that is complete. A vertex at distance exactly `max_edges` can
    /// only be the far end of a geodesic path animal, and then its sole
    /// animal neighbour is its predecessor on the path; its statistics need
    /// nothing beyond its degree, which is `m`.
    pub(crate) fn ball(m: u32, max_edges: u32, vertex_limit: usize) -> Result<Host> {
        let t = host_ball(m, max_edges, vertex_limit)?;
        let r = host_radius(max_edges);
        let dist = t.bfs_distances(0);
        let keep: Vec<bool> = dist.iter().map(|&d| d <= r).collect();
        let mut new_index = vec![u32::MAX; t.vertex_count()];
        let mut kept = 0u32;
        for v in (0..t.vertex_count()).filter(|&v| keep[v]) {
            new_index[v] = kept;
            kept += 1;
        }
        let mut edge_index = vec![u32::MAX; t.edge_count()];
        let mut ends = Vec::new();
        for (e, &[a, b]) in t.edges().iter().enumerate() {
            if keep[a as usize] && keep[b as usize] {
                edge_index[e] = ends.len() as u32;
                ends.push([new_index[a as usize], new_index[b as usize]]);
            }
        }
        let mut offsets = Vec::with_capacity(kept as usize + 1);
        let mut nbrs = Vec::with_capacity(2 * ends.len());
        let mut interior = Vec::with_capacity(kept as usize);
        offsets.push(0);
        for v in (0..t.vertex_count()).filter(|&v| keep[v]) {
            if dist[v] < r && t.degree(v) != m as usize {
                return Err(Error::Inconsistent(format!(
                    "vertex {v} at distance {} has degree {}",
                    dist[v],
                    t.degree(v)
                )));
            }
            for &e in t.rotation(v) {
                let x = t.opposite(e as usize, v);
                if keep[x] {
                    nbrs.push((edge_index[e as usize], new_index[x]));
                }
            }
            offsets.push(nbrs.len() as u32);
            interior.push(dist[v] < r);
        }
        let tip = interior.iter().map(|&i| !i).collect();
        Ok(Host {
            offsets,
            nbrs,
            ends,
            degree: vec![m; kept as usize],
            interior,
            tip,
        })
    }

    fn neighbours(&self, v: usize) -> &[(u32, u32)] {
        &self.nbrs[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.degree.len()
    }
}

/// What a search emits for each animal: its statistics and current edges.
pub struct AnimalView<'a> {
    pub stats: AnimalStats,
    pub edges: &'a [u32],
}

#[derive(Clone, Copy)]
enum Phase {
    /// Emit everything.
    Full,
    /// Emit animals with fewer than `split` edges; count, without expanding,
    /// those with exactly `split`.
    Shallow { split: u32 },
    /// Emit and expand only the subtree rooted at the `target`-th animal
    /// with `split` edges.
    Subtree { split: u32, target: usize },
}

pub(crate) struct Search<'h> {
    host: &'h Host,
    max_edges: u32,
    min_vertex: u32,
    seen: Vec<bool>,
    in_animal: Vec<bool>,
    /// `levels[d]` is the untried-edge stack of an animal with `d` edges.
    levels: Vec<Vec<u32>>,
    /// Edges marked seen, in marking order, so each level can unmark its own.
    offered: Vec<u32>,
    current: Vec<u32>,
    vertices: u32,
    degree_sum: u32,
    internal: u32,
    phase: Phase,
    split_count: usize,
    done: bool,
}

impl<'h> Search<'h> {
    pub(crate) fn new(host: &'h Host, max_edges: u32) -> Search<'h> {
        Search {
            host,
            max_edges,
            min_vertex: 0,
            seen: vec![false; host.ends.len()],
            in_animal: vec![false; host.vertex_count()],
            levels: vec![Vec::new(); max_edges as usize + 1],
            offered: Vec::new(),
            current: Vec::with_capacity(max_edges as usize),
            vertices: 0,
            degree_sum: 0,
            internal: 0,
            phase: Phase::Full,
            split_count: 0,
            done: false,
        }
    }

    /// Restrict animals to vertices with index `>= min_vertex`.
    pub(crate) fn set_min_vertex(&mut self, min_vertex: u32) {
        self.min_vertex = min_vertex;
    }

    fn stats(&self) -> AnimalStats {
        AnimalStats {
            edges: self.current.len() as u32,
            vertices: self.vertices,
            boundary: self.degree_sum - self.internal - self.current.len() as u32,
        }
    }

    fn touching(&self, w: usize) -> u32 {
        self.host
            .neighbours(w)
            .iter()
            .filter(|&&(_, x)| self.in_animal[x as usize])
            .count() as u32
    }

    fn add_vertex(&mut self, w: u32) -> Result<()> {
        let w = w as usize;
        let last_edge = self.current.len() as u32 + 1 == self.max_edges;
        if !self.host.interior[w] && !(self.host.tip[w] && last_edge) {
            return Err(Error::Frontier { vertex: w });
        }
        self.internal += self.touching(w);
        self.in_animal[w] = true;
        self.vertices += 1;
        self.degree_sum += self.host.degree[w];
        Ok(())
    }

    fn remove_vertex(&mut self, w: u32) {
        let w = w as usize;
        self.in_animal[w] = false;
        self.internal -= self.touching(w);
        self.vertices -= 1;
        self.degree_sum -= self.host.degree[w];
    }

    /// Marks and pushes the unseen admissible edges at `w` onto `levels[depth]`.
    fn offer_edges(&mut self, w: u32, depth: usize) -> usize {
        let mut pushed = 0;
        for &(f, x) in self.host.neighbours(w as usize) {
            if !self.seen[f as usize] && x >= self.min_vertex {
                self.seen[f as usize] = true;
                self.levels[depth].push(f);
                self.offered.push(f);
                pushed += 1;
            }
        }
        pushed
    }

    fn unoffer(&mut self, count: usize) {
        for _ in 0..count {
            let f = self.offered.pop().expect("offered stack underflow");
            self.seen[f as usize] = false;
        }
    }

    fn emit(&self, sink: &mut dyn FnMut(&AnimalView<'_>)) {
        sink(&AnimalView {
            stats: self.stats(),
            edges: &self.current,
        });
    }

    /// Runs the search from `root`, restoring all state afterwards.
    pub(crate) fn run(&mut self, root: u32, sink: &mut dyn FnMut(&AnimalView<'_>)) -> Result<()> {
        self.split_count = 0;
        self.done = false;
        self.add_vertex(root)?;
        if matches!(self.phase, Phase::Full | Phase::Shallow { .. }) {
            self.emit(sink);
        }
        self.levels[0].clear();
        let pushed = self.offer_edges(root, 0);
        let result = if self.max_edges > 0 {
            self.grow(0, sink)
        } else {
            Ok(())
        };
        self.unoffer(pushed);
        self.remove_vertex(root);
        result
    }

    fn grow(&mut self, depth: usize, sink: &mut dyn FnMut(&AnimalView<'_>)) -> Result<()> {
        let new_depth = depth as u32 + 1;
        while let Some(e) = self.levels[depth].pop() {
            let [a, b] = self.host.ends[e as usize];
            let fresh = match (self.in_animal[a as usize], self.in_animal[b as usize]) {
                (true, true) => None,
                (true, false) => Some(b),
                (false, true) => Some(a),
                (false, false) => unreachable!("untried edge {e} does not touch the animal"),
            };
            if let Some(w) = fresh {
                self.add_vertex(w)?;
            }
            self.current.push(e);

            let mut is_target = false;
            let (emit, expand) = match self.phase {
                Phase::Full => (true, true),
                Phase::Shallow { split } => {
                    if new_depth == split {
                        self.split_count += 1;
                    }
                    (new_depth < split, new_depth < split)
                }
                Phase::Subtree { split, target } => {
                    if new_depth < split {
                        (false, true)
                    } else if new_depth == split {
                        let idx = self.split_count;
                        self.split_count += 1;
                        is_target = idx == target;
                        (is_target, is_target)
                    } else {
                        (true, true)
                    }
                }
            };
            if emit {
                self.emit(sink);
            }
            let mut result = Ok(());
            if expand && new_depth < self.max_edges {
                let next = depth + 1;
                let mut buf = std::mem::take(&mut self.levels[next]);
                buf.clear();
                buf.extend_from_slice(&self.levels[depth]);
                self.levels[next] = buf;
                let pushed = match fresh {
                    Some(w) => self.offer_edges(w, next),
                    None => 0,
                };
                result = self.grow(next, sink);
                self.unoffer(pushed);
            }

            self.current.pop();
            if let Some(w) = fresh {
                self.remove_vertex(w);
            }
            result?;
            if is_target {
                self.done = true;
            }
            if self.done {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Aggregated animal counts keyed by `(edges, vertices, boundary)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TallyTable {
    m: u32,
    max_edges: u32,
    rows: BTreeMap<AnimalStats, BigUint>,
}

/// Header line of the tally CSV format.
pub const TALLY_CSV_HEADER: &str = "edges,vertices,boundary,count";

impl TallyTable {
    pub fn new(m: u32, max_edges: u32) -> TallyTable {
        TallyTable {
            m,
            max_edges,
            rows: BTreeMap::new(),
        }
    }

    /// Builds a table from explicit rows; zero counts are dropped.
    pub fn from_rows(
        m: u32,
        max_edges: u32,
        rows: impl IntoIterator<Item = (AnimalStats, BigUint)>,
    ) -> Result<TallyTable> {
        let mut t = TallyTable::new(m, max_edges);
        for (k, c) in rows {
            t.add(k, c)?;
        }
        Ok(t)
    }

    fn add(&mut self, key: AnimalStats, count: BigUint) -> Result<()> {
        if key.edges > self.max_edges {
            return Err(Error::InvalidArgument(format!(
                "row with {} edges exceeds max_edges = {}",
                key.edges, self.max_edges
            )));
        }
        if key.vertices > key.edges + 1 || key.vertices == 0 {
            return Err(Error::InvalidArgument(format!(
                "row ({}, {}, {}) has an impossible vertex count",
                key.edges, key.vertices, key.boundary
            )));
        }
        if !count.is_zero() {
            *self.rows.entry(key).or_default() += count;
        }
        Ok(())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn max_edges(&self) -> u32 {
        self.max_edges
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, edges: u32, vertices: u32, boundary: u32) -> Option<&BigUint> {
        self.rows.get(&AnimalStats::new(edges, vertices, boundary))
    }

    /// Rows in presentation order: edges ascending, then vertices and
    /// boundary descending.
    pub fn rows(&self) -> Vec<(AnimalStats, &BigUint)> {
        let mut rows: Vec<_> = self.rows.iter().map(|(k, c)| (*k, c)).collect();
        rows.sort_by(|(a, _), (b, _)| {
            a.edges
                .cmp(&b.edges)
                .then(b.vertices.cmp(&a.vertices))
                .then(b.boundary.cmp(&a.boundary))
        });
        rows
    }

    pub fn total(&self) -> BigUint {
        self.rows.values().sum()
    }

    /// Copy restricted to animals with at most `n` edges.
    pub fn truncated(&self, n: u32) -> TallyTable {
        TallyTable {
            m: self.m,
            max_edges: n.min(self.max_edges),
            rows: self
                .rows
                .iter()
                .filter(|(k, _)| k.edges <= n)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(TALLY_CSV_HEADER);
        s.push('\n');
        for (k, c) in self.rows() {
            let _ = writeln!(s, "{},{},{},{}", k.edges, k.vertices, k.boundary, c);
        }
        s
    }

    /// Parses the CSV format. The degree `m` is read from the row of the
    /// empty animal, `(0, 1, m)`.
    pub fn from_csv(text: &str) -> Result<TallyTable> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == TALLY_CSV_HEADER => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected header {TALLY_CSV_HEADER:?}, found {other:?}"
                )))
            }
        }
        let mut rows = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let fields: Vec<&str> = line.trim().split(',').collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 fields", lineno + 2)));
            }
            let num = |i: usize| {
                fields[i]
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 2)))
            };
            let count = fields[3]
                .parse::<BigUint>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 2)))?;
            rows.push((AnimalStats::new(num(0)?, num(1)?, num(2)?), count));
        }
        let m = rows
            .iter()
            .find(|(k, _)| k.edges == 0 && k.vertices == 1)
            .map(|(k, _)| k.boundary)
            .ok_or_else(|| Error::Parse("tally has no row for the empty animal".into()))?;
        let max_edges = rows.iter().map(|(k, _)| k.edges).max().unwrap_or(0);
        TallyTable::from_rows(m, max_edges, rows)
    }

    /// SHA-256 of the canonical CSV.
    pub fn digest(&self) -> String {
        sha256_hex(self.to_csv().as_bytes())
    }
}

/// Tuning knobs for [`enumerate_with`].
#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
    /// Upper bound on the host ball's vertex count.
    pub vertex_limit: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            threads: None,
            vertex_limit: DEFAULT_VERTEX_LIMIT,
        }
    }
}

/// Radius of the host ball needed for animals with up to `max_edges` edges.
pub fn host_radius(max_edges: u32) -> u32 {
    max_edges.max(1)
}

pub(crate) fn host_ball(m: u32, max_edges: u32, vertex_limit: usize) -> Result<Tiling> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!("m must be at least 4 (got {m})")));
    }
    build_ball_with_limit(m, host_radius(max_edges), vertex_limit)
}

/// Dense per-worker counter indexed by `(edges, vertices, boundary)`.
struct Counter {
    max_edges: usize,
    max_boundary: usize,
    counts: Vec<u64>,
}

impl Counter {
    fn new(m: u32, max_edges: u32) -> Counter {
        let max_edges = max_edges as usize;
        let max_boundary = m as usize * (max_edges + 1);
        Counter {
            max_edges,
            max_boundary,
            counts: vec![0; (max_edges + 1) * (max_edges + 2) * (max_boundary + 1)],
        }
    }

    fn slot(&self, s: AnimalStats) -> usize {
        ((s.edges as usize) * (self.max_edges + 2) + s.vertices as usize) * (self.max_boundary + 1)
            + s.boundary as usize
    }

    fn bump(&mut self, s: AnimalStats) {
        let i = self.slot(s);
        self.counts[i] += 1;
    }

    fn merge(mut self, other: Counter) -> Counter {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    fn into_rows(self) -> Vec<(AnimalStats, BigUint)> {
        let vstride = self.max_boundary + 1;
        let estride = (self.max_edges + 2) * vstride;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| {
                let key = AnimalStats::new(
                    (i / estride) as u32,
                    (i % estride / vstride) as u32,
                    (i % vstride) as u32,
                );
                (key, BigUint::from(c))
            })
            .collect()
    }
}

/// Tallies every rooted animal of `{m,m}` with at most `max_edges` edges.
pub fn enumerate(m: u32, max_edges: u32) -> Result<TallyTable> {
    enumerate_with(m, max_edges, &EnumerationOptions::default())
}

pub fn enumerate_with(m: u32, max_edges: u32, opts: &EnumerationOptions) -> Result<TallyTable> {
    let host = Host::ball(m, max_edges, opts.vertex_limit)?;
    tally_on_host(&host, m, max_edges, opts.threads)
}

fn tally_on_host(host: &Host, m: u32, max_edges: u32, threads: Option<usize>) -> Result<TallyTable> {
    let split = max_edges.min(3);
    let mut shallow = Counter::new(m, max_edges);
    let mut search = Search::new(host, max_edges);
    search.phase = Phase::Shallow { split };
    search.run(0, &mut |a| shallow.bump(a.stats))?;
    let tasks = if split == 0 { 0 } else { search.split_count };
    drop(search);

    let work = || {
        (0..tasks)
            .into_par_iter()
            .map_init(
                || Search::new(host, max_edges),
                |s, target| -> Result<Counter> {
                    let mut c = Counter::new(m, max_edges);
                    s.phase = Phase::Subtree { split, target };
                    s.run(0, &mut |a| c.bump(a.stats))?;
                    Ok(c)
                },
            )
            .try_reduce(|| Counter::new(m, max_edges), |a, b| Ok(a.merge(b)))
    };
    let deep = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    TallyTable::from_rows(m, max_edges, shallow.merge(deep).into_rows())
}

/// Feeds the statistics of every rooted animal of `{m,m}` with at most
/// `max_edges` edges to `sink`, on the calling thread.
pub fn stream(m: u32, max_edges: u32, mut sink: impl FnMut(AnimalStats)) -> Result<()> {
    let host = Host::ball(m, max_edges, DEFAULT_VERTEX_LIMIT)?;
    Search::new(&host, max_edges).run(0, &mut |a| sink(a.stats))
}

/// Like [`stream`] over an explicit host, exposing each animal's edges.
pub fn stream_on(
    host: &Tiling,
    root: u32,
    max_edges: u32,
    mut sink: impl FnMut(&AnimalView<'_>),
) -> Result<()> {
    let h = Host::new(host);
    Search::new(&h, max_edges).run(root, &mut sink)
}

/// Visits every connected subgraph of `t` exactly once: each single vertex
/// and each connected non-empty edge set. A subgraph is generated from its
/// smallest vertex only.
pub fn for_each_connected_subgraph(
    t: &Tiling,
    mut visit: impl FnMut(&AnimalView<'_>),
) -> Result<()> {
    let host = Host::new(t);
    let mut search = Search::new(&host, t.edge_count() as u32);
    for v in 0..t.vertex_count() as u32 {
        search.set_min_vertex(v);
        search.run(v, &mut visit)?;
    }
    Ok(())
}

/// `f64` approximation of a count, for series evaluation.
pub(crate) fn count_as_f64(c: &BigUint) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}
