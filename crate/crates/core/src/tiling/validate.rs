use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{Tiling, TilingKind};

/// Outcome of one named structural check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Summary of a tiling's structure plus the outcome of each invariant check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallCertificate {
    pub radius: u32,
    pub interior_vertex_count: usize,
    /// Number of vertices at each graph distance from the root.
    pub layer_sizes: Vec<usize>,
    pub checks: Vec<Check>,
}

impl BallCertificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &'static str, failure: Option<String>) {
        self.0.push(Check {
            name,
            passed: failure.is_none(),
            detail: failure.unwrap_or_default(),
        });
    }
}

/// Runs every structural invariant on `t`. Failures are reported in the
/// certificate, never raised.
pub fn validate(t: &Tiling) -> BallCertificate {
    let mut checks = Checks(Vec::new());
    let ne = t.edge_count();
    let nv = t.vertex_count();

    let bad_endpoint = t
        .edges()
        .iter()
        .position(|&[a, b]| a as usize >= nv || b as usize >= nv);
    checks.push(
        "edge_endpoints_in_range",
        bad_endpoint.map(|e| format!("edge {e} has an endpoint >= {nv}")),
    );
    let bad_face_edge = (0..t.face_count()).find(|&f| t.face(f).iter().any(|&e| e as usize >= ne));
    checks.push(
        "face_edges_in_range",
        bad_face_edge.map(|f| format!("face {f} references an edge >= {ne}")),
    );
    if bad_endpoint.is_some() || bad_face_edge.is_some() {
        return BallCertificate {
            radius: 0,
            interior_vertex_count: 0,
            layer_sizes: Vec::new(),
            checks: checks.0,
        };
    }

    let want_len = t.face_length() as usize;
    checks.push(
        "face_length",
        (0..t.face_count()).find_map(|f| {
            let face = t.face(f);
            let distinct: HashSet<_> = face.iter().collect();
            (face.len() != want_len || distinct.len() != want_len).then(|| {
                format!(
                    "face {f} has {} edges ({} distinct), expected {want_len}",
                    face.len(),
                    distinct.len()
                )
            })
        }),
    );
    checks.push(
        "faces_are_closed_walks",
        (0..t.face_count()).find_map(|f| (!is_closed_walk(t, t.face(f))).then(|| format!("face {f}"))),
    );

    checks.push(
        "no_loops",
        t.edges()
            .iter()
            .position(|&[a, b]| a == b)
            .map(|e| format!("edge {e} is a loop")),
    );
    let dup = if t.kind().allows_multi_edges() {
        None
    } else {
        let mut seen = HashSet::with_capacity(ne);
        t.edges()
            .iter()
            .position(|&[a, b]| !seen.insert((a.min(b), a.max(b))))
            .map(|e| format!("edge {e} duplicates an earlier edge"))
    };
    checks.push("no_parallel_edges", dup);

    let edge_faces = t.edge_faces();
    let closed = t.is_closed();
    checks.push(
        "edge_face_incidence",
        edge_faces.iter().enumerate().find_map(|(e, fs)| {
            let ok = if closed { fs.len() == 2 } else { fs.len() <= 2 };
            (!ok).then(|| format!("edge {e} lies on {} faces", fs.len()))
        }),
    );

    let chi = nv as i64 - ne as i64 + t.face_count() as i64;
    let want_chi = t.kind().euler_characteristic();
    checks.push(
        "euler_characteristic",
        (chi != want_chi).then(|| format!("V - E + F = {chi}, expected {want_chi}")),
    );

    checks.push("rotation_matches_edges", rotation_mismatch(t));

    // a polygon's two faces share every edge, so only check genuine tilings
    if !t.kind().is_polygon_sphere() {
        let mut share = HashMap::new();
        for fs in edge_faces.iter().filter(|fs| fs.len() == 2) {
            *share.entry((fs[0].min(fs[1]), fs[0].max(fs[1]))).or_insert(0u32) += 1;
        }
        let mut worst: Vec<_> = share.iter().filter(|(_, &c)| c > 1).collect();
        worst.sort();
        checks.push(
            "faces_share_at_most_one_edge",
            worst
                .first()
                .map(|((a, b), c)| format!("faces {a} and {b} share {c} edges")),
        );
    }

    let root = match t.kind() {
        TilingKind::DiskPatch { root, .. } => *root as usize,
        _ => 0,
    };
    let dist = if nv > 0 { t.bfs_distances(root) } else { Vec::new() };
    let reach = dist.iter().filter(|&&d| d != u32::MAX).count();
    let ecc = dist.iter().filter(|&&d| d != u32::MAX).max().copied().unwrap_or(0);
    let mut layer_sizes = vec![0usize; ecc as usize + 1];
    for &d in dist.iter().filter(|&&d| d != u32::MAX) {
        layer_sizes[d as usize] += 1;
    }
    checks.push(
        "connected",
        (reach != nv).then(|| format!("{} of {nv} vertices reachable from root", reach)),
    );

    let (radius, interior): (u32, Vec<usize>) = match t.kind() {
        TilingKind::DiskPatch { radius, .. } => (
            *radius,
            (0..nv).filter(|&v| dist[v] < *radius).collect(),
        ),
        _ => (ecc, (0..nv).collect()),
    };

    let degree = t.kind().vertex_degree() as usize;
    let mut faces_at = vec![0usize; nv];
    for f in 0..t.face_count() {
        let verts: HashSet<u32> = t.face(f).iter().flat_map(|&e| t.edge(e as usize)).collect();
        for v in verts {
            faces_at[v as usize] += 1;
        }
    }
    checks.push(
        "interior_degree",
        interior.iter().find_map(|&v| {
            (t.degree(v) != degree || faces_at[v] != degree).then(|| {
                format!(
                    "vertex {v} has degree {} and {} faces, expected {degree} of each",
                    t.degree(v),
                    faces_at[v],
                )
            })
        }),
    );

    if let TilingKind::DiskPatch { m, .. } = t.kind() {
        if *m >= 5 {
            let girth = interior
                .iter()
                .filter_map(|&v| shortest_cycle_through(t, v, *m as usize))
                .min();
            checks.push(
                "interior_girth",
                (girth != Some(*m as usize))
                    .then(|| format!("shortest interior cycle {girth:?}, expected {m}")),
            );
        }
    }

    BallCertificate {
        radius,
        interior_vertex_count: interior.len(),
        layer_sizes,
        checks: checks.0,
    }
}

fn is_closed_walk(t: &Tiling, face: &[u32]) -> bool {
    if face.is_empty() {
        return false;
    }
    let n = face.len();
    (0..n).all(|i| {
        let a = t.edge(face[i] as usize);
        let b = t.edge(face[(i + 1) % n] as usize);
        a.iter().any(|x| b.contains(x))
    })
}

fn rotation_mismatch(t: &Tiling) -> Option<String> {
    let mut incident = vec![Vec::new(); t.vertex_count()];
    for (e, &[a, b]) in t.edges().iter().enumerate() {
        incident[a as usize].push(e as u32);
        if a != b {
            incident[b as usize].push(e as u32);
        }
    }
    (0..t.vertex_count()).find_map(|v| {
        let mut rot = t.rotation(v).to_vec();
        rot.sort_unstable();
        (rot != incident[v]).then(|| format!("rotation at vertex {v} disagrees with the edge list"))
    })
}

/// Length of the shortest cycle found by a breadth-first search from `v`
/// limited to depth `max_len / 2 + 1`.
fn shortest_cycle_through(t: &Tiling, v: usize, max_len: usize) -> Option<usize> {
    let depth_cap = (max_len / 2 + 1) as u32;
    let mut dist: HashMap<usize, (u32, usize)> = HashMap::new();
    dist.insert(v, (0, usize::MAX));
    let mut queue = VecDeque::from([v]);
    let mut best: Option<usize> = None;
    while let Some(x) = queue.pop_front() {
        let (dx, via) = dist[&x];
        if dx >= depth_cap {
            continue;
        }
        for &e in t.rotation(x) {
            let e = e as usize;
            if e == via {
                continue;
            }
            let y = t.opposite(e, x);
            match dist.get(&y) {
                None => {
                    dist.insert(y, (dx + 1, e));
                    queue.push_back(y);
                }
                Some(&(dy, _)) => {
                    let len = (dx + dy + 1) as usize;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{build_ball, build_polygon, build_torus, dual};

    #[test]
    fn pentagonal_ball_passes() {
        let cert = validate(&build_ball(5, 3).unwrap());
        assert!(cert.all_passed(), "{:?}", cert.failed().collect::<Vec<_>>());
        assert_eq!(cert.layer_sizes[0], 1);
        assert_eq!(cert.layer_sizes[1], 5);
        assert!(cert.check("interior_girth").unwrap().passed);
    }

    #[test]
    fn torus_passes() {
        let t = build_torus(3).unwrap();
        let cert = validate(&t);
        assert!(cert.all_passed(), "{:?}", cert.failed().collect::<Vec<_>>());
        assert_eq!(cert.layer_sizes.iter().sum::<usize>(), 9);
        let d = validate(&dual(&t).unwrap());
        assert!(d.all_passed(), "{:?}", d.failed().collect::<Vec<_>>());
    }

    #[test]
    fn polygon_and_its_dual_pass() {
        let t = build_polygon(3).unwrap();
        let c = validate(&t);
        assert!(c.all_passed(), "{:?}", c.failed().collect::<Vec<_>>());
        let d = validate(&dual(&t).unwrap());
        assert!(d.all_passed(), "{:?}", d.failed().collect::<Vec<_>>());
    }

    #[test]
    fn corrupted_face_fails_length_check() {
        let mut t = build_ball(5, 2).unwrap();
        // drop the last edge of face 0 by shifting its end offset
        let removed = t.face_offsets[1] as usize - 1;
        t.face_edges.remove(removed);
        for off in t.face_offsets.iter_mut().skip(1) {
            *off -= 1;
        }
        let cert = validate(&t);
        assert!(!cert.check("face_length").unwrap().passed);
        assert!(!cert.all_passed());
    }

    #[test]
    fn duplicated_edge_is_reported() {
        let mut t = build_torus(3).unwrap();
        t.edges[1] = t.edges[0];
        let cert = validate(&t);
        assert!(!cert.check("no_parallel_edges").unwrap().passed);
    }
}
