//! Animal enumeration against frozen reference counts, an exhaustive subset
//! search, and the same search run on a larger host.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use phbound::animals::{
    animal_stats, enumerate_with, for_each_connected_subgraph, stream_on, AnimalStats,
};
use phbound::{build_ball, enumerate, stream, Animal, EnumerationOptions, Error, TallyTable, Tiling};
use proptest::prelude::*;

type Rows = BTreeMap<(u32, u32, u32), u64>;

fn rows_of(t: &TallyTable) -> Rows {
    t.rows()
        .into_iter()
        .map(|(k, c)| ((k.edges, k.vertices, k.boundary), u64::try_from(c).unwrap()))
        .collect()
}

/// Rooted animals of `{5,5}` up to eight edges.
const PENTAGONAL: [(u32, u32, u32, u64); 21] = [
    (0, 1, 5, 1),
    (1, 2, 8, 5),
    (2, 3, 11, 30),
    (3, 4, 14, 200),
    (4, 5, 17, 1400),
    (4, 5, 16, 25),
    (5, 6, 20, 10146),
    (5, 6, 19, 450),
    (5, 5, 15, 5),
    (6, 7, 23, 75460),
    (6, 7, 22, 5775),
    (6, 6, 18, 90),
    (7, 8, 26, 572720),
    (7, 8, 25, 64200),
    (7, 8, 24, 480),
    (7, 7, 21, 1155),
    (8, 9, 29, 4418190),
    (8, 9, 28, 661950),
    (8, 9, 27, 13005),
    (8, 8, 24, 12840),
    (8, 8, 23, 180),
];

#[test]
fn pentagonal_table_to_eight_edges() {
    let t = enumerate(5, 8).unwrap();
    let want: Rows = PENTAGONAL.iter().map(|&(e, v, b, c)| ((e, v, b), c)).collect();
    assert_eq!(rows_of(&t), want);
    assert_eq!(t.total(), BigUint::from(5_838_307u64));
    let order: Vec<_> = t.rows().iter().map(|(k, _)| (k.edges, k.vertices, k.boundary)).collect();
    let listed: Vec<_> = PENTAGONAL.iter().map(|&(e, v, b, _)| (e, v, b)).collect();
    assert_eq!(order, listed);
}

#[test]
fn pentagonal_single_edge() {
    let want: Rows = [((0, 1, 5), 1), ((1, 2, 8), 5)].into();
    assert_eq!(rows_of(&enumerate(5, 1).unwrap()), want);
}

#[test]
fn square_lattice_two_edges() {
    let want: Rows = [((0, 1, 4), 1), ((1, 2, 6), 4), ((2, 3, 8), 18)].into();
    assert_eq!(rows_of(&enumerate(4, 2).unwrap()), want);
}

/// Every edge subset of size at most `n` among edges near the root, kept
/// when connected and containing the root.
fn subset_oracle(m: u32, n: u32) -> Rows {
    let host = build_ball(m, n + 2).unwrap();
    let dist = host.bfs_distances(0);
    let near: Vec<u32> = (0..host.edge_count() as u32)
        .filter(|&e| host.edge(e as usize).iter().all(|&v| dist[v as usize] <= n))
        .collect();
    let mut rows = Rows::new();
    let mut chosen = Vec::new();
    fn rec(
        host: &Tiling,
        near: &[u32],
        from: usize,
        left: u32,
        chosen: &mut Vec<u32>,
        rows: &mut Rows,
    ) {
        if let Ok(a) = Animal::new(host, 0, chosen.iter().copied()) {
            let s = animal_stats(&a, host).unwrap();
            *rows.entry((s.edges, s.vertices, s.boundary)).or_default() += 1;
        }
        if left == 0 {
            return;
        }
        for i in from..near.len() {
            chosen.push(near[i]);
            rec(host, near, i + 1, left - 1, chosen, rows);
            chosen.pop();
        }
    }
    rec(&host, &near, 0, n, &mut chosen, &mut rows);
    rows
}

#[test]
fn enumeration_matches_exhaustive_subsets() {
    for (m, n) in [(4, 3), (5, 3), (6, 2), (7, 2), (8, 2)] {
        assert_eq!(rows_of(&enumerate(m, n).unwrap()), subset_oracle(m, n), "m={m} n={n}");
    }
}

fn rows_on_full_ball(m: u32, n: u32) -> Rows {
    let host = build_ball(m, n + 2).unwrap();
    let mut rows = Rows::new();
    stream_on(&host, 0, n, |a| {
        *rows
            .entry((a.stats.edges, a.stats.vertices, a.stats.boundary))
            .or_default() += 1;
    })
    .unwrap();
    rows
}

#[test]
fn trimmed_host_matches_a_padded_one() {
    for (m, n) in [(4, 6), (5, 7), (6, 5), (7, 4), (8, 3)] {
        assert_eq!(rows_of(&enumerate(m, n).unwrap()), rows_on_full_ball(m, n), "m={m} n={n}");
    }
}

#[test]
fn stream_emission_counts() {
    let mut count = 0;
    stream(5, 2, |_| count += 1).unwrap();
    assert_eq!(count, 36);

    let mut seen = Vec::new();
    stream(5, 0, |s| seen.push(s)).unwrap();
    assert_eq!(seen, vec![AnimalStats::new(0, 1, 5)]);

    let mut seen = Vec::new();
    stream(4, 1, |s| seen.push(s)).unwrap();
    seen.sort();
    let mut want = vec![AnimalStats::new(1, 2, 6); 4];
    want.insert(0, AnimalStats::new(0, 1, 4));
    assert_eq!(seen, want);
}

#[test]
fn small_count_identities() {
    for m in 4..=9u32 {
        let t = enumerate(m, 2).unwrap();
        let by_edges = |e: u32| -> u64 {
            t.rows()
                .iter()
                .filter(|(k, _)| k.edges == e)
                .map(|(_, c)| u64::try_from(*c).unwrap())
                .sum()
        };
        assert_eq!(by_edges(0), 1);
        assert_eq!(by_edges(1), m as u64);
        assert_eq!(2 * by_edges(2), 3 * (m * (m - 1)) as u64);
    }
}

fn face_around_root(t: &Tiling) -> Vec<u32> {
    t.faces()
        .find(|f| f.iter().any(|&e| t.edge(e as usize).contains(&0)))
        .unwrap()
        .to_vec()
}

#[test]
fn stats_of_small_animals() {
    let host = build_ball(5, 4).unwrap();
    let face = face_around_root(&host);
    let pentagon = Animal::new(&host, 0, face.iter().copied()).unwrap();
    assert_eq!(animal_stats(&pentagon, &host).unwrap(), AnimalStats::new(5, 5, 15));

    let open: Vec<u32> = face
        .iter()
        .copied()
        .filter(|&e| !host.edge(e as usize).contains(&0))
        .chain(face.iter().copied().filter(|&e| host.edge(e as usize).contains(&0)).take(1))
        .collect();
    let path = Animal::new(&host, 0, open).unwrap();
    assert_eq!(animal_stats(&path, &host).unwrap(), AnimalStats::new(4, 5, 16));

    let empty = Animal::new(&host, 0, []).unwrap();
    assert_eq!(animal_stats(&empty, &host).unwrap(), AnimalStats::new(0, 1, 5));
}

#[test]
fn frontier_animals_are_rejected() {
    let host = build_ball(5, 2).unwrap();
    let dist = host.bfs_distances(0);
    let edge_out = (0..host.edge_count() as u32)
        .find(|&e| {
            let [a, b] = host.edge(e as usize);
            dist[a as usize].min(dist[b as usize]) == 1 && dist[a as usize].max(dist[b as usize]) == 2
        })
        .unwrap();
    let [a, b] = host.edge(edge_out as usize);
    let inner = if dist[a as usize] == 1 { a } else { b };
    let start = host
        .rotation(0)
        .iter()
        .copied()
        .find(|&e| host.edge(e as usize).contains(&inner))
        .unwrap();
    let a = Animal::new(&host, 0, [start, edge_out]).unwrap();
    assert!(matches!(animal_stats(&a, &host), Err(Error::Frontier { .. })));
}

#[test]
fn malformed_animals_are_rejected() {
    let host = build_ball(5, 3).unwrap();
    let far = (0..host.edge_count() as u32)
        .find(|&e| !host.edge(e as usize).contains(&0))
        .unwrap();
    assert!(Animal::new(&host, 0, [far]).is_err());
    assert!(Animal::new(&host, 0, [u32::MAX]).is_err());
    assert!(Animal::new(&host, u32::MAX, []).is_err());
}

#[test]
fn worker_count_does_not_change_tallies() {
    for (m, n) in [(5, 7), (6, 5), (4, 6)] {
        let one = EnumerationOptions {
            threads: Some(1),
            ..Default::default()
        };
        let many = EnumerationOptions {
            threads: Some(4),
            ..Default::default()
        };
        let a = enumerate_with(m, n, &one).unwrap();
        let b = enumerate_with(m, n, &many).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_csv(), b.to_csv());
    }
}

#[test]
fn oversized_hosts_are_refused() {
    let tiny = EnumerationOptions {
        threads: Some(1),
        vertex_limit: 100,
    };
    assert!(matches!(enumerate_with(5, 6, &tiny), Err(Error::Resource { .. })));
    assert!(matches!(enumerate(3, 2), Err(Error::InvalidArgument(_))));
}

#[test]
fn csv_round_trip() {
    let t = enumerate(6, 4).unwrap();
    let csv = t.to_csv();
    assert!(csv.starts_with("edges,vertices,boundary,count\n"));
    let back = TallyTable::from_csv(&csv).unwrap();
    assert_eq!(back, t);
    assert_eq!(back.digest(), t.digest());
    assert_eq!(t.truncated(2), enumerate(6, 2).unwrap());
    assert!(TallyTable::from_csv("e,v,b,c\n0,1,5,1\n").is_err());
    assert!(TallyTable::from_csv("edges,vertices,boundary,count\n0,1,5,x\n").is_err());
    assert!(TallyTable::from_csv("edges,vertices,boundary,count\n1,2,8,5\n").is_err());
}

#[test]
fn triangle_connected_subgraphs() {
    let tri = phbound::tiling::build_polygon(3).unwrap();
    let mut by_edges = [0usize; 4];
    for_each_connected_subgraph(&tri, |c| by_edges[c.stats.edges as usize] += 1).unwrap();
    assert_eq!(by_edges, [3, 3, 3, 1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// `m |V| = 2 |E| + |boundary| + (boundary edges with both ends in V)`,
    /// and for `m >= 5` every non-empty animal has more boundary than edges.
    #[test]
    fn degree_count_identity(m in 4u32..=7, n in 1u32..=4) {
        let host = build_ball(m, n + 2).unwrap();
        let mut failures = Vec::new();
        stream_on(&host, 0, n, |a| {
            let mut verts = HashSet::new();
            for &e in a.edges {
                verts.extend(host.edge(e as usize));
            }
            verts.insert(0);
            let inside: HashSet<u32> = a.edges.iter().copied().collect();
            let chords: HashSet<u32> = verts
                .iter()
                .flat_map(|&v| host.rotation(v as usize).iter().copied())
                .filter(|e| !inside.contains(e))
                .filter(|&e| host.edge(e as usize).iter().all(|v| verts.contains(v)))
                .collect();
            let chords = chords.len() as u32;
            let s = a.stats;
            if m * s.vertices != 2 * s.edges + s.boundary + chords {
                failures.push((s, chords));
            }
            if m >= 5 && s.edges > 0 && s.boundary <= s.edges {
                failures.push((s, u32::MAX));
            }
            if s.vertices as usize != verts.len() || s.vertices > s.edges + 1 {
                failures.push((s, 0));
            }
        }).unwrap();
        prop_assert!(failures.is_empty(), "{:?}", &failures[..failures.len().min(5)]);
    }
}
