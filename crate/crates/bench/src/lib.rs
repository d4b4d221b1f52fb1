//! Criterion benchmarks for phbound; see `benches/`.
