//! Benchmarks for plbkit; see `benches/`.
