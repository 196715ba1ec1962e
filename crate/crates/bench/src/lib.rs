//! Criterion benchmarks for the invariant pipeline live in `benches/`.
