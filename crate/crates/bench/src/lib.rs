//! Criterion benchmarks for the trinogen engine; see `benches/`.
