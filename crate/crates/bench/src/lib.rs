//! Criterion benchmarks for `srlim-core`; see `benches/`.
