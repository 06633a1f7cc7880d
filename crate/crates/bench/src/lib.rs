//! Criterion benchmarks for `nonobtuse-core`; see `benches/`.
