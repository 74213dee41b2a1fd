//! Criterion benchmarks for `plv-core`; see `benches/pipeline.rs`.
