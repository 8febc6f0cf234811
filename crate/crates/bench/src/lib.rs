//! Benchmarks for the cq-core algorithms live in `benches/`.
