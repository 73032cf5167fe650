//! Benchmarks for `witt-core` live in `benches/`.
