//! Criterion benchmarks for the solvers live in `benches/solvers.rs`.
