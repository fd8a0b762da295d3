//! Criterion benchmarks for the `pretest-core` kernels live in `benches/kernels.rs`.
