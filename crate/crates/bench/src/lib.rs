//! Criterion benchmarks for the unitri kernels live under `benches/`.
