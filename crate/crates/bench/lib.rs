//! Benchmarks for the parity-ca kernels live in `benches/`.
