//! Criterion benchmarks for `ncbeta-core`; see `benches/`.
