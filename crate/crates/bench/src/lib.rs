//! Criterion benchmarks for nestpoly; see `benches/sweep.rs` and run `cargo bench -p nestpoly-bench`.
