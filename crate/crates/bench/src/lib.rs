//! Benchmarks only; see `benches/multiplicity.rs`. Run with `cargo bench -p steinberg-bench`.
