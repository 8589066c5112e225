//! Benchmark-only crate; see `benches/desk.rs`.
