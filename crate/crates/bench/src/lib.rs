//! Benchmark crate for berkstat-core; see the `benches/` directory.
//!
//! Run with `cargo bench -p berkstat-bench`.
