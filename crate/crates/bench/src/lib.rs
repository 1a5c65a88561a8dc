//! Benchmarks for gauge-core live in `benches/`; this library is empty.
