//! Benchmarks for the numeric and exact kernels of `multibrot-core`; run with `cargo bench -p multibrot-bench`.
