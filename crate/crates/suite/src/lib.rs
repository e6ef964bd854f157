//! Holds the `acceptance` test target; run it with `cargo test --test acceptance -- --nocapture`.
