//! Acceptance checks for `cellsir` live in `tests/acceptance.rs`; run them with
//! `cargo test -p cellsir-validation --test acceptance`.
