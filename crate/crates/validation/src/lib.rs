//! Acceptance gate for the workspace. The checks live in
//! `tests/acceptance.rs`; run them with `cargo test -p anyondec-validation`.
