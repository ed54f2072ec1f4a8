//! Bench-only crate; the measurements live in `benches/hot_paths.rs`.
