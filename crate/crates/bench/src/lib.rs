//! Benchmark workloads for `congruence-core`. The benches live in `benches/`.

use congruence_core::{Family, ScanOptions, ScanRanges, Span};

/// The full Theorems 1-2 rectangle at desk scale: every `x` in `[0, m)` for
/// `m` in `[2, max_m]`.
pub fn l_theorem_ranges(max_m: i64) -> ScanRanges {
    ScanRanges::moduli(2..=max_m).with_x("0..m-1".parse::<Span>().expect("static range"))
}

pub fn single_threaded() -> ScanOptions {
    ScanOptions {
        workers: 1,
        ..ScanOptions::default()
    }
}

pub const SWEEP_FAMILIES: [Family; 3] = [Family::Gauss, Family::Leibniz, Family::LTheorems];
