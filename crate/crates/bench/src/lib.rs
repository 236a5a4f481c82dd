//! Fixtures shared by the benchmarks.

use invlim_core::{compose, PlMap};

pub fn tent_iter(n: usize) -> PlMap {
    let t = PlMap::tent();
    (1..n).fold(t.clone(), |acc, _| compose(&t, &acc))
}

/// Five pieces with `|slope| = 4` everywhere.
pub fn steep() -> PlMap {
    PlMap::from_ratios(&[
        ((0, 1), (0, 1)),
        ((1, 4), (1, 1)),
        ((1, 2), (0, 1)),
        ((3, 4), (1, 1)),
        ((7, 8), (1, 2)),
        ((1, 1), (1, 1)),
    ])
    .expect("valid breakpoints")
}

/// A map whose breakpoints carry six-digit denominators.
pub fn ragged() -> PlMap {
    PlMap::from_ratios(&[
        ((0, 1), (123_457, 999_983)),
        ((104_729, 611_953), (1, 1)),
        ((350_377, 700_001), (7, 999_331)),
        ((611_953, 800_011), (865_591, 999_983)),
        ((1, 1), (0, 1)),
    ])
    .expect("valid breakpoints")
}
