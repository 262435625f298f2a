//! Shared fixtures for unit tests.

use crate::order::{CyclicOrder, PartialOrder, TotalOrder};

pub(crate) const B3_ELEMENTS: [&str; 8] = ["0", "x", "y", "z", "xy", "xz", "yz", "xyz"];

fn subset_of(a: &str, b: &str) -> bool {
    // "0" stands for the empty set.
    a == "0" || a.chars().all(|c| b.contains(c))
}

pub(crate) fn b3_pairs() -> Vec<(&'static str, &'static str)> {
    let mut pairs = Vec::new();
    for &a in &B3_ELEMENTS {
        for &b in &B3_ELEMENTS {
            if subset_of(a, b) {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Power set of {x, y, z} under inclusion, the running lattice fixture.
pub(crate) fn b3_lattice() -> PartialOrder {
    PartialOrder::validate(B3_ELEMENTS, b3_pairs()).unwrap()
}

pub(crate) fn five_cycle() -> CyclicOrder {
    CyclicOrder::from_cycle(["v1", "v2", "v3", "v4", "v5"]).unwrap()
}

/// The total order 0 <= 1 <= ... <= n-1 on stringified integers.
pub(crate) fn int_window(n: usize) -> TotalOrder {
    TotalOrder::from_ranked((0..n).map(|i| i.to_string())).unwrap()
}
