//! Benchmark fixtures shared by the criterion suites.

use branchcov_core::hurwitz::PermSystem;
use branchcov_core::{HurwitzSystem, Permutation};

/// `((1 2)^n)` followed by a shuffle of adjacent transpositions that keeps
/// the system simple, transitive and closing.
pub fn scrambled_system(d: usize, n: usize) -> PermSystem {
    let mut entries = Vec::new();
    for i in 1..d {
        let t = Permutation::transposition(d, i, i + 1).unwrap();
        entries.push(t);
        entries.push(t);
    }
    let extra = Permutation::transposition(d, 1, 2).unwrap();
    while entries.len() < n {
        entries.push(extra);
        entries.push(extra);
    }
    let mut s = HurwitzSystem::new(d, entries).unwrap();
    for k in 1..s.len() {
        s = s
            .hurwitz_move(k, branchcov_core::Direction::Forward)
            .unwrap();
    }
    s
}
