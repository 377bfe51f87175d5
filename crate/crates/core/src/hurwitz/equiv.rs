use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::normal::check_simple_closing;
use super::{Direction, HurwitzSystem};
use crate::algebra::{Flavor, GroupElement, Permutation};

pub const DEFAULT_BFS_BUDGET: usize = 100_000;

/// Verdict of [`hc_equivalent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equivalence {
    Equivalent,
    Distinct,
    Unknown,
}

impl Equivalence {
    pub fn name(self) -> &'static str {
        match self {
            Equivalence::Equivalent => "equivalent",
            Equivalence::Distinct => "distinct",
            Equivalence::Unknown => "unknown",
        }
    }
}

/// Decides HC-equivalence.
///
/// Cheap invariants are compared first. Simple closing permutation systems
/// are then decided exactly (transitive: by length; intransitive: by the
/// multiset of `(orbit size, entries on orbit)`). Everything else falls back
/// to a bidirectional breadth-first search over Hurwitz moves and
/// conjugation by standard generators, visiting at most `budget` systems.
/// A fully explored orbit yields `Distinct`; an exhausted budget `Unknown`.
pub fn hc_equivalent<G: GroupElement>(
    s: &HurwitzSystem<G>,
    t: &HurwitzSystem<G>,
    budget: usize,
) -> Equivalence {
    if s.degree() != t.degree() || !same_invariants(s, t) {
        return Equivalence::Distinct;
    }
    if s == t {
        return Equivalence::Equivalent;
    }
    if G::FLAVOR == Flavor::Permutation {
        let (ps, pt) = (s.project(), t.project());
        if let (Some(a), Some(b)) = (orbit_signature(&ps), orbit_signature(&pt)) {
            return if a == b {
                Equivalence::Equivalent
            } else {
                Equivalence::Distinct
            };
        }
    }
    bidirectional_search(s, t, budget)
}

/// Sorted `(orbit size, entries on orbit)` for simple closing systems.
fn orbit_signature(s: &HurwitzSystem<Permutation>) -> Option<Vec<(usize, usize)>> {
    check_simple_closing(s).ok()?;
    let mut sig: Vec<(usize, usize)> = s
        .orbits()
        .iter()
        .map(|o| {
            let n = s
                .entries()
                .iter()
                .filter(|a| o.contains(&a.transposition_points().unwrap().0))
                .count();
            (o.len(), n)
        })
        .collect();
    sig.sort_unstable();
    Some(sig)
}

fn class_key<G: GroupElement>(a: &G) -> (Vec<usize>, i64) {
    let p = a.to_permutation();
    (p.cycle_type(), a.exponent_sum())
}

fn same_invariants<G: GroupElement>(s: &HurwitzSystem<G>, t: &HurwitzSystem<G>) -> bool {
    if s.len() != t.len() {
        return false;
    }
    let classes = |x: &HurwitzSystem<G>| {
        let mut v: Vec<_> = x.entries().iter().map(class_key).collect();
        v.sort();
        v
    };
    if classes(s) != classes(t) {
        return false;
    }
    if class_key(&s.total_monodromy()) != class_key(&t.total_monodromy()) {
        return false;
    }
    let shape = |x: &HurwitzSystem<G>| {
        let mut v: Vec<usize> = x.orbits().iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    };
    shape(s) == shape(t)
}

fn neighbours<G: GroupElement>(x: &[G], gens: &[G]) -> Vec<Vec<G>> {
    let d = x.first().map(G::degree).unwrap_or(0);
    let mut out = Vec::with_capacity(2 * x.len() + gens.len());
    for k in 1..x.len() {
        for dir in [Direction::Forward, Direction::Inverse] {
            let mut s = HurwitzSystem {
                degree: d,
                entries: x.to_vec(),
            };
            s.hurwitz_move_in_place(k, dir).expect("index in range");
            out.push(s.entries);
        }
    }
    for g in gens {
        out.push(x.iter().map(|a| a.conjugate_by(g)).collect());
    }
    out
}

fn bidirectional_search<G: GroupElement>(
    s: &HurwitzSystem<G>,
    t: &HurwitzSystem<G>,
    budget: usize,
) -> Equivalence {
    let d = s.degree();
    let mut gens = Vec::new();
    for i in 1..d {
        gens.push(G::standard_generator(d, i, 1));
        if G::FLAVOR == Flavor::Braid {
            gens.push(G::standard_generator(d, i, -1));
        }
    }
    // side 0 grows from s, side 1 from t
    let mut seen: HashMap<Vec<G>, u8> = HashMap::new();
    let mut queues = [VecDeque::new(), VecDeque::new()];
    seen.insert(s.entries.clone(), 0);
    seen.insert(t.entries.clone(), 1);
    queues[0].push_back(s.entries.clone());
    queues[1].push_back(t.entries.clone());
    loop {
        if queues[0].is_empty() || queues[1].is_empty() {
            return Equivalence::Distinct;
        }
        let side = if queues[0].len() <= queues[1].len() {
            0
        } else {
            1
        };
        let level = queues[side].len();
        for _ in 0..level {
            let x = queues[side].pop_front().unwrap();
            for y in neighbours(&x, &gens) {
                match seen.get(&y) {
                    Some(&o) if o != side as u8 => return Equivalence::Equivalent,
                    Some(_) => {}
                    None => {
                        if seen.len() >= budget {
                            return Equivalence::Unknown;
                        }
                        seen.insert(y.clone(), side as u8);
                        queues[side].push_back(y);
                    }
                }
            }
        }
    }
}
