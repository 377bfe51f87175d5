use std::collections::HashSet;

use super::color::{act, check_coloring, unact};
use super::{solve, BraidColoring, LinkDiagram, PermColoring, SimpleColoring};
use crate::algebra::{BraidWord, GroupElement, Permutation};
use crate::dsu::Dsu;
use crate::error::{Error, Result};

pub const DEFAULT_LIFT_CONJUGATOR_LENGTH: usize = 6;
pub const DEFAULT_LIFT_BUDGET: u64 = 1_000_000;

/// Search bounds for [`find_simple_lift`]: the conjugator length of the
/// candidates tried on free arcs and the number of relation evaluations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftBounds {
    pub conjugator_length: usize,
    pub budget: u64,
}

impl Default for LiftBounds {
    fn default() -> Self {
        LiftBounds {
            conjugator_length: DEFAULT_LIFT_CONJUGATOR_LENGTH,
            budget: DEFAULT_LIFT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Lift(BraidColoring),
    /// No lift among the candidates within bounds. This is not a proof that
    /// no lift exists.
    NotFound {
        checks: u64,
        budget_exhausted: bool,
    },
}

/// Conjugates `w⁻¹ σ_i^{±1} w` grouped by the length of the shortest
/// conjugator found, up to `max_len`, without repetitions.
pub(crate) fn conjugates_by_length(d: usize, max_len: usize) -> Vec<Vec<BraidWord>> {
    let gens: Vec<BraidWord> = (1..d)
        .flat_map(|i| [1i8, -1].map(|s| BraidWord::standard_generator(d, i, s)))
        .collect();
    let mut seen: HashSet<BraidWord> = gens.iter().cloned().collect();
    let mut layers = vec![gens.clone()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in layers.last().unwrap() {
            for g in &gens {
                let y = x.conjugate_by(g).freely_reduced();
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    layers
}

/// Arcs whose lifts must have equal exponent sum: the two under-arcs of
/// every crossing. Returns a class id per arc.
///
/// Each lift has exponent sum `±1`, so the resulting linear system always
/// has solutions (all `+1`, for instance); the classes only prune the search.
pub fn exponent_sum_classes(dg: &LinkDiagram) -> Vec<usize> {
    let mut dsu = Dsu::new(dg.arc_count());
    for c in dg.crossing_data() {
        dsu.union(c.under_in, c.under_out);
    }
    (0..dg.arc_count()).map(|a| dsu.find(a)).collect()
}

/// Searches for a coloring by conjugates of `σ_i^{±1}` projecting arc-wise
/// onto `f`. Free arcs try candidates in order of conjugator length,
/// deepening the length bound one step at a time; other arcs are forced by
/// the crossing relations. Every returned lift is re-verified.
pub fn find_simple_lift(
    dg: &LinkDiagram,
    f: &PermColoring,
    bounds: LiftBounds,
) -> Result<LiftOutcome> {
    if f.assignment().len() != dg.arc_count() {
        return Err(Error::InvalidColoring(format!(
            "{} colors for {} arcs",
            f.assignment().len(),
            dg.arc_count()
        )));
    }
    if let Some(c) = check_coloring(dg, f.assignment()) {
        return Err(Error::InvalidColoring(format!(
            "relation fails at crossing {}",
            c + 1
        )));
    }
    let d = f.degree();
    let classes = exponent_sum_classes(dg);
    let layers = conjugates_by_length(d, bounds.conjugator_length);
    let mut checks = 0u64;
    let mut pool: Vec<(BraidWord, Permutation)> = Vec::new();
    for layer in &layers {
        pool.extend(layer.iter().map(|b| (b.clone(), b.project())));
        let candidates = |a: usize, vals: &[Option<BraidWord>]| -> Vec<BraidWord> {
            let sign = (0..vals.len())
                .find(|&b| classes[b] == classes[a] && vals[b].is_some())
                .map(|b| vals[b].as_ref().unwrap().exponent_sum());
            pool.iter()
                .filter(|(w, p)| {
                    *p == f.assignment()[a] && sign.is_none_or(|s| w.exponent_sum() == s)
                })
                .map(|(w, _)| w.clone())
                .collect()
        };
        let shorten = |w: BraidWord| w.freely_reduced();
        let out = solve(
            dg,
            vec![None; dg.arc_count()],
            &candidates,
            &|u, o, s| shorten(act(u, o, s)),
            &|v, o, s| shorten(unact(v, o, s)),
            1,
            bounds.budget - checks,
        );
        checks += out.checks;
        if let Some(sol) = out.solutions.into_iter().next() {
            let lift = SimpleColoring::new_unchecked(d, sol);
            debug_assert!(check_coloring(dg, lift.assignment()).is_none());
            debug_assert_eq!(lift.project(), *f);
            return Ok(LiftOutcome::Lift(lift));
        }
        if out.exhausted {
            return Ok(LiftOutcome::NotFound {
                checks,
                budget_exhausted: true,
            });
        }
    }
    Ok(LiftOutcome::NotFound {
        checks,
        budget_exhausted: false,
    })
}
