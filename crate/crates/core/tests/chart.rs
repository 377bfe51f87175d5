mod common;

use branchcov_core::chart::{
    applicable_moves, apply_chart_move, chart_hurwitz_system, chart_orientable,
    chart_permutation_system, BlackAction, Chart, ChartEvent, Orientability,
};
use branchcov_core::covering::build_covering;
use branchcov_core::hurwitz::{hc_equivalent, AnySystem, Equivalence, DEFAULT_BFS_BUDGET};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn same_class(a: &AnySystem, b: &AnySystem) -> bool {
    match (a, b) {
        (AnySystem::Permutation(x), AnySystem::Permutation(y)) => {
            hc_equivalent(x, y, DEFAULT_BFS_BUDGET) == Equivalence::Equivalent
        }
        (AnySystem::Braid(x), AnySystem::Braid(y)) => {
            x == y || hc_equivalent(x, y, DEFAULT_BFS_BUDGET) == Equivalence::Equivalent
        }
        _ => false,
    }
}

fn closes(s: &AnySystem) -> bool {
    match s {
        AnySystem::Permutation(x) => x.total_monodromy().is_identity(),
        AnySystem::Braid(x) => x.total_monodromy().is_identity(),
    }
}

#[test]
fn random_charts_close_up() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..300 {
        let d = 2 + k % 4;
        let c = common::charts::random_chart(&mut rng, d, 30, k % 2 == 0);
        let s = chart_hurwitz_system(&c).unwrap();
        assert!(closes(&s), "{}", c.to_json());
        assert_eq!(Chart::from_json(&c.to_json()).unwrap(), c);
    }
}

#[test]
fn moves_preserve_monodromy_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut applied = 0;
    for k in 0..60 {
        let d = 2 + k % 3;
        let c = common::charts::random_chart(&mut rng, d, 16, k % 2 == 1);
        let before = chart_hurwitz_system(&c).unwrap();
        let moves = applicable_moves(&c);
        for m in moves.choose_multiple(&mut rng, 6) {
            let c2 = apply_chart_move(&c, m).unwrap();
            let after = chart_hurwitz_system(&c2).unwrap();
            assert!(same_class(&before, &after), "{m:?} on {}", c.to_json());
            assert!(closes(&after));
            applied += 1;
        }
    }
    assert!(applied > 200);
}

#[test]
fn covering_of_chart_matches_gluing() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..200 {
        let d = 2 + k % 3;
        let c = common::charts::random_chart(&mut rng, d, 24, false);
        let (dd, merid) = common::charts::meridians_from_json(&c.to_json());
        let lib = chart_permutation_system(&c).unwrap();
        let as_lists: Vec<common::P> = lib
            .entries()
            .iter()
            .map(|a| a.images().iter().map(|&x| (x - 1) as u8).collect())
            .collect();
        assert_eq!(as_lists, merid);
        let cov = build_covering(&lib).unwrap();
        let ours: Vec<(Vec<usize>, i64)> = cov
            .components
            .iter()
            .map(|c| (c.sheets.clone(), c.euler))
            .collect();
        assert_eq!(ours, common::polygon_euler(dd, &merid));
    }
}

#[test]
fn forgetful_images_are_orientable() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..200 {
        let d = 2 + k % 3;
        let braid = common::charts::random_chart(&mut rng, d, 30, true);
        let flat = braid.forget_orientation();
        let Orientability::Orientable(w) = chart_orientable(&flat).unwrap() else {
            panic!("not orientable: {}", flat.to_json());
        };
        assert!(w.check().is_ok());
        assert_eq!(w.forget_orientation(), flat);
        let AnySystem::Braid(b) = chart_hurwitz_system(&w).unwrap() else {
            panic!()
        };
        assert_eq!(b.project(), chart_permutation_system(&flat).unwrap());
    }
}

/// Every sign assignment to the letter-creating events, checked by the
/// library's own validator on the resulting oriented chart.
fn brute_force_orientable(c: &Chart) -> bool {
    let slots: Vec<usize> = c
        .events()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            matches!(
                e,
                ChartEvent::Cup { .. }
                    | ChartEvent::Black {
                        action: BlackAction::Insert,
                        ..
                    }
            )
        })
        .map(|(i, _)| i)
        .collect();
    for mask in 0u64..(1 << slots.len()) {
        let mut ev = c.events().to_vec();
        for (b, &i) in slots.iter().enumerate() {
            let s = if mask >> b & 1 == 1 { -1 } else { 1 };
            ev[i] = match ev[i] {
                ChartEvent::Cup {
                    position, label, ..
                } => ChartEvent::Cup {
                    position,
                    label,
                    sign: Some(s),
                },
                ChartEvent::Black {
                    position,
                    label,
                    action,
                    ..
                } => ChartEvent::Black {
                    position,
                    label,
                    action,
                    sign: Some(s),
                },
                e => e,
            };
        }
        // deletions take the sign forced by their letter
        let mut word: Vec<i8> = Vec::new();
        let mut ok = true;
        for e in ev.iter_mut() {
            let p = e.position();
            match e {
                ChartEvent::Black {
                    action: BlackAction::Insert,
                    sign,
                    ..
                } => word.insert(p, sign.unwrap()),
                ChartEvent::Black {
                    action: BlackAction::Delete,
                    sign,
                    ..
                } => {
                    *sign = Some(-word.remove(p));
                }
                ChartEvent::Cup { sign, .. } => {
                    let s = sign.unwrap();
                    word.insert(p, -s);
                    word.insert(p, s);
                }
                ChartEvent::Cap { .. } => {
                    if word[p] != -word[p + 1] {
                        ok = false;
                        break;
                    }
                    word.drain(p..p + 2);
                }
                ChartEvent::Crossing { .. } => word.swap(p, p + 1),
                ChartEvent::White { .. } => word.swap(p, p + 2),
            }
        }
        if ok && Chart::new(c.degree(), true, ev).is_ok() {
            return true;
        }
    }
    false
}

#[test]
fn orientability_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..400 {
        let d = 3 + k % 2;
        let c = common::charts::random_chart(&mut rng, d, 14, false);
        let slots = c
            .events()
            .iter()
            .filter(|e| {
                matches!(
                    e,
                    ChartEvent::Cup { .. }
                        | ChartEvent::Black {
                            action: BlackAction::Insert,
                            ..
                        }
                )
            })
            .count();
        if slots > 14 {
            continue;
        }
        let ours = chart_orientable(&c).unwrap().is_orientable();
        assert_eq!(ours, brute_force_orientable(&c), "{}", c.to_json());
    }
}

#[test]
fn fixture_chart_is_nonorientable() {
    let text = include_str!("../data/charts/nonorientable.json");
    let c = Chart::from_json(text).unwrap();
    assert!(!c.oriented());
    assert!(!brute_force_orientable(&c));
    assert!(!chart_orientable(&c).unwrap().is_orientable());
}
