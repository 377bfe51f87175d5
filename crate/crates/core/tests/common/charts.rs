//! Random chart generation and a chart reader independent of the library's
//! sweep.

use branchcov_core::chart::{BlackAction, Chart, ChartEvent};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{conj, ident, then, transp, P};

/// A random closed chart of degree `d` with at most about `max_events`
/// events. Oriented charts obey all sign rules; unoriented ones are built
/// without sign bookkeeping, so they need not be orientable.
pub fn random_chart<R: Rng>(rng: &mut R, d: usize, max_events: usize, oriented: bool) -> Chart {
    assert!(d >= 2);
    let mut word: Vec<(usize, i8)> = Vec::new();
    let mut events = Vec::new();
    let sgn = |rng: &mut R| {
        if oriented && rng.gen_bool(0.5) {
            -1i8
        } else {
            1
        }
    };
    let sign_opt = |s: i8| if oriented { Some(s) } else { None };
    while events.len() + word.len() < max_events {
        let mut kinds: Vec<u8> = vec![0, 1];
        let crossings: Vec<usize> = (0..word.len().saturating_sub(1))
            .filter(|&p| word[p].0.abs_diff(word[p + 1].0) > 1)
            .collect();
        let whites: Vec<usize> = (0..word.len().saturating_sub(2))
            .filter(|&p| {
                let (a, b, c) = (word[p], word[p + 1], word[p + 2]);
                a.0 == c.0 && a.0.abs_diff(b.0) == 1 && !(oriented && a.1 == c.1 && b.1 != a.1)
            })
            .collect();
        let caps: Vec<usize> = (0..word.len().saturating_sub(1))
            .filter(|&p| word[p].0 == word[p + 1].0 && (!oriented || word[p].1 == -word[p + 1].1))
            .collect();
        if !word.is_empty() {
            kinds.push(2);
        }
        if !crossings.is_empty() {
            kinds.extend([3, 3]);
        }
        if !whites.is_empty() {
            kinds.extend([4, 4, 4]);
        }
        if !caps.is_empty() {
            kinds.push(5);
        }
        match *kinds.choose(rng).unwrap() {
            0 => {
                let p = rng.gen_range(0..=word.len());
                let l = rng.gen_range(1..d);
                let s = sgn(rng);
                word.insert(p, (l, s));
                events.push(ChartEvent::Black {
                    position: p,
                    label: l,
                    action: BlackAction::Insert,
                    sign: sign_opt(s),
                });
            }
            1 => {
                let p = rng.gen_range(0..=word.len());
                let l = rng.gen_range(1..d);
                let s = sgn(rng);
                word.insert(p, (l, if oriented { -s } else { 1 }));
                word.insert(p, (l, s));
                events.push(ChartEvent::Cup {
                    position: p,
                    label: l,
                    sign: sign_opt(s),
                });
            }
            2 => {
                let p = rng.gen_range(0..word.len());
                let (l, s) = word.remove(p);
                events.push(ChartEvent::Black {
                    position: p,
                    label: l,
                    action: BlackAction::Delete,
                    sign: sign_opt(-s),
                });
            }
            3 => {
                let p = *crossings.choose(rng).unwrap();
                events.push(ChartEvent::Crossing {
                    position: p,
                    labels: (word[p].0, word[p + 1].0),
                });
                word.swap(p, p + 1);
            }
            4 => {
                let p = *whites.choose(rng).unwrap();
                let (a, b, c) = (word[p], word[p + 1], word[p + 2]);
                events.push(ChartEvent::White {
                    position: p,
                    labels: (a.0, b.0),
                });
                word[p] = (b.0, c.1);
                word[p + 1] = (a.0, b.1);
                word[p + 2] = (b.0, a.1);
            }
            _ => {
                let p = *caps.choose(rng).unwrap();
                let l = word[p].0;
                word.drain(p..p + 2);
                events.push(ChartEvent::Cap {
                    position: p,
                    label: l,
                });
            }
        }
    }
    while !word.is_empty() {
        let p = rng.gen_range(0..word.len());
        let (l, s) = word.remove(p);
        events.push(ChartEvent::Black {
            position: p,
            label: l,
            action: BlackAction::Delete,
            sign: sign_opt(-s),
        });
    }
    Chart::new(d, oriented, events).expect("generator produces valid charts")
}

/// Permutation meridians read straight from the chart's JSON, replaying the
/// word rewriting with plain vectors.
pub fn meridians_from_json(text: &str) -> (usize, Vec<P>) {
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    let d = v["degree"].as_u64().unwrap() as usize;
    let mut word: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for e in v["events"].as_array().unwrap() {
        let p = e["position"].as_u64().unwrap() as usize;
        let labels: Vec<usize> = e["labels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap() as usize)
            .collect();
        match e["kind"].as_str().unwrap() {
            "black" => {
                let rest_from = if e["action"] == "insert" { p } else { p + 1 };
                let q = word[rest_from.min(word.len())..]
                    .iter()
                    .fold(ident(d), |acc, &l| then(&acc, &transp(d, l - 1, l)));
                out.push(conj(&transp(d, labels[0] - 1, labels[0]), &q));
                if e["action"] == "insert" {
                    word.insert(p, labels[0]);
                } else {
                    word.remove(p);
                }
            }
            "crossing" => word.swap(p, p + 1),
            "white" => {
                word[p] = labels[1];
                word[p + 1] = labels[0];
                word[p + 2] = labels[1];
            }
            "cup" => {
                word.insert(p, labels[0]);
                word.insert(p, labels[0]);
            }
            "cap" => {
                word.drain(p..p + 2);
            }
            k => panic!("unknown kind {k}"),
        }
    }
    (d, out)
}
