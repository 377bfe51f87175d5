use serde::{Deserialize, Serialize};

use super::{BlackAction, Chart, ChartEvent, Letter};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Local rewrites of a chart. `index` names the (first) event involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum ChartMove {
    /// Exchange two consecutive events acting on disjoint parts of the word.
    Swap { index: usize },
    /// Remove a cup immediately closed by a cap (a small circle).
    CancelCupCap { index: usize },
    /// Insert a small circle before event `index`.
    InsertCupCap {
        index: usize,
        position: usize,
        label: usize,
        #[serde(default)]
        sign: Option<i8>,
    },
    /// Remove two consecutive crossings, or two white vertices, undoing each
    /// other.
    CancelPair { index: usize },
    /// Insert a cancelling pair of crossings (letters `i j`, `|i-j| > 1`) or
    /// white vertices (letters `i j i`) at `position`, before event `index`.
    InsertPair { index: usize, position: usize },
    /// Merge a black vertex with the adjacent crossing its edge runs through.
    BlackThroughCrossing { index: usize },
    /// Push a black vertex across the neighbouring edge on `side`, creating a
    /// crossing.
    BlackSplitCrossing { index: usize, side: Side },
    /// Merge an inserting black vertex with the white vertex right after it.
    BlackThroughWhite { index: usize },
    /// Split an inserting black vertex into a black and a white vertex, using
    /// the two letters on `side`.
    BlackSplitWhite { index: usize, side: Side },
}

fn na(msg: impl Into<String>) -> Error {
    Error::MoveNotApplicable(msg.into())
}

fn is_insert(e: &ChartEvent) -> bool {
    matches!(
        e,
        ChartEvent::Black {
            action: BlackAction::Insert,
            ..
        }
    )
}

fn black_parts(e: &ChartEvent) -> Option<(usize, usize, BlackAction, Option<i8>)> {
    match *e {
        ChartEvent::Black {
            position,
            label,
            action,
            sign,
        } => Some((position, label, action, sign)),
        _ => None,
    }
}

/// Applies `m`, returning the rewritten chart. The result is validated.
pub fn apply_chart_move(c: &Chart, m: &ChartMove) -> Result<Chart> {
    c.check()?;
    let words = c.words()?;
    let ev = c.events();
    let n = ev.len();
    let get = |i: usize| {
        ev.get(i)
            .copied()
            .ok_or_else(|| na(format!("no event {i}")))
    };
    let mut out = ev.to_vec();
    match *m {
        ChartMove::Swap { index } => {
            let (a, b) = (get(index)?, get(index + 1)?);
            let (pa, pb) = (a.position(), b.position());
            let ((ca, pa_out), (cb, pb_out)) = (a.arity(), b.arity());
            let (na_, nb_) = if pb + cb <= pa {
                (a.with_position(pa + pb_out - cb), b)
            } else if pb >= pa + pa_out {
                (a, b.with_position(pb + ca - pa_out))
            } else {
                return Err(na(format!("events {index} and {} overlap", index + 1)));
            };
            out[index] = nb_;
            out[index + 1] = na_;
        }
        ChartMove::CancelCupCap { index } => match (get(index)?, get(index + 1)?) {
            (
                ChartEvent::Cup {
                    position: p,
                    label: l,
                    ..
                },
                ChartEvent::Cap {
                    position: q,
                    label: k,
                },
            ) if p == q && l == k => {
                out.drain(index..index + 2);
            }
            _ => return Err(na("expected a cup followed by a cap at the same position")),
        },
        ChartMove::InsertCupCap {
            index,
            position,
            label,
            sign,
        } => {
            if index > n || position > words[index].len() {
                return Err(na("insertion site out of range"));
            }
            let sign = if c.oriented() {
                Some(sign.unwrap_or(1))
            } else {
                None
            };
            out.insert(index, ChartEvent::Cap { position, label });
            out.insert(
                index,
                ChartEvent::Cup {
                    position,
                    label,
                    sign,
                },
            );
        }
        ChartMove::CancelPair { index } => match (get(index)?, get(index + 1)?) {
            (
                ChartEvent::Crossing {
                    position: p,
                    labels: (i, j),
                },
                ChartEvent::Crossing {
                    position: q,
                    labels: (k, l),
                },
            )
            | (
                ChartEvent::White {
                    position: p,
                    labels: (i, j),
                },
                ChartEvent::White {
                    position: q,
                    labels: (k, l),
                },
            ) if p == q && (i, j) == (l, k) && ev[index].kind() == ev[index + 1].kind() => {
                out.drain(index..index + 2);
            }
            _ => {
                return Err(na(
                    "expected two mutually inverse crossings or white vertices",
                ))
            }
        },
        ChartMove::InsertPair { index, position } => {
            let w = words
                .get(index)
                .ok_or_else(|| na("insertion site out of range"))?;
            let at = |k: usize| w.get(position + k).map(|x: &Letter| x.0);
            let p = position;
            match (at(0), at(1), at(2)) {
                (Some(i), Some(j), _) if i.abs_diff(j) > 1 => {
                    out.insert(
                        index,
                        ChartEvent::Crossing {
                            position: p,
                            labels: (j, i),
                        },
                    );
                    out.insert(
                        index,
                        ChartEvent::Crossing {
                            position: p,
                            labels: (i, j),
                        },
                    );
                }
                (Some(i), Some(j), Some(k)) if i.abs_diff(j) == 1 && k == i => {
                    out.insert(
                        index,
                        ChartEvent::White {
                            position: p,
                            labels: (j, i),
                        },
                    );
                    out.insert(
                        index,
                        ChartEvent::White {
                            position: p,
                            labels: (i, j),
                        },
                    );
                }
                _ => {
                    return Err(na(
                        "letters at the site admit neither a crossing nor a white vertex",
                    ))
                }
            }
        }
        ChartMove::BlackThroughCrossing { index } => {
            let e = get(index)?;
            let (p, label, action, sign) =
                black_parts(&e).ok_or_else(|| na("not a black vertex"))?;
            let black = |position| ChartEvent::Black {
                position,
                label,
                action,
                sign,
            };
            match action {
                BlackAction::Insert => match ev.get(index + 1) {
                    Some(&ChartEvent::Crossing {
                        position: q,
                        labels: (x, _),
                    }) if q == p && x == label => {
                        out[index] = black(p + 1);
                        out.remove(index + 1);
                    }
                    Some(&ChartEvent::Crossing {
                        position: q,
                        labels: (_, y),
                    }) if q + 1 == p && y == label => {
                        out[index] = black(p - 1);
                        out.remove(index + 1);
                    }
                    _ => return Err(na("no crossing on this black vertex's edge right after it")),
                },
                BlackAction::Delete => match index.checked_sub(1).map(|i| ev[i]) {
                    Some(ChartEvent::Crossing {
                        position: q,
                        labels: (_, y),
                    }) if q == p && y == label => {
                        out[index] = black(p + 1);
                        out.remove(index - 1);
                    }
                    Some(ChartEvent::Crossing {
                        position: q,
                        labels: (x, _),
                    }) if q + 1 == p && x == label => {
                        out[index] = black(p - 1);
                        out.remove(index - 1);
                    }
                    _ => {
                        return Err(na(
                            "no crossing on this black vertex's edge right before it",
                        ))
                    }
                },
            }
        }
        ChartMove::BlackSplitCrossing { index, side } => {
            let e = get(index)?;
            let (p, label, action, sign) =
                black_parts(&e).ok_or_else(|| na("not a black vertex"))?;
            let w = &words[index];
            let black = |position| ChartEvent::Black {
                position,
                label,
                action,
                sign,
            };
            let far = |j: usize| j.abs_diff(label) > 1;
            let cross = |position, labels| ChartEvent::Crossing { position, labels };
            let (first, second) = match (action, side) {
                (BlackAction::Insert, Side::Right) => match w.get(p) {
                    Some(&(j, _)) if far(j) => (black(p + 1), cross(p, (j, label))),
                    _ => return Err(na("no crossable edge to the right")),
                },
                (BlackAction::Insert, Side::Left) => {
                    match p.checked_sub(1).and_then(|q| w.get(q)) {
                        Some(&(j, _)) if far(j) => (black(p - 1), cross(p - 1, (label, j))),
                        _ => return Err(na("no crossable edge to the left")),
                    }
                }
                (BlackAction::Delete, Side::Right) => match w.get(p + 1) {
                    Some(&(j, _)) if far(j) => (cross(p, (label, j)), black(p + 1)),
                    _ => return Err(na("no crossable edge to the right")),
                },
                (BlackAction::Delete, Side::Left) => {
                    match p.checked_sub(1).and_then(|q| w.get(q)) {
                        Some(&(j, _)) if far(j) => (cross(p - 1, (j, label)), black(p - 1)),
                        _ => return Err(na("no crossable edge to the left")),
                    }
                }
            };
            out[index] = second;
            out.insert(index, first);
        }
        ChartMove::BlackThroughWhite { index } => {
            let e = get(index)?;
            if !is_insert(&e) {
                return Err(na(
                    "only inserting black vertices merge into white vertices",
                ));
            }
            let (p, i, _, sign) = black_parts(&e).unwrap();
            let w = &words[index];
            let black = |position, label| ChartEvent::Black {
                position,
                label,
                action: BlackAction::Insert,
                sign,
            };
            let same_sign = |a: usize, b: usize| !c.oriented() || w[a].1 == w[b].1;
            match ev.get(index + 1) {
                Some(&ChartEvent::White {
                    position: q,
                    labels: (x, j),
                }) if x == i && p >= 2 && q + 2 == p && same_sign(p - 2, p - 1) => {
                    out[index] = black(q, j);
                    out.remove(index + 1);
                }
                Some(&ChartEvent::White {
                    position: q,
                    labels: (x, j),
                }) if x == i && q == p && p + 1 < w.len() && same_sign(p, p + 1) => {
                    out[index] = black(p + 2, j);
                    out.remove(index + 1);
                }
                _ => return Err(na("no white vertex absorbing this black vertex")),
            }
        }
        ChartMove::BlackSplitWhite { index, side } => {
            let e = get(index)?;
            if !is_insert(&e) {
                return Err(na("only inserting black vertices split off white vertices"));
            }
            let (p, j, _, sign) = black_parts(&e).unwrap();
            let w = &words[index];
            let black = |position, label| ChartEvent::Black {
                position,
                label,
                action: BlackAction::Insert,
                sign,
            };
            let ok = |a: usize, b: usize| {
                w.get(a).zip(w.get(b)).is_some_and(|(x, y)| {
                    x.0.abs_diff(j) == 1 && y.0 == j && (!c.oriented() || x.1 == y.1)
                })
            };
            match side {
                Side::Right if ok(p, p + 1) => {
                    let i = w[p].0;
                    out[index] = ChartEvent::White {
                        position: p,
                        labels: (i, j),
                    };
                    out.insert(index, black(p + 2, i));
                }
                Side::Left
                    if p >= 2
                        && w[p - 2].0 == j
                        && w[p - 1].0.abs_diff(j) == 1
                        && (!c.oriented() || w[p - 2].1 == w[p - 1].1) =>
                {
                    let i = w[p - 1].0;
                    out[index] = ChartEvent::White {
                        position: p - 2,
                        labels: (i, j),
                    };
                    out.insert(index, black(p - 2, i));
                }
                _ => return Err(na("neighbouring letters do not form a white vertex site")),
            }
        }
    }
    let res = Chart::new_unchecked(c.degree(), c.oriented(), out);
    res.check()
        .map_err(|e| na(format!("rewrite produced an invalid chart: {e}")))?;
    Ok(res)
}

/// Every site where a move applies. Circle insertions are listed with sign
/// `+1` only.
pub fn applicable_moves(c: &Chart) -> Vec<ChartMove> {
    let Ok(words) = c.words() else {
        return Vec::new();
    };
    let n = c.events().len();
    let mut cands = Vec::new();
    for index in 0..n {
        cands.push(ChartMove::Swap { index });
        cands.push(ChartMove::CancelCupCap { index });
        cands.push(ChartMove::CancelPair { index });
        cands.push(ChartMove::BlackThroughCrossing { index });
        cands.push(ChartMove::BlackThroughWhite { index });
        for side in [Side::Left, Side::Right] {
            cands.push(ChartMove::BlackSplitCrossing { index, side });
            cands.push(ChartMove::BlackSplitWhite { index, side });
        }
    }
    for (index, w) in words.iter().enumerate() {
        for position in 0..=w.len() {
            cands.push(ChartMove::InsertPair { index, position });
            for label in 1..c.degree() {
                cands.push(ChartMove::InsertCupCap {
                    index,
                    position,
                    label,
                    sign: c.oriented().then_some(1),
                });
            }
        }
    }
    cands
        .into_iter()
        .filter(|m| apply_chart_move(c, m).is_ok())
        .collect()
}
