//! Charts in the disk, encoded as a horizontal sweep.
//!
//! Between events the chart meets a horizontal line in a word of labels
//! (with signs, for oriented charts). The sweep starts and ends with the
//! empty word and each event rewrites the word locally:
//!
//! | kind     | before    | after     |
//! |----------|-----------|-----------|
//! | black    | `P Q`     | `P i Q` (insert) or the reverse (delete) |
//! | crossing | `P i j Q` | `P j i Q`, `|i-j| > 1` |
//! | white    | `P i j i Q` | `P j i j Q`, `|i-j| = 1` |
//! | cup      | `P Q`     | `P i i Q` |
//! | cap      | `P i i Q` | `P Q`     |
//!
//! `position` is the index of `P`'s end. In oriented charts cups and caps
//! pair a letter with its inverse, crossings carry signs, and a white event
//! maps signs `(a, b, c)` to `(c, b, a)`, which is allowed unless
//! `a = c ≠ b`. Those are exactly the sign patterns for which the braid
//! relation holds.
//!
//! The meridian of a black vertex is `Q⁻¹ · i^ε · Q` where `Q` is the part of
//! the word to the right of the vertex and `ε` its sign. Read top to bottom
//! the meridians multiply to the identity.

mod moves;
mod orient;
mod render;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use moves::{applicable_moves, apply_chart_move, ChartMove, Side};
pub use orient::{chart_orientable, Orientability};
pub use render::{render_dot, render_svg};

use crate::algebra::{BraidWord, GroupElement, Permutation};
use crate::error::{Error, Result};
use crate::hurwitz::{AnySystem, HurwitzSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlackAction {
    Insert,
    Delete,
}

/// One sweep event. Signs are `+1`/`-1` and only meaningful in oriented
/// charts; for a black vertex the sign is that of its meridian, for a cup
/// the sign of the left letter it creates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChartEvent {
    Black {
        position: usize,
        label: usize,
        action: BlackAction,
        sign: Option<i8>,
    },
    White {
        position: usize,
        labels: (usize, usize),
    },
    Crossing {
        position: usize,
        labels: (usize, usize),
    },
    Cup {
        position: usize,
        label: usize,
        sign: Option<i8>,
    },
    Cap {
        position: usize,
        label: usize,
    },
}

impl ChartEvent {
    pub fn position(&self) -> usize {
        match *self {
            ChartEvent::Black { position, .. }
            | ChartEvent::White { position, .. }
            | ChartEvent::Crossing { position, .. }
            | ChartEvent::Cup { position, .. }
            | ChartEvent::Cap { position, .. } => position,
        }
    }

    pub(crate) fn with_position(mut self, p: usize) -> Self {
        match &mut self {
            ChartEvent::Black { position, .. }
            | ChartEvent::White { position, .. }
            | ChartEvent::Crossing { position, .. }
            | ChartEvent::Cup { position, .. }
            | ChartEvent::Cap { position, .. } => *position = p,
        }
        self
    }

    /// Number of letters consumed and produced.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            ChartEvent::Black {
                action: BlackAction::Insert,
                ..
            } => (0, 1),
            ChartEvent::Black {
                action: BlackAction::Delete,
                ..
            } => (1, 0),
            ChartEvent::White { .. } => (3, 3),
            ChartEvent::Crossing { .. } => (2, 2),
            ChartEvent::Cup { .. } => (0, 2),
            ChartEvent::Cap { .. } => (2, 0),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ChartEvent::Black { .. } => "black",
            ChartEvent::White { .. } => "white",
            ChartEvent::Crossing { .. } => "crossing",
            ChartEvent::Cup { .. } => "cup",
            ChartEvent::Cap { .. } => "cap",
        }
    }

    pub fn is_black(&self) -> bool {
        matches!(self, ChartEvent::Black { .. })
    }

    fn labels(&self) -> Vec<usize> {
        match *self {
            ChartEvent::Black { label, .. }
            | ChartEvent::Cup { label, .. }
            | ChartEvent::Cap { label, .. } => vec![label],
            ChartEvent::White { labels, .. } | ChartEvent::Crossing { labels, .. } => {
                vec![labels.0, labels.1]
            }
        }
    }
}

/// JSON form of an event.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub kind: String,
    pub position: usize,
    pub labels: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BlackAction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

impl From<&ChartEvent> for EventRecord {
    fn from(e: &ChartEvent) -> Self {
        let (action, sign) = match *e {
            ChartEvent::Black { action, sign, .. } => (Some(action), sign),
            ChartEvent::Cup { sign, .. } => (None, sign),
            _ => (None, None),
        };
        EventRecord {
            kind: e.kind().to_string(),
            position: e.position(),
            labels: e.labels(),
            action,
            sign,
        }
    }
}

impl EventRecord {
    fn to_event(&self, index: usize) -> Result<ChartEvent> {
        let bad = |msg: String| Error::InvalidChart { event: index, msg };
        let want = |n: usize| {
            if self.labels.len() == n {
                Ok(())
            } else {
                Err(bad(format!(
                    "{} event needs {n} label(s), found {}",
                    self.kind,
                    self.labels.len()
                )))
            }
        };
        if let Some(s) = self.sign {
            if s != 1 && s != -1 {
                return Err(bad(format!("sign must be 1 or -1, found {s}")));
            }
        }
        let position = self.position;
        Ok(match self.kind.as_str() {
            "black" => {
                want(1)?;
                ChartEvent::Black {
                    position,
                    label: self.labels[0],
                    action: self
                        .action
                        .ok_or_else(|| bad("black event needs an action".into()))?,
                    sign: self.sign,
                }
            }
            "white" => {
                want(2)?;
                ChartEvent::White {
                    position,
                    labels: (self.labels[0], self.labels[1]),
                }
            }
            "crossing" => {
                want(2)?;
                ChartEvent::Crossing {
                    position,
                    labels: (self.labels[0], self.labels[1]),
                }
            }
            "cup" => {
                want(1)?;
                ChartEvent::Cup {
                    position,
                    label: self.labels[0],
                    sign: self.sign,
                }
            }
            "cap" => {
                want(1)?;
                ChartEvent::Cap {
                    position,
                    label: self.labels[0],
                }
            }
            other => return Err(bad(format!("unknown event kind '{other}'"))),
        })
    }
}

/// A letter of the running word: label and sign (`+1` in unoriented charts).
pub type Letter = (usize, i8);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    degree: usize,
    oriented: bool,
    events: Vec<ChartEvent>,
}

#[derive(Serialize, Deserialize)]
struct ChartFile {
    degree: usize,
    oriented: bool,
    events: Vec<EventRecord>,
}

/// Outcome of [`validate_chart`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub black_vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_event: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Chart {
    /// Builds a chart without validating it; see [`Chart::new`].
    pub fn new_unchecked(degree: usize, oriented: bool, events: Vec<ChartEvent>) -> Self {
        Chart {
            degree,
            oriented,
            events,
        }
    }

    pub fn new(degree: usize, oriented: bool, events: Vec<ChartEvent>) -> Result<Self> {
        let c = Self::new_unchecked(degree, oriented, events);
        c.check()?;
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn oriented(&self) -> bool {
        self.oriented
    }

    pub fn events(&self) -> &[ChartEvent] {
        &self.events
    }

    pub fn black_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_black()).count()
    }

    /// Drops all orientation data.
    pub fn forget_orientation(&self) -> Chart {
        let events = self
            .events
            .iter()
            .map(|e| match *e {
                ChartEvent::Black {
                    position,
                    label,
                    action,
                    ..
                } => ChartEvent::Black {
                    position,
                    label,
                    action,
                    sign: None,
                },
                ChartEvent::Cup {
                    position, label, ..
                } => ChartEvent::Cup {
                    position,
                    label,
                    sign: None,
                },
                e => e,
            })
            .collect();
        Chart::new_unchecked(self.degree, false, events)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: ChartFile = serde_json::from_str(text)?;
        crate::algebra::perm::check_degree(f.degree)?;
        let events = f
            .events
            .iter()
            .enumerate()
            .map(|(i, r)| r.to_event(i))
            .collect::<Result<Vec<_>>>()?;
        Chart::new(f.degree, f.oriented, events)
    }

    pub fn to_json(&self) -> String {
        let f = ChartFile {
            degree: self.degree,
            oriented: self.oriented,
            events: self.events.iter().map(EventRecord::from).collect(),
        };
        serde_json::to_string_pretty(&f).expect("serializable")
    }

    /// Validates the sweep; `Err` carries the first failing event.
    pub fn check(&self) -> Result<()> {
        crate::algebra::perm::check_degree(self.degree)?;
        self.sweep(|_, _, _| {}).map(|_| ())
    }

    /// The running words: `words()[k]` is the word just above event `k`, and
    /// the last entry is the final word. Fails like [`Chart::check`].
    pub fn words(&self) -> Result<Vec<Vec<Letter>>> {
        let mut out = Vec::with_capacity(self.events.len() + 1);
        let last = self.sweep(|_, word, _| out.push(word.to_vec()))?;
        out.push(last);
        Ok(out)
    }

    /// Runs the sweep, calling `visit(k, word_before, event)` for every event.
    /// Returns the final word, which is checked to be empty.
    fn sweep<F: FnMut(usize, &[Letter], &ChartEvent)>(&self, mut visit: F) -> Result<Vec<Letter>> {
        let d = self.degree;
        let mut word: Vec<Letter> = Vec::new();
        for (k, e) in self.events.iter().enumerate() {
            let bad = |msg: String| Error::InvalidChart { event: k, msg };
            for l in e.labels() {
                if l == 0 || l >= d {
                    return Err(bad(format!(
                        "label {l} outside 1..={}",
                        d.saturating_sub(1)
                    )));
                }
            }
            let (consumed, _) = e.arity();
            let p = e.position();
            if p + consumed > word.len() {
                return Err(bad(format!(
                    "position {p} leaves no room for {consumed} letter(s) in a word of length {}",
                    word.len()
                )));
            }
            let need_sign = |s: Option<i8>| -> Result<i8> {
                match (self.oriented, s) {
                    (false, _) => Ok(1),
                    (true, Some(s)) => Ok(s),
                    (true, None) => Err(bad(format!(
                        "{} event in an oriented chart needs a sign",
                        e.kind()
                    ))),
                }
            };
            visit(k, &word, e);
            match *e {
                ChartEvent::Black {
                    label,
                    action: BlackAction::Insert,
                    sign,
                    ..
                } => {
                    let s = need_sign(sign)?;
                    word.insert(p, (label, s));
                }
                ChartEvent::Black {
                    label,
                    action: BlackAction::Delete,
                    sign,
                    ..
                } => {
                    let s = need_sign(sign)?;
                    let (l, ls) = word[p];
                    if l != label {
                        return Err(bad(format!(
                            "deletes label {label} but the word has {l} at {p}"
                        )));
                    }
                    if self.oriented && ls != -s {
                        return Err(bad(
                            "meridian sign must be opposite to the deleted letter's sign".into(),
                        ));
                    }
                    word.remove(p);
                }
                ChartEvent::Crossing { labels: (i, j), .. } => {
                    if i.abs_diff(j) <= 1 {
                        return Err(bad(format!(
                            "crossing labels {i},{j} must differ by more than 1"
                        )));
                    }
                    if word[p].0 != i || word[p + 1].0 != j {
                        return Err(bad(format!("crossing expects {i} {j} at {p}")));
                    }
                    word.swap(p, p + 1);
                }
                ChartEvent::White { labels: (i, j), .. } => {
                    if i.abs_diff(j) != 1 {
                        return Err(bad(format!("white vertex labels {i},{j} must differ by 1")));
                    }
                    let w = &word[p..p + 3];
                    if w[0].0 != i || w[1].0 != j || w[2].0 != i {
                        return Err(bad(format!("white vertex expects {i} {j} {i} at {p}")));
                    }
                    let (a, b, c) = (w[0].1, w[1].1, w[2].1);
                    if self.oriented && a == c && b != a {
                        return Err(bad(
                            "white vertex sign pattern does not satisfy the braid relation".into(),
                        ));
                    }
                    word[p] = (j, c);
                    word[p + 1] = (i, b);
                    word[p + 2] = (j, a);
                }
                ChartEvent::Cup { label, sign, .. } => {
                    let s = need_sign(sign)?;
                    let second = if self.oriented { -s } else { 1 };
                    word.insert(p, (label, second));
                    word.insert(p, (label, s));
                }
                ChartEvent::Cap { label, .. } => {
                    let (a, b) = (word[p], word[p + 1]);
                    if a.0 != label || b.0 != label {
                        return Err(bad(format!("cap expects {label} {label} at {p}")));
                    }
                    if self.oriented && a.1 != -b.1 {
                        return Err(bad("cap joins letters of the same sign".into()));
                    }
                    word.drain(p..p + 2);
                }
            }
        }
        if !word.is_empty() {
            return Err(Error::InvalidChart {
                event: self.events.len(),
                msg: format!("sweep ends with {} open edge(s)", word.len()),
            });
        }
        Ok(word)
    }

    /// Meridian images in sweep order, in `S_d` or `B_d`.
    pub fn meridians<G: GroupElement>(&self) -> Result<Vec<G>> {
        let d = self.degree;
        let mut out = Vec::new();
        self.sweep(|_, word, e| {
            if let ChartEvent::Black {
                position,
                label,
                action,
                sign,
            } = *e
            {
                let start = match action {
                    BlackAction::Insert => position,
                    BlackAction::Delete => position + 1,
                };
                let eps = if self.oriented { sign.unwrap_or(1) } else { 1 };
                let q =
                    word[start.min(word.len())..]
                        .iter()
                        .fold(G::identity(d), |acc, &(l, s)| {
                            acc.then(&G::standard_generator(
                                d,
                                l,
                                if self.oriented { s } else { 1 },
                            ))
                        });
                out.push(G::standard_generator(d, label, eps).conjugate_by(&q));
            }
        })?;
        Ok(out)
    }
}

/// Full validation report.
pub fn validate_chart(c: &Chart) -> ValidationReport {
    match c.check() {
        Ok(()) => ValidationReport {
            valid: true,
            black_vertices: c.black_count(),
            failed_event: None,
            message: None,
        },
        Err(e) => {
            let (failed_event, message) = match e {
                Error::InvalidChart { event, msg } => (Some(event), msg),
                other => (None, other.to_string()),
            };
            ValidationReport {
                valid: false,
                black_vertices: c.black_count(),
                failed_event,
                message: Some(message),
            }
        }
    }
}

/// Hurwitz system of the chart: permutations for unoriented charts, braids
/// for oriented ones.
pub fn chart_hurwitz_system(c: &Chart) -> Result<AnySystem> {
    let d = c.degree;
    Ok(if c.oriented {
        AnySystem::Braid(HurwitzSystem::new(d, c.meridians::<BraidWord>()?)?)
    } else {
        AnySystem::Permutation(HurwitzSystem::new(d, c.meridians::<Permutation>()?)?)
    })
}

/// Permutation monodromy regardless of orientation (oriented charts are
/// projected).
pub fn chart_permutation_system(c: &Chart) -> Result<HurwitzSystem<Permutation>> {
    HurwitzSystem::new(c.degree, c.forget_orientation().meridians::<Permutation>()?)
}

impl fmt::Display for ChartEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sgn = |s: Option<i8>| match s {
            Some(1) => "+",
            Some(_) => "-",
            None => "",
        };
        match *self {
            ChartEvent::Black {
                position,
                label,
                action,
                sign,
            } => {
                let a = match action {
                    BlackAction::Insert => "insert",
                    BlackAction::Delete => "delete",
                };
                write!(f, "black {a} {label}{} @{position}", sgn(sign))
            }
            ChartEvent::White { position, labels } => {
                write!(f, "white {} {} @{position}", labels.0, labels.1)
            }
            ChartEvent::Crossing { position, labels } => {
                write!(f, "crossing {} {} @{position}", labels.0, labels.1)
            }
            ChartEvent::Cup {
                position,
                label,
                sign,
            } => write!(f, "cup {label}{} @{position}", sgn(sign)),
            ChartEvent::Cap { position, label } => write!(f, "cap {label} @{position}"),
        }
    }
}
