use super::{BlackAction, Chart, ChartEvent};
use crate::error::Result;

/// Result of [`chart_orientable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orientability {
    /// An oriented chart that forgets to the input.
    Orientable(Chart),
    Nonorientable {
        reason: String,
    },
}

impl Orientability {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Orientability::Orientable(_))
    }
}

/// A letter's sign is `value(var) xor neg`, with `false` meaning `+`.
#[derive(Clone, Copy)]
struct Lit {
    var: usize,
    neg: bool,
}

struct Parity {
    parent: Vec<usize>,
    // parity relative to parent
    rel: Vec<bool>,
}

impl Parity {
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.rel.push(false);
        self.parent.len() - 1
    }

    fn find(&mut self, v: usize) -> (usize, bool) {
        let p = self.parent[v];
        if p == v {
            return (v, false);
        }
        let (r, pr) = self.find(p);
        self.parent[v] = r;
        self.rel[v] ^= pr;
        (r, self.rel[v])
    }

    /// Imposes `value(a) xor value(b) = x`; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, x: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == x;
        }
        self.parent[ra] = rb;
        self.rel[ra] = pa ^ pb ^ x;
        true
    }
}

/// Decides whether the unoriented chart admits edge orientations making it
/// a braid chart. Caps and cups force opposite signs on their two letters,
/// crossings carry signs, and a white vertex forbids the patterns `(+,-,+)`
/// and `(-,+,-)` on its incoming letters. The witness is the
/// lexicographically least assignment (letters in order of creation, `+`
/// before `-`) and is re-validated before being returned.
pub fn chart_orientable(c: &Chart) -> Result<Orientability> {
    let base = if c.oriented() {
        c.forget_orientation()
    } else {
        c.clone()
    };
    base.check()?;
    let mut uf = Parity {
        parent: Vec::new(),
        rel: Vec::new(),
    };
    let mut word: Vec<Lit> = Vec::new();
    let mut whites: Vec<[Lit; 3]> = Vec::new();
    // literal created (or removed) by each black vertex, left literal of cups
    let mut event_lit: Vec<Option<Lit>> = Vec::with_capacity(base.events().len());
    for (k, e) in base.events().iter().enumerate() {
        let p = e.position();
        let mut lit = None;
        match *e {
            ChartEvent::Black {
                action: BlackAction::Insert,
                ..
            } => {
                let l = Lit {
                    var: uf.add(),
                    neg: false,
                };
                word.insert(p, l);
                lit = Some(l);
            }
            ChartEvent::Black {
                action: BlackAction::Delete,
                ..
            } => {
                lit = Some(word.remove(p));
            }
            ChartEvent::Crossing { .. } => word.swap(p, p + 1),
            ChartEvent::White { .. } => {
                let t = [word[p], word[p + 1], word[p + 2]];
                whites.push(t);
                word[p] = t[2];
                word[p + 2] = t[0];
            }
            ChartEvent::Cup { .. } => {
                let v = uf.add();
                let l = Lit { var: v, neg: false };
                word.insert(p, Lit { var: v, neg: true });
                word.insert(p, l);
                lit = Some(l);
            }
            ChartEvent::Cap { .. } => {
                let (a, b) = (word[p], word[p + 1]);
                word.drain(p..p + 2);
                if !uf.relate(a.var, b.var, !(a.neg ^ b.neg)) {
                    return Ok(Orientability::Nonorientable {
                        reason: format!(
                            "cap at event {k} closes an edge cycle with inconsistent orientation"
                        ),
                    });
                }
            }
        }
        event_lit.push(lit);
    }

    let nvars = uf.parent.len();
    let classes: Vec<(usize, bool)> = (0..nvars).map(|v| uf.find(v)).collect();
    let resolve = |l: Lit| {
        let (r, p) = classes[l.var];
        (r, p ^ l.neg)
    };
    let wc: Vec<[(usize, bool); 3]> = whites
        .iter()
        .map(|t| [resolve(t[0]), resolve(t[1]), resolve(t[2])])
        .collect();
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); nvars];
    for (i, t) in wc.iter().enumerate() {
        for &(r, _) in t {
            by_root[r].push(i);
        }
    }
    // roots in order of their first variable
    let mut order = Vec::new();
    let mut seen = vec![false; nvars];
    for &(r, _) in &classes {
        if !seen[r] {
            seen[r] = true;
            order.push(r);
        }
    }
    let mut value: Vec<Option<bool>> = vec![None; nvars];
    let violated = |value: &[Option<bool>], i: usize| {
        let t = wc[i];
        match (value[t[0].0], value[t[1].0], value[t[2].0]) {
            (Some(a), Some(b), Some(c)) => {
                let (a, b, c) = (a ^ t[0].1, b ^ t[1].1, c ^ t[2].1);
                a == c && b != a
            }
            _ => false,
        }
    };
    fn search(
        k: usize,
        order: &[usize],
        classes: &[(usize, bool)],
        by_root: &[Vec<usize>],
        value: &mut Vec<Option<bool>>,
        violated: &dyn Fn(&[Option<bool>], usize) -> bool,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let r = order[k];
        // the first variable of this class should come out `+` first
        let first_parity = classes
            .iter()
            .find(|c| c.0 == r)
            .map(|c| c.1)
            .unwrap_or(false);
        for plus in [true, false] {
            value[r] = Some(!plus ^ first_parity);
            if by_root[r].iter().all(|&i| !violated(value, i))
                && search(k + 1, order, classes, by_root, value, violated)
            {
                return true;
            }
        }
        value[r] = None;
        false
    }
    if !search(0, &order, &classes, &by_root, &mut value, &violated) {
        return Ok(Orientability::Nonorientable {
            reason: "white vertex sign constraints are unsatisfiable".into(),
        });
    }
    let sign_of = |l: Lit| {
        let (r, p) = resolve(l);
        if value[r].unwrap() ^ p {
            -1i8
        } else {
            1
        }
    };
    let events: Vec<ChartEvent> = base
        .events()
        .iter()
        .zip(&event_lit)
        .map(|(e, lit)| match *e {
            ChartEvent::Black {
                position,
                label,
                action,
                ..
            } => {
                let s = sign_of(lit.unwrap());
                ChartEvent::Black {
                    position,
                    label,
                    action,
                    sign: Some(if action == BlackAction::Insert { s } else { -s }),
                }
            }
            ChartEvent::Cup {
                position, label, ..
            } => ChartEvent::Cup {
                position,
                label,
                sign: Some(sign_of(lit.unwrap())),
            },
            e => e,
        })
        .collect();
    let witness = Chart::new(base.degree(), true, events)?;
    debug_assert_eq!(witness.forget_orientation(), base);
    Ok(Orientability::Orientable(witness))
}
