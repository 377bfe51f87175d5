use std::collections::BTreeMap;

use super::{Direction, HurwitzSystem, Move, PermSystem};
use crate::algebra::Permutation;
use crate::error::{Error, Result};

/// A normal form together with the moves that produce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub system: PermSystem,
    pub trace: Vec<Move<Permutation>>,
}

/// Normal form of the sub-system living on one orbit, relabelled so that the
/// orbit becomes `{1..|orbit|}` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitNormalForm {
    pub orbit: Vec<usize>,
    /// Number of entries of the original system supported on this orbit.
    pub length: usize,
    pub normal_form: PermSystem,
}

/// `((12)^m, (23), (23), ..., (d-1 d), (d-1 d))` with `m = n - 2(d-2)`, or
/// `None` when no such tuple exists (odd `n`, or `m < 2` for `d >= 2`).
pub fn normal_form_template(d: usize, n: usize) -> Option<PermSystem> {
    crate::algebra::perm::check_degree(d).ok()?;
    if d == 1 {
        return (n == 0).then(|| HurwitzSystem::new(1, Vec::new()).unwrap());
    }
    if !n.is_multiple_of(2) || n < 2 * (d - 2) + 2 {
        return None;
    }
    let m = n - 2 * (d - 2);
    let mut entries = vec![Permutation::tau(d, 1).unwrap(); m];
    for i in 2..d {
        let t = Permutation::tau(d, i).unwrap();
        entries.push(t);
        entries.push(t);
    }
    Some(HurwitzSystem::new(d, entries).unwrap())
}

pub(crate) fn check_simple_closing(s: &PermSystem) -> Result<()> {
    if let Some(i) = s.entries().iter().position(|a| !a.is_transposition()) {
        return Err(Error::NotSimple(i + 1));
    }
    let prod = s.total_monodromy();
    if !prod.is_identity() {
        return Err(Error::NotClosing(prod.to_string()));
    }
    Ok(())
}

pub(crate) fn check_normalizable(s: &PermSystem) -> Result<()> {
    if let Some(i) = s.entries().iter().position(|a| !a.is_transposition()) {
        return Err(Error::NotSimple(i + 1));
    }
    let orbits = s.orbits();
    if orbits.len() > 1 {
        return Err(Error::Intransitive(orbits.iter().map(Vec::len).collect()));
    }
    let prod = s.total_monodromy();
    if !prod.is_identity() {
        return Err(Error::NotClosing(prod.to_string()));
    }
    Ok(())
}

/// Brings a simple, transitive, closing permutation system to the normal
/// form using Hurwitz moves only. The trace replays the input onto the output.
pub fn hc_normal_form(s: &PermSystem) -> Result<NormalForm> {
    check_normalizable(s)?;
    let d = s.degree();
    if normal_form_template(d, s.len()).as_ref() == Some(s) {
        return Ok(NormalForm {
            system: s.clone(),
            trace: Vec::new(),
        });
    }
    let mut w = Worker {
        entries: s.entries().to_vec(),
        trace: Vec::new(),
    };
    if d >= 2 {
        w.peel_leaves(d);
        w.arrange_pairs(d);
    }
    let system = HurwitzSystem::new(d, w.entries)?;
    debug_assert_eq!(Some(&system), normal_form_template(d, s.len()).as_ref());
    Ok(NormalForm {
        system,
        trace: w.trace,
    })
}

/// Per-orbit normal forms of a simple closing system. Entries supported on
/// different orbits commute, so the HC-class of the whole system is fixed by
/// the multiset of `(orbit size, length)` over its orbits.
pub fn orbit_normal_forms(s: &PermSystem) -> Result<Vec<OrbitNormalForm>> {
    check_simple_closing(s)?;
    let mut out = Vec::new();
    for orbit in s.orbits() {
        let local: BTreeMap<usize, usize> =
            orbit.iter().enumerate().map(|(i, &x)| (x, i + 1)).collect();
        let k = orbit.len();
        let entries: Vec<Permutation> = s
            .entries()
            .iter()
            .filter_map(|a| {
                let (x, y) = a.transposition_points()?;
                let (lx, ly) = (*local.get(&x)?, *local.get(&y)?);
                Some(Permutation::transposition(k, lx, ly).unwrap())
            })
            .collect();
        let length = entries.len();
        let sub = HurwitzSystem::new(k, entries)?;
        out.push(OrbitNormalForm {
            orbit,
            length,
            normal_form: hc_normal_form(&sub)?.system,
        });
    }
    Ok(out)
}

struct Worker {
    entries: Vec<Permutation>,
    trace: Vec<Move<Permutation>>,
}

fn touches(a: &Permutation, p: usize) -> bool {
    a.apply(p) != p
}

impl Worker {
    /// Forward move on 0-based positions `i`, `i+1`.
    fn fwd(&mut self, i: usize) {
        let (a, b) = (self.entries[i], self.entries[i + 1]);
        self.entries[i] = b;
        self.entries[i + 1] = a.conjugate_by(&b);
        self.trace.push(Move::Hurwitz {
            k: i + 1,
            direction: Direction::Forward,
        });
    }

    fn inv(&mut self, i: usize) {
        let (a, b) = (self.entries[i], self.entries[i + 1]);
        self.entries[i] = b.conjugate_by(&a);
        self.entries[i + 1] = a;
        self.trace.push(Move::Hurwitz {
            k: i + 1,
            direction: Direction::Inverse,
        });
    }

    /// For `p = d, d-1, ..., 3`: collect the entries moving `p` at the end of
    /// the active region, reduce them to a single repeated `(x p)`, and shrink
    /// the region. Afterwards the tuple reads `(12)^m, B_3, ..., B_d` where
    /// each `B_p` is an even power of one transposition `(x_p p)`, `x_p < p`.
    fn peel_leaves(&mut self, d: usize) {
        let mut end = self.entries.len();
        for p in (3..=d).rev() {
            let mut t = end;
            for i in (0..end).rev() {
                if touches(&self.entries[i], p) {
                    t -= 1;
                    for j in i..t {
                        self.fwd(j);
                    }
                }
            }
            let mut start = t;
            while let Some(j) = (start..end - 1).find(|&j| self.entries[j] != self.entries[j + 1]) {
                // ((x p), (y p)) -> ((y p), (x y))
                self.fwd(j);
                for i in (start..=j).rev() {
                    self.fwd(i);
                }
                start += 1;
            }
            debug_assert!((end - start).is_multiple_of(2) && end > start);
            end = start;
        }
    }

    fn pair_label(&self, m: usize) -> Permutation {
        self.entries[2 * m]
    }

    /// `(t, t, c, c) -> (c, c, t, t)` on pairs `m`, `m+1`.
    fn swap_pairs(&mut self, m: usize) {
        let i = 2 * m;
        self.inv(i + 1);
        self.inv(i);
        self.inv(i + 2);
        self.inv(i + 1);
    }

    /// `(t, t, c, c) -> (ctc, ctc, c, c)` on pairs `m`, `m+1`.
    fn conj_pair_by_next(&mut self, m: usize) {
        let i = 2 * m;
        self.fwd(i + 1);
        self.fwd(i);
        self.fwd(i);
        self.fwd(i + 1);
    }

    /// Conjugates pair `a` by pair `b`, returning the new index of `a`.
    fn conj_pair(&mut self, mut a: usize, mut b: usize) -> usize {
        while b > a + 1 {
            self.swap_pairs(b - 1);
            b -= 1;
        }
        while b < a {
            self.swap_pairs(b);
            b += 1;
            if b == a {
                a -= 1;
            }
        }
        debug_assert_eq!(b, a + 1);
        self.conj_pair_by_next(a);
        a
    }

    fn find_pair(&self, label: &Permutation, skip: Option<usize>) -> usize {
        (0..self.entries.len() / 2)
            .find(|&m| Some(m) != skip && self.pair_label(m) == *label)
            .expect("conjugating pair present")
    }

    fn arrange_pairs(&mut self, d: usize) {
        let pairs = self.entries.len() / 2;
        let tr = |i: usize, j: usize| Permutation::transposition(d, i, j).unwrap();
        let ends = |a: &Permutation| a.transposition_points().unwrap();

        // Every (x p) with 1 < x becomes (1 p), conjugating by some (1 x).
        for p in 3..=d {
            while let Some(m) = (0..pairs).find(|&m| {
                let (x, y) = ends(&self.pair_label(m));
                y == p && x != 1
            }) {
                let (x, _) = ends(&self.pair_label(m));
                let b = self.find_pair(&tr(1, x), Some(m));
                self.conj_pair(m, b);
            }
        }
        // (1 k) -> (2 k) -> ... -> (k-1 k).
        for k in 3..=d {
            while let Some(m) = (0..pairs).find(|&m| self.pair_label(m) == tr(1, k)) {
                let mut cur = m;
                for j in 1..k - 1 {
                    let b = self.find_pair(&tr(j, j + 1), Some(cur));
                    cur = self.conj_pair(cur, b);
                }
            }
        }
        // Surplus (a a+1), a >= 2, walks down to (1 2).
        loop {
            let keepers: Vec<usize> = (2..d)
                .map(|a| self.find_pair(&tr(a, a + 1), None))
                .collect();
            let surplus =
                (0..pairs).find(|m| ends(&self.pair_label(*m)).0 != 1 && !keepers.contains(m));
            let Some(mut cur) = surplus else { break };
            loop {
                let (a, b) = ends(&self.pair_label(cur));
                if a == 1 && b == 2 {
                    break;
                }
                let by = if a > 1 { tr(a - 1, a) } else { tr(b - 1, b) };
                let c = self.find_pair(&by, Some(cur));
                cur = self.conj_pair(cur, c);
            }
        }
        // Bubble sort by label.
        let key = |a: &Permutation| ends(a).0;
        for _ in 0..pairs {
            for m in 0..pairs.saturating_sub(1) {
                if key(&self.pair_label(m)) > key(&self.pair_label(m + 1)) {
                    self.swap_pairs(m);
                }
            }
        }
    }
}
