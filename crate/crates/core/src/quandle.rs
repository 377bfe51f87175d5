//! Finite quandles, the transposition quandle `T_d`, the lazily materialized
//! quandle `A_d` of conjugates of `σ_i^{±1}`, diagram colorings by quandles
//! and lifting colorings through quandle surjections.
//!
//! `x ▷ y` is written `op(x, y)`. For conjugation quandles `x ▷ y = y⁻¹ x y`,
//! matching the crossing rule of [`crate::link`]: the outgoing under-arc is
//! `u ▷ o` at positive crossings and `u ▷⁻¹ o` at negative ones.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::algebra::{simple_certificate, BraidWord, GroupElement, Permutation};
use crate::error::{Error, Result};
use crate::link::{
    conjugates_by_length, find_simple_lift, solve, LiftBounds, LiftOutcome, LinkDiagram,
    PermColoring,
};

/// A binary operation on `0..n` given by its table `op[x][y] = x ▷ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuandle {
    table: Vec<Vec<usize>>,
    // inverse right translations, when they are bijections
    inverse: Option<Vec<Vec<usize>>>,
}

/// First violated quandle axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    Idempotence { x: usize },
    RightTranslation { y: usize },
    SelfDistributivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Idempotence { x } => write!(f, "{x} ▷ {x} != {x}"),
            Violation::RightTranslation { y } => write!(f, "x ↦ x ▷ {y} is not a bijection"),
            Violation::SelfDistributivity { x, y, z } => {
                write!(f, "({x} ▷ {y}) ▷ {z} != ({x} ▷ {z}) ▷ ({y} ▷ {z})")
            }
        }
    }
}

impl FiniteQuandle {
    /// Checks only the shape of the table; see [`FiniteQuandle::validate`]
    /// for the axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidQuandle(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidQuandle(format!(
                    "row {x} contains {v}, outside 0..{n}"
                )));
            }
        }
        let mut inverse = vec![vec![usize::MAX; n]; n];
        let mut bijective = true;
        'cols: for y in 0..n {
            for (x, row) in table.iter().enumerate() {
                let v = row[y];
                if inverse[v][y] != usize::MAX {
                    bijective = false;
                    break 'cols;
                }
                inverse[v][y] = x;
            }
        }
        Ok(FiniteQuandle {
            table,
            inverse: bijective.then_some(inverse),
        })
    }

    /// Text format: the size `n`, then `n` rows of `n` indices in `0..n`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nums = Vec::new();
        let mut offset = 0;
        for tok in text.split_whitespace() {
            let pos = offset + text[offset..].find(tok).unwrap();
            offset = pos + tok.len();
            nums.push(
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(pos, format!("expected an index, found {tok:?}")))?,
            );
        }
        let Some((&n, rest)) = nums.split_first() else {
            return Err(Error::parse(0, "missing quandle size"));
        };
        if rest.len() != n * n {
            return Err(Error::parse(
                text.len(),
                format!("expected {} table entries, found {}", n * n, rest.len()),
            ));
        }
        Self::from_table(
            rest.chunks(n.max(1))
                .take(n)
                .map(<[usize]>::to_vec)
                .collect(),
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// The unique `z` with `z ▷ y = x`, if right translations are bijective.
    pub fn inv_op(&self, x: usize, y: usize) -> Option<usize> {
        self.inverse.as_ref().map(|t| t[x][y])
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Checks the three axioms exhaustively and returns the first violation.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.len();
        if let Some(x) = (0..n).find(|&x| self.op(x, x) != x) {
            return Err(Violation::Idempotence { x });
        }
        if self.inverse.is_none() {
            let y = (0..n)
                .find(|&y| {
                    let mut seen = vec![false; n];
                    (0..n).any(|x| std::mem::replace(&mut seen[self.op(x, y)], true))
                })
                .expect("some column repeats");
            return Err(Violation::RightTranslation { y });
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.op(self.op(x, y), z) != self.op(self.op(x, z), self.op(y, z)) {
                        return Err(Violation::SelfDistributivity { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    fn require_valid(&self) -> Result<()> {
        self.validate()
            .map_err(|v| Error::InvalidQuandle(v.to_string()))
    }

    /// Conjugation quandle on a conjugation-closed list of group elements.
    pub fn conjugation<G: GroupElement>(elements: &[G]) -> Result<Self> {
        let index: HashMap<&G, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let table = elements
            .iter()
            .map(|x| {
                elements
                    .iter()
                    .map(|y| {
                        index.get(&x.conjugate_by(y)).copied().ok_or_else(|| {
                            Error::InvalidQuandle(format!("{x} conjugated by {y} leaves the set"))
                        })
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(table)
    }

    /// `self × other` with the componentwise operation; `(a, b)` has index
    /// `a · |other| + b`.
    pub fn product(&self, other: &FiniteQuandle) -> FiniteQuandle {
        let m = other.len();
        let n = self.len() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.op(x / m, y / m) * m + other.op(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("product table has the right shape")
    }

    /// The quandle on `0..n` with `x ▷ y = x`.
    pub fn trivial(n: usize) -> FiniteQuandle {
        Self::from_table((0..n).map(|x| vec![x; n]).collect())
            .expect("trivial table has the right shape")
    }
}

/// Transpositions of `S_d` in lexicographic order of their points.
pub fn td_elements(d: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            out.push(Permutation::transposition(d, i, j).expect("valid points"));
        }
    }
    out
}

/// `T_d`: transpositions of `S_d` under conjugation, indexed as in
/// [`td_elements`].
pub fn make_td(d: usize) -> Result<FiniteQuandle> {
    crate::algebra::perm::check_degree(d)?;
    FiniteQuandle::conjugation(&td_elements(d))
}

fn translate(q: &FiniteQuandle, u: usize, o: usize, sign: i8) -> usize {
    if sign > 0 {
        q.op(u, o)
    } else {
        q.inv_op(u, o).expect("validated quandle")
    }
}

/// All colorings of the arcs of `dg` by elements of `q`, in lexicographic
/// order of the free choices.
pub fn quandle_colorings(dg: &LinkDiagram, q: &FiniteQuandle) -> Result<Vec<Vec<usize>>> {
    q.require_valid()?;
    let all: Vec<usize> = (0..q.len()).collect();
    let out = solve(
        dg,
        vec![None; dg.arc_count()],
        &|_, _| all.clone(),
        &|u, o, s| translate(q, *u, *o, s),
        &|v, o, s| translate(q, *v, *o, -s),
        usize::MAX,
        u64::MAX,
    );
    Ok(out.solutions)
}

/// Index of the first crossing where a `q`-coloring fails.
pub fn quandle_coloring_violation(
    dg: &LinkDiagram,
    q: &FiniteQuandle,
    coloring: &[usize],
) -> Option<usize> {
    dg.crossing_data().iter().position(|c| {
        translate(q, coloring[c.under_in], coloring[c.over], c.sign) != coloring[c.under_out]
    })
}

fn check_coloring(dg: &LinkDiagram, q: &FiniteQuandle, coloring: &[usize]) -> Result<()> {
    if coloring.len() != dg.arc_count() || coloring.iter().any(|&x| x >= q.len()) {
        return Err(Error::InvalidColoring(format!(
            "expected {} colors in 0..{}",
            dg.arc_count(),
            q.len()
        )));
    }
    if let Some(c) = quandle_coloring_violation(dg, q, coloring) {
        return Err(Error::InvalidColoring(format!(
            "relation fails at crossing {}",
            c + 1
        )));
    }
    Ok(())
}

/// Checks that `map` is a surjective homomorphism `source → target`.
pub fn check_surjection(
    source: &FiniteQuandle,
    target: &FiniteQuandle,
    map: &[usize],
) -> Result<()> {
    source.require_valid()?;
    target.require_valid()?;
    if map.len() != source.len() || map.iter().any(|&v| v >= target.len()) {
        return Err(Error::NotSurjection(format!(
            "map needs {} entries in 0..{}",
            source.len(),
            target.len()
        )));
    }
    for x in 0..source.len() {
        for y in 0..source.len() {
            if map[source.op(x, y)] != target.op(map[x], map[y]) {
                return Err(Error::NotSurjection(format!(
                    "p({x} ▷ {y}) != p({x}) ▷ p({y})"
                )));
            }
        }
    }
    let mut hit = vec![false; target.len()];
    for &v in map {
        hit[v] = true;
    }
    if let Some(v) = hit.iter().position(|h| !h) {
        return Err(Error::NotSurjection(format!("{v} has no preimage")));
    }
    Ok(())
}

/// Parses a map file: whitespace-separated target indices, one per source
/// element.
pub fn parse_map(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let pos = offset + text[offset..].find(tok).unwrap();
        offset = pos + tok.len();
        out.push(
            tok.parse()
                .map_err(|_| Error::parse(pos, format!("expected an index, found {tok:?}")))?,
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuandleLift {
    Lift(Vec<usize>),
    /// No lift exists. `crossing` is the first crossing whose relation
    /// failed at the deepest point reached by the search.
    None {
        crossing: Option<usize>,
    },
}

/// Decides whether `coloring` (by `target`) is `p ∘ c` for some coloring
/// `c` by `source`. Arcs are filled in order from the fibers of their
/// colors; each crossing is checked as soon as its arcs are filled. The
/// search is exhaustive.
pub fn lift_through_surjection(
    dg: &LinkDiagram,
    source: &FiniteQuandle,
    target: &FiniteQuandle,
    p: &[usize],
    coloring: &[usize],
) -> Result<QuandleLift> {
    check_surjection(source, target, p)?;
    check_coloring(dg, target, coloring)?;
    let m = dg.arc_count();
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (k, c) in dg.crossing_data().iter().enumerate() {
        due[c.over.max(c.under_in).max(c.under_out)].push(k);
    }
    let fibers: Vec<Vec<usize>> = (0..target.len())
        .map(|t| (0..source.len()).filter(|&s| p[s] == t).collect())
        .collect();

    struct Search<'a> {
        dg: &'a LinkDiagram,
        q: &'a FiniteQuandle,
        due: &'a [Vec<usize>],
        fibers: &'a [Vec<usize>],
        coloring: &'a [usize],
        values: Vec<usize>,
        deepest: Option<(usize, usize)>,
    }
    impl Search<'_> {
        fn go(&mut self, a: usize) -> bool {
            if a == self.values.len() {
                return true;
            }
            for &x in &self.fibers[self.coloring[a]] {
                self.values[a] = x;
                let bad = self.due[a].iter().copied().find(|&k| {
                    let c = self.dg.crossing_data()[k];
                    translate(self.q, self.values[c.under_in], self.values[c.over], c.sign)
                        != self.values[c.under_out]
                });
                match bad {
                    Some(k) => {
                        if self.deepest.is_none_or(|(d, _)| a > d) {
                            self.deepest = Some((a, k));
                        }
                    }
                    None => {
                        if self.go(a + 1) {
                            return true;
                        }
                    }
                }
            }
            false
        }
    }
    let mut s = Search {
        dg,
        q: source,
        due: &due,
        fibers: &fibers,
        coloring,
        values: vec![0; m],
        deepest: None,
    };
    Ok(if s.go(0) {
        QuandleLift::Lift(s.values)
    } else {
        QuandleLift::None {
            crossing: s.deepest.map(|(_, k)| k),
        }
    })
}

/// The quandle `A_d` of conjugates of `σ_i^{±1}` in `B_d`, materialized on
/// demand. Elements are interned by braid equality, so indices are stable
/// and equality is exact. Safe for concurrent use.
pub struct LazyBraidQuandle {
    degree: usize,
    cache: RwLock<Interned>,
}

#[derive(Default)]
struct Interned {
    elements: Vec<BraidWord>,
    index: HashMap<BraidWord, usize>,
}

impl LazyBraidQuandle {
    pub fn new(d: usize) -> Result<Self> {
        crate::algebra::perm::check_degree(d)?;
        Ok(LazyBraidQuandle {
            degree: d,
            cache: RwLock::new(Interned::default()),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements materialized so far.
    pub fn len(&self) -> usize {
        self.cache.read().expect("lock").elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn intern(&self, w: BraidWord) -> usize {
        if let Some(&i) = self.cache.read().expect("lock").index.get(&w) {
            return i;
        }
        let mut c = self.cache.write().expect("lock");
        if let Some(&i) = c.index.get(&w) {
            return i;
        }
        let i = c.elements.len();
        c.elements.push(w.clone());
        c.index.insert(w, i);
        i
    }

    /// Index of `w`, after certifying that it is a conjugate of some
    /// `σ_i^{±1}` with a conjugator of length at most `bound`.
    pub fn element(&self, w: &BraidWord, bound: usize) -> Result<usize> {
        if w.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: w.degree(),
            });
        }
        if let Some(&i) = self.cache.read().expect("lock").index.get(w) {
            return Ok(i);
        }
        if !simple_certificate(w, bound).is_simple() {
            return Err(Error::InvalidColoring(format!(
                "{w} is not certified simple"
            )));
        }
        Ok(self.intern(w.clone()))
    }

    /// Materializes all conjugates with conjugator length at most `len`.
    pub fn materialize(&self, len: usize) {
        for layer in conjugates_by_length(self.degree, len) {
            for w in layer {
                self.intern(w);
            }
        }
    }

    pub fn get(&self, i: usize) -> BraidWord {
        self.cache.read().expect("lock").elements[i].clone()
    }

    /// `x ▷ y = y⁻¹ x y`; the result is again in `A_d`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.get(x), self.get(y));
        self.intern(a.conjugate_by(&b).freely_reduced())
    }

    /// The quandle projection to `T_d`.
    pub fn project(&self, i: usize) -> Permutation {
        self.get(i).project()
    }
}

/// A lift of a `T_d`-coloring to `A_d`, found by the braid lift search.
/// The coloring uses indices of [`td_elements`].
pub fn lift_to_ad(
    dg: &LinkDiagram,
    d: usize,
    coloring: &[usize],
    bounds: LiftBounds,
) -> Result<LiftOutcome> {
    let ts = td_elements(d);
    if coloring.iter().any(|&x| x >= ts.len()) {
        return Err(Error::InvalidColoring(format!(
            "colors must lie in 0..{}",
            ts.len()
        )));
    }
    let f = PermColoring::new(dg, d, coloring.iter().map(|&x| ts[x]).collect())?;
    find_simple_lift(dg, &f, bounds)
}
