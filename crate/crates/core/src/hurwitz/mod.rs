//! Hurwitz systems over `S_d` and `B_d`.
//!
//! A Hurwitz system is the ordered tuple of meridian images `(a_1, ..., a_n)`.
//! The forward Hurwitz move at `k` (1-based) replaces `(a_k, a_{k+1})` by
//! `(a_{k+1}, a_{k+1}⁻¹ a_k a_{k+1})`; the inverse move replaces it by
//! `(a_k a_{k+1} a_k⁻¹, a_k)`. Conjugation by `g` maps every entry to
//! `g⁻¹ a_i g`. Products are read left to right.

mod equiv;
mod normal;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use equiv::{hc_equivalent, Equivalence, DEFAULT_BFS_BUDGET};
pub(crate) use normal::check_normalizable;
pub use normal::{
    hc_normal_form, normal_form_template, orbit_normal_forms, NormalForm, OrbitNormalForm,
};

use crate::algebra::{
    BraidWord, Flavor, GroupElement, Permutation, Simplicity, DEFAULT_CONJUGATOR_BOUND,
};
use crate::error::{Error, Result};

/// Direction of a Hurwitz move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// One step of an HC-equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move<G> {
    /// Hurwitz move at 1-based position `k` (acts on entries `k`, `k+1`).
    Hurwitz { k: usize, direction: Direction },
    /// Global conjugation `a ↦ g⁻¹ a g`.
    Conjugate(G),
}

impl<G: GroupElement> fmt::Display for Move<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Hurwitz {
                k,
                direction: Direction::Forward,
            } => write!(f, "H{k}"),
            Move::Hurwitz {
                k,
                direction: Direction::Inverse,
            } => write!(f, "H{k}^-1"),
            Move::Conjugate(g) => write!(f, "C[{g}]"),
        }
    }
}

/// An ordered tuple of elements of `S_d` or `B_d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HurwitzSystem<G> {
    degree: usize,
    entries: Vec<G>,
}

pub type PermSystem = HurwitzSystem<Permutation>;
pub type BraidSystem = HurwitzSystem<BraidWord>;

impl<G: GroupElement> HurwitzSystem<G> {
    pub fn new(degree: usize, entries: Vec<G>) -> Result<Self> {
        crate::algebra::perm::check_degree(degree)?;
        for e in &entries {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: e.degree(),
                });
            }
        }
        Ok(HurwitzSystem { degree, entries })
    }

    /// Parses entries in the algebra text syntax.
    pub fn parse_entries<S: AsRef<str>>(degree: usize, entries: &[S]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|s| G::parse_element(s.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, parsed)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn flavor(&self) -> Flavor {
        G::FLAVOR
    }

    pub fn entries(&self) -> &[G] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<G> {
        self.entries
    }

    /// Applies one Hurwitz move at 1-based position `k`.
    pub fn hurwitz_move(&self, k: usize, direction: Direction) -> Result<Self> {
        let mut out = self.clone();
        out.hurwitz_move_in_place(k, direction)?;
        Ok(out)
    }

    pub(crate) fn hurwitz_move_in_place(&mut self, k: usize, direction: Direction) -> Result<()> {
        let n = self.entries.len();
        if k == 0 || k >= n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        let (i, j) = (k - 1, k);
        let (a, b) = (self.entries[i].clone(), self.entries[j].clone());
        match direction {
            Direction::Forward => {
                self.entries[j] = a.conjugate_by(&b);
                self.entries[i] = b;
            }
            Direction::Inverse => {
                self.entries[i] = b.conjugate_by(&a.inverse());
                self.entries[j] = a;
            }
        }
        Ok(())
    }

    /// Entrywise conjugation `a_i ↦ g⁻¹ a_i g`.
    pub fn conjugate(&self, g: &G) -> Result<Self> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            });
        }
        Ok(HurwitzSystem {
            degree: self.degree,
            entries: self.entries.iter().map(|a| a.conjugate_by(g)).collect(),
        })
    }

    pub fn apply_move(&self, m: &Move<G>) -> Result<Self> {
        match m {
            Move::Hurwitz { k, direction } => self.hurwitz_move(*k, *direction),
            Move::Conjugate(g) => self.conjugate(g),
        }
    }

    /// Applies a move sequence in order.
    pub fn replay(&self, trace: &[Move<G>]) -> Result<Self> {
        let mut cur = self.clone();
        for m in trace {
            match m {
                Move::Hurwitz { k, direction } => cur.hurwitz_move_in_place(*k, *direction)?,
                Move::Conjugate(g) => cur = cur.conjugate(g)?,
            }
        }
        Ok(cur)
    }

    /// Ordered product `a_1 a_2 ... a_n`.
    pub fn total_monodromy(&self) -> G {
        self.entries
            .iter()
            .fold(G::identity(self.degree), |acc, a| acc.then(a))
    }

    /// Aggregate simplicity: `NotSimple` if any entry fails, else
    /// `Undetermined` if any entry is undetermined, else `Simple`.
    pub fn simplicity(&self, bound: usize) -> Simplicity {
        let mut undetermined = false;
        for e in &self.entries {
            match e.simplicity(bound) {
                Simplicity::NotSimple => return Simplicity::NotSimple,
                Simplicity::Undetermined => undetermined = true,
                Simplicity::Simple => {}
            }
        }
        if undetermined {
            Simplicity::Undetermined
        } else {
            Simplicity::Simple
        }
    }

    /// Every entry is a transposition (or, for braids, a certified conjugate
    /// of some `σ_i^{±1}` within the default conjugator bound).
    pub fn is_simple(&self) -> bool {
        self.simplicity(DEFAULT_CONJUGATOR_BOUND) == Simplicity::Simple
    }

    /// Entrywise projection to `S_d`.
    pub fn project(&self) -> PermSystem {
        HurwitzSystem {
            degree: self.degree,
            entries: self.entries.iter().map(G::to_permutation).collect(),
        }
    }

    /// Orbits of the group generated by the (projected) entries, each sorted,
    /// ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let perms: Vec<Permutation> = self.entries.iter().map(G::to_permutation).collect();
        orbits_of(self.degree, &perms)
    }

    /// The generated subgroup acts transitively on `{1..d}`.
    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }
}

pub(crate) fn orbits_of(d: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for g in gens {
        for x in 1..=d {
            let (a, b) = (find(&mut parent, x - 1), find(&mut parent, g.apply(x) - 1));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..d {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x + 1);
    }
    groups.into_values().collect()
}

impl<G: GroupElement> fmt::Display for HurwitzSystem<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<G: GroupElement> fmt::Debug for HurwitzSystem<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// On-disk form: `{"degree": 3, "flavor": "permutation", "entries": ["(1 2)", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub degree: usize,
    pub flavor: Flavor,
    pub entries: Vec<String>,
}

/// A system of either flavor, as read from a [`SystemFile`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySystem {
    Permutation(PermSystem),
    Braid(BraidSystem),
}

impl<G: GroupElement> From<&HurwitzSystem<G>> for SystemFile {
    fn from(s: &HurwitzSystem<G>) -> Self {
        SystemFile {
            degree: s.degree,
            flavor: G::FLAVOR,
            entries: s.entries.iter().map(|e| e.to_string()).collect(),
        }
    }
}

impl AnySystem {
    pub fn from_file(f: &SystemFile) -> Result<Self> {
        Ok(match f.flavor {
            Flavor::Permutation => {
                AnySystem::Permutation(HurwitzSystem::parse_entries(f.degree, &f.entries)?)
            }
            Flavor::Braid => AnySystem::Braid(HurwitzSystem::parse_entries(f.degree, &f.entries)?),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: SystemFile = serde_json::from_str(text)?;
        Self::from_file(&f)
    }

    pub fn to_file(&self) -> SystemFile {
        match self {
            AnySystem::Permutation(s) => s.into(),
            AnySystem::Braid(s) => s.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn degree(&self) -> usize {
        match self {
            AnySystem::Permutation(s) => s.degree(),
            AnySystem::Braid(s) => s.degree(),
        }
    }

    pub fn flavor(&self) -> Flavor {
        match self {
            AnySystem::Permutation(_) => Flavor::Permutation,
            AnySystem::Braid(_) => Flavor::Braid,
        }
    }
}
