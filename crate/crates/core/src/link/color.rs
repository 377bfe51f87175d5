use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CrossingData, LinkDiagram};
use crate::algebra::DEFAULT_CONJUGATOR_BOUND;
use crate::algebra::{BraidWord, Flavor, GroupElement, Permutation, Simplicity};
use crate::error::{Error, Result};

/// An assignment of simple elements to the arcs of a diagram that satisfies
/// the crossing relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleColoring<G> {
    degree: usize,
    assignment: Vec<G>,
}

pub type PermColoring = SimpleColoring<Permutation>;
pub type BraidColoring = SimpleColoring<BraidWord>;

/// `v = o⁻¹ u o` at positive crossings, `v = o u o⁻¹` at negative ones.
pub(crate) fn act<G: GroupElement>(u: &G, o: &G, sign: i8) -> G {
    if sign > 0 {
        u.conjugate_by(o)
    } else {
        u.conjugate_by(&o.inverse())
    }
}

pub(crate) fn unact<G: GroupElement>(v: &G, o: &G, sign: i8) -> G {
    act(v, o, -sign)
}

fn relation_holds<G: GroupElement>(c: &CrossingData, a: &[G]) -> bool {
    act(&a[c.under_in], &a[c.over], c.sign) == a[c.under_out]
}

/// Index of the first crossing whose relation fails, if any.
pub fn check_coloring<G: GroupElement>(dg: &LinkDiagram, assignment: &[G]) -> Option<usize> {
    dg.crossing_data()
        .iter()
        .position(|c| !relation_holds(c, assignment))
}

impl<G: GroupElement> SimpleColoring<G> {
    /// Validates arc count, degrees, simplicity of every entry and the
    /// crossing relations.
    pub fn new(dg: &LinkDiagram, degree: usize, assignment: Vec<G>) -> Result<Self> {
        if assignment.len() != dg.arc_count() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} arcs",
                assignment.len(),
                dg.arc_count()
            )));
        }
        for (a, g) in assignment.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
            match g.simplicity(DEFAULT_CONJUGATOR_BOUND) {
                Simplicity::Simple => {}
                Simplicity::NotSimple => {
                    return Err(Error::InvalidColoring(format!("arc {} color {g} is not simple", a + 1)))
                }
                Simplicity::Undetermined => {
                    return Err(Error::InvalidColoring(format!(
                        "arc {} color {g} has no certificate within conjugator length {DEFAULT_CONJUGATOR_BOUND}",
                        a + 1
                    )))
                }
            }
        }
        if let Some(c) = check_coloring(dg, &assignment) {
            return Err(Error::InvalidColoring(format!(
                "relation fails at crossing {}",
                c + 1
            )));
        }
        Ok(SimpleColoring { degree, assignment })
    }

    pub(crate) fn new_unchecked(degree: usize, assignment: Vec<G>) -> Self {
        SimpleColoring { degree, assignment }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn assignment(&self) -> &[G] {
        &self.assignment
    }

    /// Arc-wise image in `S_d`.
    pub fn project(&self) -> PermColoring {
        SimpleColoring {
            degree: self.degree,
            assignment: self.assignment.iter().map(G::to_permutation).collect(),
        }
    }

    /// True when the projected colors act transitively on `{1..d}`. For
    /// transpositions this is the same as generating all of `S_d`.
    pub fn is_surjective(&self) -> bool {
        let perms: Vec<Permutation> = self.assignment.iter().map(G::to_permutation).collect();
        crate::hurwitz::orbits_of(self.degree, &perms).len() == 1
    }

    pub fn to_file(&self) -> ColoringFile {
        ColoringFile {
            degree: self.degree,
            flavor: G::FLAVOR,
            assignment: self
                .assignment
                .iter()
                .enumerate()
                .map(|(a, g)| ((a + 1).to_string(), g.to_string()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_file(dg: &LinkDiagram, file: &ColoringFile) -> Result<Self> {
        if file.flavor != G::FLAVOR {
            return Err(Error::FlavorMismatch {
                expected: G::FLAVOR.name(),
                found: file.flavor.name(),
            });
        }
        let mut assignment = Vec::with_capacity(dg.arc_count());
        for a in 1..=dg.arc_count() {
            let text = file
                .assignment
                .get(&a.to_string())
                .ok_or_else(|| Error::InvalidColoring(format!("arc {a} has no color")))?;
            assignment.push(G::parse_element(text, file.degree)?);
        }
        if file.assignment.len() != dg.arc_count() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} arcs",
                file.assignment.len(),
                dg.arc_count()
            )));
        }
        Self::new(dg, file.degree, assignment)
    }

    pub fn from_json(dg: &LinkDiagram, text: &str) -> Result<Self> {
        Self::from_file(dg, &serde_json::from_str(text)?)
    }
}

/// Serialized coloring; arcs are keyed by their 1-based index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub degree: usize,
    pub flavor: Flavor,
    pub assignment: BTreeMap<String, String>,
}

/// Display name of a transposition in `S_3` under the three-color dictionary.
pub fn fox_color_name(p: &Permutation) -> Option<&'static str> {
    if p.degree() != 3 {
        return None;
    }
    match p.transposition_points()? {
        (1, 2) => Some("blue"),
        (2, 3) => Some("red"),
        (1, 3) => Some("green"),
        _ => None,
    }
}

/// One result of [`enumerate_simple_colorings`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedColoring {
    pub coloring: PermColoring,
    pub surjective: bool,
}

/// Candidate values for an arc given the partial assignment.
pub(crate) type Candidates<'c, T> = dyn Fn(usize, &[Option<T>]) -> Vec<T> + 'c;

pub(crate) struct SolveOutcome<T> {
    pub solutions: Vec<Vec<T>>,
    pub checks: u64,
    pub exhausted: bool,
}

struct Solver<'a, T> {
    data: &'a [CrossingData],
    candidates: &'a Candidates<'a, T>,
    act: &'a dyn Fn(&T, &T, i8) -> T,
    unact: &'a dyn Fn(&T, &T, i8) -> T,
    limit: usize,
    budget: u64,
    out: SolveOutcome<T>,
}

impl<T: Clone + PartialEq> Solver<'_, T> {
    fn stopped(&self) -> bool {
        self.out.exhausted || self.out.solutions.len() >= self.limit
    }

    fn tick(&mut self) -> bool {
        self.out.checks += 1;
        if self.out.checks > self.budget {
            self.out.exhausted = true;
        }
        !self.out.exhausted
    }

    fn propagate(&mut self, vals: &mut [Option<T>]) -> bool {
        loop {
            let mut changed = false;
            for c in self.data {
                let Some(o) = vals[c.over].clone() else {
                    continue;
                };
                match (&vals[c.under_in], &vals[c.under_out]) {
                    (Some(u), Some(v)) => {
                        let ok = (self.act)(u, &o, c.sign) == *v;
                        if !self.tick() || !ok {
                            return false;
                        }
                    }
                    (Some(u), None) => {
                        vals[c.under_out] = Some((self.act)(u, &o, c.sign));
                        changed = true;
                        if !self.tick() {
                            return false;
                        }
                    }
                    (None, Some(v)) => {
                        vals[c.under_in] = Some((self.unact)(v, &o, c.sign));
                        changed = true;
                        if !self.tick() {
                            return false;
                        }
                    }
                    (None, None) => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(&mut self, mut vals: Vec<Option<T>>) {
        if self.stopped() || !self.propagate(&mut vals) {
            return;
        }
        match vals.iter().position(Option::is_none) {
            None => self
                .out
                .solutions
                .push(vals.into_iter().map(Option::unwrap).collect()),
            Some(a) => {
                for x in (self.candidates)(a, &vals) {
                    if self.stopped() {
                        return;
                    }
                    let mut next = vals.clone();
                    next[a] = Some(x);
                    self.dfs(next);
                }
            }
        }
    }
}

/// Depth-first search over arc values with propagation through crossings.
/// The first unassigned arc is branched on, in candidate order, so results
/// come out in a fixed order.
pub(crate) fn solve<T: Clone + PartialEq>(
    dg: &LinkDiagram,
    init: Vec<Option<T>>,
    candidates: &Candidates<'_, T>,
    act: &dyn Fn(&T, &T, i8) -> T,
    unact: &dyn Fn(&T, &T, i8) -> T,
    limit: usize,
    budget: u64,
) -> SolveOutcome<T> {
    let mut s = Solver {
        data: dg.crossing_data(),
        candidates,
        act,
        unact,
        limit,
        budget,
        out: SolveOutcome {
            solutions: Vec::new(),
            checks: 0,
            exhausted: false,
        },
    };
    s.dfs(init);
    s.out
}

pub(crate) fn transpositions(d: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for i in 1..=d {
        for j in i + 1..=d {
            out.push(Permutation::transposition(d, i, j).expect("valid points"));
        }
    }
    out
}

/// All colorings of the arcs by transpositions of `S_d` satisfying every
/// crossing relation.
pub fn enumerate_simple_colorings(dg: &LinkDiagram, d: usize) -> Result<Vec<EnumeratedColoring>> {
    if !(2..=crate::MAX_DEGREE).contains(&d) {
        return Err(Error::DegreeOutOfRange(d));
    }
    let ts = transpositions(d);
    let out = solve(
        dg,
        vec![None; dg.arc_count()],
        &|_, _| ts.clone(),
        &act::<Permutation>,
        &unact::<Permutation>,
        usize::MAX,
        u64::MAX,
    );
    Ok(out
        .solutions
        .into_iter()
        .map(|a| {
            let coloring = SimpleColoring::new_unchecked(d, a);
            EnumeratedColoring {
                surjective: coloring.is_surjective(),
                coloring,
            }
        })
        .collect())
}
