//! Link diagrams in PD notation, simple colorings, tangle replacement and
//! braid lifts of simple colorings.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-edge, so `c` is the outgoing under-edge
//! and `b`, `d` belong to the over-strand. The crossing is positive when the
//! over-strand runs from `d` to `b` and negative when it runs from `b` to `d`.
//! A bare `O` is a crossingless unknotted component.
//!
//! Arcs are the maximal over-connected unions of edges; they index the
//! meridian generators. At a crossing with over-arc `o`, incoming under-arc
//! `u` and outgoing under-arc `v`, colorings satisfy `v = o⁻¹ u o` when the
//! crossing is positive and `v = o u o⁻¹` when it is negative.

mod color;
mod lift;
mod tangle;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub(crate) use color::solve;
pub use color::{
    check_coloring, enumerate_simple_colorings, fox_color_name, BraidColoring, ColoringFile,
    EnumeratedColoring, PermColoring, SimpleColoring,
};
pub(crate) use lift::conjugates_by_length;
pub use lift::{
    exponent_sum_classes, find_simple_lift, LiftBounds, LiftOutcome, DEFAULT_LIFT_BUDGET,
    DEFAULT_LIFT_CONJUGATOR_LENGTH,
};
pub use tangle::{
    braid_twist_site, flat_tangle, montesinos_pair, montesinos_replace, r1_add, r1_remove, r2_add,
    r2_remove, replace_tangle, twist_tangle, Site, Tangle,
};

use crate::algebra::BraidWord;
use crate::dsu::Dsu;
use crate::error::{Error, Result};

/// Edge labels of one crossing, counterclockwise from the incoming under-edge.
pub type Pd = [usize; 4];

/// A slot of a crossing: `(crossing index, position 0..4)`.
pub type Slot = (usize, usize);

/// Arc-level data of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingData {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// A validated, oriented, planar PD diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Pd>,
    free_loops: usize,
    arcs: Vec<Vec<usize>>,
    edge_arc: BTreeMap<usize, usize>,
    data: Vec<CrossingData>,
    components: usize,
    head: BTreeMap<usize, Slot>,
    tail: BTreeMap<usize, Slot>,
}

fn occurrences(crossings: &[Pd]) -> Result<BTreeMap<usize, [Slot; 2]>> {
    let mut occ: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (s, &l) in x.iter().enumerate() {
            occ.entry(l).or_default().push((c, s));
        }
    }
    occ.into_iter()
        .map(|(l, v)| {
            if v.len() == 2 {
                Ok((l, [v[0], v[1]]))
            } else {
                Err(Error::InvalidDiagram(format!(
                    "arc {l} appears {} time{} (expected 2)",
                    v.len(),
                    if v.len() == 1 { "" } else { "s" }
                )))
            }
        })
        .collect()
}

fn other(pair: &[Slot; 2], x: Slot) -> Slot {
    if pair[0] == x {
        pair[1]
    } else {
        pair[0]
    }
}

/// One traversal of a component: `(label, head slot, tail slot)` per edge,
/// where the edge runs from its tail slot to its head slot.
type Walk = Vec<(usize, Slot, Slot)>;

fn walk(crossings: &[Pd], occ: &BTreeMap<usize, [Slot; 2]>, start: usize) -> Result<Walk> {
    let mut out = Vec::new();
    let mut label = start;
    let mut head = occ[&start][0];
    loop {
        let tail = other(&occ[&label], head);
        out.push((label, head, tail));
        if out.len() > occ.len() {
            return Err(Error::InvalidDiagram(format!(
                "strand through arc {start} does not close"
            )));
        }
        let (c, s) = head;
        let exit = (c, (s + 2) % 4);
        let next = crossings[c][exit.1];
        if next == start {
            if exit != occ[&start][1] {
                return Err(Error::InvalidDiagram(format!(
                    "strand through arc {start} reverses"
                )));
            }
            return Ok(out);
        }
        head = other(&occ[&next], exit);
        label = next;
    }
}

/// Under-strand votes of a walk: (forward, backward, first vote).
fn votes(w: &Walk) -> (usize, usize, Option<bool>) {
    let (mut f, mut b, mut first) = (0, 0, None);
    for &(_, (_, s), _) in w {
        match s {
            0 => {
                f += 1;
                first.get_or_insert(true);
            }
            2 => {
                b += 1;
                first.get_or_insert(false);
            }
            _ => {}
        }
    }
    (f, b, first)
}

fn walks(crossings: &[Pd], occ: &BTreeMap<usize, [Slot; 2]>) -> Result<Vec<Walk>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for &l in occ.keys() {
        if seen.contains(&l) {
            continue;
        }
        let w = walk(crossings, occ, l)?;
        for &(e, _, _) in &w {
            seen.insert(e);
        }
        out.push(w);
    }
    Ok(out)
}

impl LinkDiagram {
    /// Validates crossings and free loops: every label appears exactly twice,
    /// under-strands are oriented consistently along each component, and
    /// the diagram is planar.
    pub fn new(crossings: Vec<Pd>, free_loops: usize) -> Result<Self> {
        let occ = occurrences(&crossings)?;
        let mut head = BTreeMap::new();
        let mut tail = BTreeMap::new();
        let ws = walks(&crossings, &occ)?;
        for w in &ws {
            let (f, b, _) = votes(w);
            if f > 0 && b > 0 {
                return Err(Error::InvalidDiagram(format!(
                    "component through arc {} passes under in both directions",
                    w[0].0
                )));
            }
            for &(e, h, t) in w {
                let (h, t) = if b > 0 { (t, h) } else { (h, t) };
                head.insert(e, h);
                tail.insert(e, t);
            }
        }

        let labels: Vec<usize> = occ.keys().copied().collect();
        let idx: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut dsu = Dsu::new(labels.len());
        for x in &crossings {
            dsu.union(idx[&x[1]], idx[&x[3]]);
        }
        let mut root_arc: BTreeMap<usize, usize> = BTreeMap::new();
        let mut arcs: Vec<Vec<usize>> = Vec::new();
        let mut edge_arc = BTreeMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let r = dsu.find(i);
            let a = *root_arc.entry(r).or_insert_with(|| {
                arcs.push(Vec::new());
                arcs.len() - 1
            });
            arcs[a].push(l);
            edge_arc.insert(l, a);
        }
        arcs.extend(std::iter::repeat_with(Vec::new).take(free_loops));

        let data = crossings
            .iter()
            .enumerate()
            .map(|(c, x)| CrossingData {
                over: edge_arc[&x[1]],
                under_in: edge_arc[&x[0]],
                under_out: edge_arc[&x[2]],
                sign: if head[&x[1]] == (c, 1) { -1 } else { 1 },
            })
            .collect();

        let dg = LinkDiagram {
            components: ws.len() + free_loops,
            crossings,
            free_loops,
            arcs,
            edge_arc,
            data,
            head,
            tail,
        };
        dg.check_planar(&occ)?;
        Ok(dg)
    }

    /// Like [`LinkDiagram::new`], but first reverses under-strand slots so
    /// that each component follows the direction of its first under-pass.
    pub fn reoriented(mut crossings: Vec<Pd>, free_loops: usize) -> Result<Self> {
        let occ = occurrences(&crossings)?;
        let mut flip = vec![false; crossings.len()];
        for w in walks(&crossings, &occ)? {
            let (_, _, first) = votes(&w);
            let forward = first.unwrap_or(true);
            for &(_, (c, s), _) in &w {
                if (s == 0 && !forward) || (s == 2 && forward) {
                    flip[c] = true;
                }
            }
        }
        for (x, f) in crossings.iter_mut().zip(flip) {
            if f {
                x.rotate_left(2);
            }
        }
        Self::new(crossings, free_loops)
    }

    fn check_planar(&self, occ: &BTreeMap<usize, [Slot; 2]>) -> Result<()> {
        let n = self.crossings.len();
        let faces = self.corner_classes(occ);
        let mut graph = Dsu::new(n);
        for pair in occ.values() {
            graph.union(pair[0].0, pair[1].0);
        }
        let mut verts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut face_roots: BTreeMap<usize, std::collections::BTreeSet<usize>> = BTreeMap::new();
        for c in 0..n {
            let g = graph.find(c);
            *verts.entry(g).or_default() += 1;
            for s in 0..4 {
                face_roots.entry(g).or_default().insert(faces[4 * c + s]);
            }
        }
        for (g, v) in verts {
            let f = face_roots[&g].len();
            if f != v + 2 {
                return Err(Error::InvalidDiagram(format!(
                    "not planar: component containing crossing {} has {v} crossings and {f} faces",
                    g + 1
                )));
            }
        }
        Ok(())
    }

    /// Face id of each corner `4c + s`; corner `(c, s)` lies between slots
    /// `s` and `s + 1`.
    fn corner_classes(&self, occ: &BTreeMap<usize, [Slot; 2]>) -> Vec<usize> {
        let n = self.crossings.len();
        let mut dsu = Dsu::new(4 * n);
        for c in 0..n {
            for s in 0..4 {
                let s1 = (s + 1) % 4;
                let (c2, t) = other(&occ[&self.crossings[c][s1]], (c, s1));
                dsu.union(4 * c + s, 4 * c2 + t);
            }
        }
        (0..4 * n).map(|i| dsu.find(i)).collect()
    }

    /// The faces of the diagram as lists of corners `(crossing, s)`.
    pub fn faces(&self) -> Vec<Vec<Slot>> {
        let occ = occurrences(&self.crossings).expect("validated");
        let classes = self.corner_classes(&occ);
        let mut by: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
        for (i, r) in classes.into_iter().enumerate() {
            by.entry(r).or_default().push((i / 4, i % 4));
        }
        by.into_values().collect()
    }

    /// Face ids to the left and right of an edge, as indices into
    /// [`LinkDiagram::faces`].
    pub fn edge_faces(&self, label: usize) -> Option<(usize, usize)> {
        let &(c, s) = self.head.get(&label)?;
        let faces = self.faces();
        let find = |corner: Slot| faces.iter().position(|f| f.contains(&corner)).unwrap();
        Some((find((c, (s + 3) % 4)), find((c, s))))
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), 0).expect("empty diagram is valid")
    }

    pub fn crossings(&self) -> &[Pd] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Edge labels of each arc; crossingless components have no edges.
    pub fn arcs(&self) -> &[Vec<usize>] {
        &self.arcs
    }

    pub fn arc_of(&self, label: usize) -> Option<usize> {
        self.edge_arc.get(&label).copied()
    }

    pub fn crossing_data(&self) -> &[CrossingData] {
        &self.data
    }

    /// Edge labels in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edge_arc.keys().copied()
    }

    /// Slot where the edge ends.
    pub fn head(&self, label: usize) -> Option<Slot> {
        self.head.get(&label).copied()
    }

    /// Slot where the edge starts.
    pub fn tail(&self, label: usize) -> Option<Slot> {
        self.tail.get(&label).copied()
    }

    pub(crate) fn max_label(&self) -> usize {
        self.edge_arc.keys().next_back().copied().unwrap_or(0)
    }

    /// Closure of a braid drawn top to bottom. Letter `σ_i` is a positive
    /// crossing and `σ_i⁻¹` a negative one. Strands no letter touches become
    /// crossingless components.
    pub fn braid_closure(word: &BraidWord) -> Self {
        let n = word.degree();
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut next = n + 1;
        let mut crossings = Vec::with_capacity(word.len());
        for &l in word.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let (nw, ne) = (cur[i], cur[i + 1]);
            let (sw, se) = (next, next + 1);
            next += 2;
            crossings.push(if l > 0 {
                [nw, sw, se, ne]
            } else {
                [ne, nw, sw, se]
            });
            cur[i] = sw;
            cur[i + 1] = se;
        }
        let mut free = 0;
        for (p, &l) in cur.iter().enumerate() {
            if l == p + 1 {
                free += 1;
            } else {
                for x in crossings.iter_mut() {
                    for v in x.iter_mut() {
                        if *v == l {
                            *v = p + 1;
                        }
                    }
                }
            }
        }
        Self::new(crossings, free).expect("braid closures are valid diagrams")
    }

    /// Parses `X(a,b,c,d)` / `X[a,b,c,d]` and `O` tokens separated by
    /// whitespace or commas. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut crossings = Vec::new();
        let mut free = 0;
        let skip = |pos: &mut usize| {
            while *pos < bytes.len() {
                match bytes[*pos] {
                    b' ' | b'\t' | b'\r' | b'\n' | b',' | b';' => *pos += 1,
                    b'#' => {
                        while *pos < bytes.len() && bytes[*pos] != b'\n' {
                            *pos += 1;
                        }
                    }
                    _ => break,
                }
            }
        };
        loop {
            skip(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            match bytes[pos] {
                b'O' => {
                    free += 1;
                    pos += 1;
                }
                b'X' => {
                    pos += 1;
                    let close = match bytes.get(pos) {
                        Some(b'(') => b')',
                        Some(b'[') => b']',
                        _ => return Err(Error::parse(pos, "expected '(' or '[' after X")),
                    };
                    pos += 1;
                    let mut x = [0usize; 4];
                    for (k, slot) in x.iter_mut().enumerate() {
                        while bytes.get(pos) == Some(&b' ') {
                            pos += 1;
                        }
                        let start = pos;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        *slot = text[start..pos]
                            .parse()
                            .map_err(|_| Error::parse(start, "expected an arc label"))?;
                        while bytes.get(pos) == Some(&b' ') {
                            pos += 1;
                        }
                        let want = if k == 3 { close } else { b',' };
                        if bytes.get(pos) != Some(&want) {
                            return Err(Error::parse(pos, format!("expected '{}'", want as char)));
                        }
                        pos += 1;
                    }
                    crossings.push(x);
                }
                _ => return Err(Error::parse(pos, "expected 'X' or 'O'")),
            }
        }
        Self::new(crossings, free)
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x[0], x[1], x[2], x[3]))
            .collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.free_loops));
        f.write_str(&parts.join(" "))
    }
}

/// Built-in diagrams by name.
pub fn corpus() -> Vec<(&'static str, LinkDiagram)> {
    const SOURCES: [(&str, &str); 6] = [
        ("unknot", include_str!("../../data/pd/unknot.pd")),
        ("trefoil", include_str!("../../data/pd/trefoil.pd")),
        (
            "figure-eight",
            include_str!("../../data/pd/figure-eight.pd"),
        ),
        ("5_2", include_str!("../../data/pd/5_2.pd")),
        ("granny", include_str!("../../data/pd/granny.pd")),
        ("square", include_str!("../../data/pd/square.pd")),
    ];
    SOURCES
        .iter()
        .map(|&(name, text)| {
            (
                name,
                LinkDiagram::parse(text).expect("corpus diagrams are valid"),
            )
        })
        .collect()
}
