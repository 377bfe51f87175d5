use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::color::{act, transpositions, unact};
use super::{solve, LinkDiagram, Pd, PermColoring, SimpleColoring, Slot};
use crate::algebra::{BraidWord, Permutation};
use crate::dsu::Dsu;
use crate::error::{Error, Result};

/// A tangle in a disk. `boundary` lists the label at each boundary point in
/// counterclockwise order. A label occurring twice in `boundary` and never
/// in `crossings` is a crossingless strand between those two points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tangle {
    pub crossings: Vec<Pd>,
    pub boundary: Vec<usize>,
}

/// A disk in a diagram: the crossings inside it and the slots where its
/// boundary cuts edges, counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    pub crossings: Vec<usize>,
    pub boundary: Vec<Slot>,
}

impl Tangle {
    pub fn validate(&self) -> Result<()> {
        let mut inner: BTreeMap<usize, usize> = BTreeMap::new();
        for x in &self.crossings {
            for &l in x {
                *inner.entry(l).or_default() += 1;
            }
        }
        let mut outer: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in &self.boundary {
            *outer.entry(l).or_default() += 1;
        }
        let labels: BTreeSet<usize> = inner.keys().chain(outer.keys()).copied().collect();
        for l in labels {
            let (i, o) = (
                inner.get(&l).copied().unwrap_or(0),
                outer.get(&l).copied().unwrap_or(0),
            );
            if !matches!((i, o), (2, 0) | (1, 1) | (0, 2)) {
                return Err(Error::InvalidDiagram(format!(
                    "tangle label {l} occurs {i} times in crossings and {o} times on the boundary"
                )));
            }
        }
        Ok(())
    }

    /// The tangle cut out of `dg` by `site`, with the original labels. An
    /// edge cut at both ends gets a fresh label at its second boundary point.
    pub fn from_site(dg: &LinkDiagram, site: &Site) -> Result<Tangle> {
        let cut = classify(dg, site)?;
        let mut crossings: Vec<Pd> = site.crossings.iter().map(|&c| dg.crossings()[c]).collect();
        let mut boundary = Vec::new();
        let mut fresh = dg.max_label();
        let mut seen = BTreeSet::new();
        for (i, &(c, s)) in site.boundary.iter().enumerate() {
            let l = cut[i];
            if seen.insert(l) {
                boundary.push(l);
            } else {
                fresh += 1;
                let k = site.crossings.iter().position(|&x| x == c).unwrap();
                crossings[k][s] = fresh;
                boundary.push(fresh);
            }
        }
        Ok(Tangle {
            crossings,
            boundary,
        })
    }

    /// Propagates transposition colors from the given boundary points
    /// through the tangle. Transpositions are involutions, so strand
    /// orientations do not matter. Returns the colors at every boundary
    /// point, or `None` on a conflict or if some point stays uncolored.
    pub fn boundary_colors(&self, fixed: &[(usize, Permutation)]) -> Option<Vec<Permutation>> {
        let labels: Vec<usize> = self
            .crossings
            .iter()
            .flatten()
            .chain(&self.boundary)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let idx: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut dsu = Dsu::new(labels.len());
        for x in &self.crossings {
            dsu.union(idx[&x[1]], idx[&x[3]]);
        }
        let arc = |l: usize, dsu: &mut Dsu| dsu.find(idx[&l]);
        let mut color: BTreeMap<usize, Permutation> = BTreeMap::new();
        for &(pos, p) in fixed {
            let a = arc(self.boundary[pos], &mut dsu);
            if color.insert(a, p).is_some_and(|q| q != p) {
                return None;
            }
        }
        loop {
            let mut changed = false;
            for x in &self.crossings {
                let (u, o, v) = (
                    arc(x[0], &mut dsu),
                    arc(x[1], &mut dsu),
                    arc(x[2], &mut dsu),
                );
                let Some(&oc) = color.get(&o) else { continue };
                match (color.get(&u).copied(), color.get(&v).copied()) {
                    (Some(a), Some(b)) if a.conjugate_by(&oc) != b => return None,
                    (Some(a), None) => {
                        color.insert(v, a.conjugate_by(&oc));
                        changed = true;
                    }
                    (None, Some(b)) => {
                        color.insert(u, b.conjugate_by(&oc));
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        self.boundary
            .iter()
            .map(|&l| color.get(&arc(l, &mut dsu)).copied())
            .collect()
    }
}

/// A two-string tangle of `half_twists` crossings of sign `sign`, as drawn
/// by [`LinkDiagram::braid_closure`] for the word `σ_1^{sign·half_twists}`.
/// Boundary order: top left, bottom left, bottom right, top right.
/// Zero half-twists gives the flat tangle of two parallel strands.
pub fn twist_tangle(half_twists: usize, sign: i8) -> Tangle {
    let (mut nw, mut ne) = (1, 2);
    let mut crossings = Vec::with_capacity(half_twists);
    for j in 0..half_twists {
        let (sw, se) = (2 * j + 3, 2 * j + 4);
        crossings.push(if sign > 0 {
            [nw, sw, se, ne]
        } else {
            [ne, nw, sw, se]
        });
        nw = sw;
        ne = se;
    }
    if half_twists == 0 {
        return Tangle {
            crossings,
            boundary: vec![1, 1, 2, 2],
        };
    }
    Tangle {
        crossings,
        boundary: vec![1, nw, ne, 2],
    }
}

pub fn flat_tangle() -> Tangle {
    twist_tangle(0, 1)
}

/// The three-half-twist tangle and the flat tangle, after checking that
/// both carry the same boundary colors for every pair of top colors in
/// `S_d` that are equal or do not commute.
pub fn montesinos_pair(d: usize, sign: i8) -> Result<(Tangle, Tangle)> {
    let twist = twist_tangle(3, sign);
    let flat = flat_tangle();
    let ts = transpositions(d);
    for &x in &ts {
        for &y in &ts {
            if x != y && x.then(&y) == y.then(&x) {
                continue;
            }
            let fixed = [(0, x), (3, y)];
            let (a, b) = (twist.boundary_colors(&fixed), flat.boundary_colors(&fixed));
            if a.is_none() || a != b {
                return Err(Error::BoundaryMismatch(format!(
                    "top colors {x}, {y}: twist gives {a:?}, flat gives {b:?}"
                )));
            }
        }
    }
    Ok((twist, flat))
}

/// The site of `len` consecutive letters starting at `start` in the closure
/// of `word` built by [`LinkDiagram::braid_closure`]. The letters must all
/// be the same generator with the same sign.
pub fn braid_twist_site(word: &BraidWord, start: usize, len: usize) -> Result<Site> {
    let letters = word.letters();
    if len == 0 || start + len > letters.len() {
        return Err(Error::IndexOutOfRange {
            index: start + len,
            len: letters.len(),
        });
    }
    let l = letters[start];
    if letters[start..start + len].iter().any(|&x| x != l) {
        return Err(Error::BoundaryMismatch(
            "letters of a twist site must coincide".into(),
        ));
    }
    let (first, last) = (start, start + len - 1);
    // slots of NW, SW, SE, NE in the crossing pattern of the closure
    let [nw, sw, se, ne] = if l > 0 { [0, 1, 2, 3] } else { [1, 2, 3, 0] };
    Ok(Site {
        crossings: (first..=last).collect(),
        boundary: vec![(first, nw), (last, sw), (last, se), (first, ne)],
    })
}

fn occurrence_map(dg: &LinkDiagram) -> BTreeMap<usize, Vec<Slot>> {
    let mut occ: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
    for (c, x) in dg.crossings().iter().enumerate() {
        for (s, &l) in x.iter().enumerate() {
            occ.entry(l).or_default().push((c, s));
        }
    }
    occ
}

/// Labels of the edges cut at the site's boundary points.
fn classify(dg: &LinkDiagram, site: &Site) -> Result<Vec<usize>> {
    let n = dg.crossing_count();
    let inside: BTreeSet<usize> = site.crossings.iter().copied().collect();
    if inside.is_empty() || inside.len() != site.crossings.len() || inside.iter().any(|&c| c >= n) {
        return Err(Error::BoundaryMismatch(
            "site needs distinct crossings of the diagram".into(),
        ));
    }
    let points: BTreeSet<Slot> = site.boundary.iter().copied().collect();
    if points.len() != site.boundary.len()
        || points.iter().any(|&(c, s)| !inside.contains(&c) || s > 3)
    {
        return Err(Error::BoundaryMismatch(
            "boundary points must be distinct slots of site crossings".into(),
        ));
    }
    let occ = occurrence_map(dg);
    for &c in &inside {
        for (s, &l) in dg.crossings()[c].iter().enumerate() {
            let o = if occ[&l][0] == (c, s) {
                occ[&l][1]
            } else {
                occ[&l][0]
            };
            let here = points.contains(&(c, s));
            let there = points.contains(&o);
            let ok = if inside.contains(&o.0) {
                here == there
            } else {
                here
            };
            if !ok {
                return Err(Error::BoundaryMismatch(format!(
                    "edge {l} crosses the site boundary without a boundary point"
                )));
            }
        }
    }
    Ok(site
        .boundary
        .iter()
        .map(|&(c, s)| dg.crossings()[c][s])
        .collect())
}

/// Where a label of the old diagram or of the tangle ended up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Edge(usize),
    Loop(usize),
}

struct Replaced {
    diagram: LinkDiagram,
    old: BTreeMap<usize, Target>,
    local: BTreeMap<usize, Target>,
}

impl Replaced {
    fn arc(&self, t: Target) -> usize {
        match t {
            Target::Edge(l) => self.diagram.arc_of(l).expect("edge exists"),
            Target::Loop(k) => self.diagram.arc_count() - self.diagram.free_loops() + k,
        }
    }
}

fn replace(dg: &LinkDiagram, site: &Site, tangle: &Tangle) -> Result<Replaced> {
    tangle.validate()?;
    if tangle.boundary.len() != site.boundary.len() {
        return Err(Error::BoundaryMismatch(format!(
            "site has {} boundary points, tangle has {}",
            site.boundary.len(),
            tangle.boundary.len()
        )));
    }
    let cut = classify(dg, site)?;
    let inside: BTreeSet<usize> = site.crossings.iter().copied().collect();

    // tokens: old labels kept outside the site, then tangle labels
    let mut kept: BTreeSet<usize> = BTreeSet::new();
    for (c, x) in dg.crossings().iter().enumerate() {
        if !inside.contains(&c) {
            kept.extend(x.iter().copied());
        }
    }
    kept.extend(cut.iter().copied());
    let local: BTreeSet<usize> = tangle
        .crossings
        .iter()
        .flatten()
        .chain(&tangle.boundary)
        .copied()
        .collect();
    let old_idx: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let local_idx: BTreeMap<usize, usize> = local
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, kept.len() + i))
        .collect();
    let mut dsu = Dsu::new(kept.len() + local.len());
    for (i, k) in cut.iter().enumerate() {
        dsu.union(old_idx[k], local_idx[&tangle.boundary[i]]);
    }

    // representative label of every class
    let mut fresh = dg
        .max_label()
        .max(local.iter().next_back().copied().unwrap_or(0));
    let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
    for (&l, &i) in &old_idx {
        rep.entry(dsu.find(i)).or_insert(l);
    }
    for (&l, &i) in &local_idx {
        let r = dsu.find(i);
        rep.entry(r).or_insert_with(|| {
            if kept.contains(&l) {
                fresh += 1;
                fresh
            } else {
                l
            }
        });
    }
    let old_label = |l: usize, dsu: &mut Dsu| rep[&dsu.find(old_idx[&l])];
    let local_label = |l: usize, dsu: &mut Dsu| rep[&dsu.find(local_idx[&l])];

    let mut placed: Vec<Pd> = tangle
        .crossings
        .iter()
        .map(|x| x.map(|l| local_label(l, &mut dsu)))
        .collect::<Vec<_>>();
    let mut site_positions: Vec<usize> = inside.iter().copied().collect();
    site_positions.sort_unstable();
    let last_site = *site_positions.last().unwrap();
    let mut crossings = Vec::new();
    let mut queue = placed.drain(..);
    for (c, x) in dg.crossings().iter().enumerate() {
        if inside.contains(&c) {
            if let Some(t) = queue.next() {
                crossings.push(t);
            }
            if c == last_site {
                crossings.extend(queue.by_ref());
            }
        } else {
            crossings.push(x.map(|l| old_label(l, &mut dsu)));
        }
    }
    drop(queue);

    let used: BTreeSet<usize> = crossings.iter().flatten().copied().collect();
    let mut loops: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in rep.values() {
        if !used.contains(&v) {
            let k = dg.free_loops() + loops.len();
            loops.insert(v, k);
        }
    }
    let target = |v: usize| match loops.get(&v) {
        Some(&k) => Target::Loop(k),
        None => Target::Edge(v),
    };
    let old = kept
        .iter()
        .map(|&l| (l, target(old_label(l, &mut dsu))))
        .collect();
    let local = local
        .iter()
        .map(|&l| (l, target(local_label(l, &mut dsu))))
        .collect();
    let diagram = LinkDiagram::reoriented(crossings, dg.free_loops() + loops.len())?;
    Ok(Replaced {
        diagram,
        old,
        local,
    })
}

/// Replaces the tangle inside `site` by `tangle`, matching boundary points
/// in order. Labels outside the site are preserved.
pub fn replace_tangle(dg: &LinkDiagram, site: &Site, tangle: &Tangle) -> Result<LinkDiagram> {
    Ok(replace(dg, site, tangle)?.diagram)
}

/// Tangle replacement carrying a transposition coloring along. Arcs outside
/// the site keep their colors; `tangle_colors` may prescribe colors of
/// tangle labels; the remaining arcs are forced by the crossing relations.
pub fn montesinos_replace(
    dg: &LinkDiagram,
    coloring: &PermColoring,
    site: &Site,
    tangle: &Tangle,
    tangle_colors: &BTreeMap<usize, Permutation>,
) -> Result<(LinkDiagram, PermColoring)> {
    if let Some(c) = super::check_coloring(dg, coloring.assignment()) {
        return Err(Error::InvalidColoring(format!(
            "relation fails at crossing {}",
            c + 1
        )));
    }
    let r = replace(dg, site, tangle)?;
    let d = coloring.degree();
    let mut init: Vec<Option<Permutation>> = vec![None; r.diagram.arc_count()];
    let mut fix = |arc: usize, p: Permutation, what: String| -> Result<()> {
        match init[arc] {
            Some(q) if q != p => Err(Error::BoundaryMismatch(format!("{what}: {p} against {q}"))),
            _ => {
                init[arc] = Some(p);
                Ok(())
            }
        }
    };
    for (&l, &t) in &r.old {
        let p = coloring.assignment()[dg.arc_of(l).expect("old edge")];
        fix(r.arc(t), p, format!("edge {l}"))?;
    }
    let old_loops = dg.arc_count() - dg.free_loops();
    for k in 0..dg.free_loops() {
        fix(
            r.arc(Target::Loop(k)),
            coloring.assignment()[old_loops + k],
            format!("loop {k}"),
        )?;
    }
    for (&l, &p) in tangle_colors {
        let t = *r
            .local
            .get(&l)
            .ok_or_else(|| Error::BoundaryMismatch(format!("tangle has no label {l}")))?;
        if p.degree() != d || !p.is_transposition() {
            return Err(Error::InvalidColoring(format!(
                "tangle label {l}: {p} is not a transposition of S_{d}"
            )));
        }
        fix(r.arc(t), p, format!("tangle label {l}"))?;
    }
    let ts = transpositions(d);
    let out = solve(
        &r.diagram,
        init,
        &|_, _| ts.clone(),
        &act::<Permutation>,
        &unact::<Permutation>,
        1,
        u64::MAX,
    );
    let Some(sol) = out.solutions.into_iter().next() else {
        return Err(Error::BoundaryMismatch(
            "no coloring of the replacement agrees with the boundary colors".into(),
        ));
    };
    let c = SimpleColoring::new(&r.diagram, d, sol)?;
    Ok((r.diagram, c))
}

/// Adds a curl on `edge`. `kind` selects the crossing pattern:
/// 0 and 1 pass under first, 2 and 3 pass over first; odd kinds are
/// positive crossings.
pub fn r1_add(dg: &LinkDiagram, edge: usize, kind: u8) -> Result<LinkDiagram> {
    let (hc, hs) = dg
        .head(edge)
        .ok_or_else(|| Error::InvalidDiagram(format!("no edge {edge}")))?;
    let (f, g) = (dg.max_label() + 1, dg.max_label() + 2);
    let mut crossings = dg.crossings().to_vec();
    crossings[hc][hs] = g;
    crossings.push(match kind % 4 {
        0 => [edge, f, f, g],
        1 => [edge, g, f, f],
        2 => [f, edge, g, f],
        _ => [f, f, g, edge],
    });
    LinkDiagram::new(crossings, dg.free_loops())
}

/// Removes a curl at crossing `c`.
pub fn r1_remove(dg: &LinkDiagram, c: usize) -> Result<LinkDiagram> {
    let x = *dg
        .crossings()
        .get(c)
        .ok_or_else(|| Error::MoveNotApplicable(format!("no crossing {}", c + 1)))?;
    let s = (0..4)
        .find(|&s| x[s] == x[(s + 1) % 4])
        .ok_or_else(|| Error::MoveNotApplicable(format!("crossing {} is not a curl", c + 1)))?;
    let site = Site {
        crossings: vec![c],
        boundary: vec![(c, (s + 2) % 4), (c, (s + 3) % 4)],
    };
    let strand = Tangle {
        crossings: Vec::new(),
        boundary: vec![1, 1],
    };
    replace_tangle(dg, &site, &strand)
}

/// Pushes a finger of `over` across `under` through a face they share,
/// creating two crossings of opposite sign.
pub fn r2_add(dg: &LinkDiagram, over: usize, under: usize) -> Result<LinkDiagram> {
    if over == under {
        return Err(Error::MoveNotApplicable("edges must differ".into()));
    }
    let missing = |l| Error::InvalidDiagram(format!("no edge {l}"));
    let (el, er) = dg.edge_faces(over).ok_or_else(|| missing(over))?;
    let (fl, fr) = dg.edge_faces(under).ok_or_else(|| missing(under))?;
    // the shared face lies below `over` and above `under` in the local
    // picture; each edge runs left to right when it keeps the face on
    // the matching side
    let (e_lr, f_lr) = if er == fl {
        (true, true)
    } else if er == fr {
        (true, false)
    } else if el == fl {
        (false, true)
    } else if el == fr {
        (false, false)
    } else {
        return Err(Error::MoveNotApplicable(format!(
            "edges {over} and {under} share no face"
        )));
    };
    let m = dg.max_label();
    let (e_head, e_mid, f_head, f_mid) = (m + 1, m + 2, m + 3, m + 4);
    let (e_left, e_right) = if e_lr { (over, e_head) } else { (e_head, over) };
    let (f_left, f_right) = if f_lr {
        (under, f_head)
    } else {
        (f_head, under)
    };
    let mut crossings = dg.crossings().to_vec();
    let (c, s) = dg.head(over).unwrap();
    crossings[c][s] = e_head;
    let (c, s) = dg.head(under).unwrap();
    crossings[c][s] = f_head;
    // counterclockwise from west: west, south, east, north
    let start = |ccw: [usize; 4]| {
        let mut x = ccw;
        if !f_lr {
            x.rotate_left(2);
        }
        x
    };
    crossings.push(start([f_left, e_mid, f_mid, e_left]));
    crossings.push(start([f_mid, e_mid, f_right, e_right]));
    LinkDiagram::new(crossings, dg.free_loops())
}

/// Removes a bigon between crossings `a` and `b` whose over-edge and
/// under-edge both join `a` to `b`.
pub fn r2_remove(dg: &LinkDiagram, a: usize, b: usize) -> Result<LinkDiagram> {
    let n = dg.crossing_count();
    let na = || {
        Error::MoveNotApplicable(format!(
            "crossings {} and {} bound no removable bigon",
            a + 1,
            b + 1
        ))
    };
    if a == b || a >= n || b >= n {
        return Err(na());
    }
    let (xa, xb) = (dg.crossings()[a], dg.crossings()[b]);
    let shared = |parity: usize| -> Option<(usize, usize)> {
        (0..4).filter(|s| s % 2 == parity).find_map(|s| {
            (0..4)
                .filter(|t| t % 2 == parity)
                .find(|&t| xb[t] == xa[s])
                .map(|t| (s, t))
        })
    };
    let (go_a, go_b) = shared(1).ok_or_else(na)?;
    let (gu_a, gu_b) = shared(0).ok_or_else(na)?;
    let corner = |x: usize, s: usize, t: usize| -> Option<Slot> {
        if (s + 1) % 4 == t {
            Some((x, s))
        } else if (t + 1) % 4 == s {
            Some((x, t))
        } else {
            None
        }
    };
    let ca = corner(a, go_a, gu_a).ok_or_else(na)?;
    let cb = corner(b, go_b, gu_b).ok_or_else(na)?;
    if !dg
        .faces()
        .iter()
        .any(|f| f.len() == 2 && f.contains(&ca) && f.contains(&cb))
    {
        return Err(na());
    }
    let site = Site {
        crossings: vec![a, b],
        boundary: vec![
            (a, (go_a + 2) % 4),
            (b, (go_b + 2) % 4),
            (b, (gu_b + 2) % 4),
            (a, (gu_a + 2) % 4),
        ],
    };
    let strands = Tangle {
        crossings: Vec::new(),
        boundary: vec![1, 1, 2, 2],
    };
    replace_tangle(dg, &site, &strands)
}

#[cfg(test)]
mod tests {
    use super::super::enumerate_simple_colorings;
    use super::*;

    fn count(dg: &LinkDiagram, d: usize) -> usize {
        enumerate_simple_colorings(dg, d).unwrap().len()
    }

    #[test]
    fn montesinos_pair_registers() {
        for d in 2..=5 {
            for sign in [1, -1] {
                montesinos_pair(d, sign).unwrap();
            }
        }
    }

    #[test]
    fn montesinos_move_on_a_closure() {
        let w = BraidWord::parse("s1 s1 s1 s2", 3).unwrap();
        let dg = LinkDiagram::braid_closure(&w);
        let site = braid_twist_site(&w, 0, 3).unwrap();
        let (_, flat) = montesinos_pair(3, 1).unwrap();
        for e in enumerate_simple_colorings(&dg, 3).unwrap() {
            let (nd, nc) =
                montesinos_replace(&dg, &e.coloring, &site, &flat, &BTreeMap::new()).unwrap();
            assert_eq!(nd.crossing_count(), dg.crossing_count() - 3);
            assert!(super::super::check_coloring(&nd, nc.assignment()).is_none());
        }
    }

    #[test]
    fn replacing_a_site_by_itself_is_the_identity() {
        let w = BraidWord::parse("s1 s1 s1 s2", 3).unwrap();
        let dg = LinkDiagram::braid_closure(&w);
        let site = braid_twist_site(&w, 0, 3).unwrap();
        let t = Tangle::from_site(&dg, &site).unwrap();
        let c = enumerate_simple_colorings(&dg, 3)
            .unwrap()
            .pop()
            .unwrap()
            .coloring;
        let (nd, nc) = montesinos_replace(&dg, &c, &site, &t, &BTreeMap::new()).unwrap();
        assert_eq!(nd, dg);
        assert_eq!(nc, c);
    }

    #[test]
    fn mismatched_colors_are_rejected() {
        let w = BraidWord::parse("s1 s1 s1 s2", 3).unwrap();
        let dg = LinkDiagram::braid_closure(&w);
        let site = braid_twist_site(&w, 0, 3).unwrap();
        let c = enumerate_simple_colorings(&dg, 3)
            .unwrap()
            .into_iter()
            .find(|e| e.surjective)
            .unwrap()
            .coloring;
        let flat = flat_tangle();
        let top_left = c.assignment()[dg.arc_of(dg.crossings()[0][0]).unwrap()];
        let wrong = transpositions(3)
            .into_iter()
            .find(|&p| p != top_left)
            .unwrap();
        let colors = BTreeMap::from([(1, wrong)]);
        assert!(matches!(
            montesinos_replace(&dg, &c, &site, &flat, &colors),
            Err(Error::BoundaryMismatch(_))
        ));
        let short = Tangle {
            crossings: vec![],
            boundary: vec![1, 1],
        };
        assert!(matches!(
            replace_tangle(&dg, &site, &short),
            Err(Error::BoundaryMismatch(_))
        ));
    }

    #[test]
    fn reidemeister_moves_round_trip() {
        let t = LinkDiagram::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        for kind in 0..4 {
            let k = r1_add(&t, 2, kind).unwrap();
            assert_eq!(k.crossing_count(), 4);
            assert_eq!(
                k.crossing_data()[3].sign,
                if kind % 2 == 1 { 1 } else { -1 }
            );
            assert_eq!(count(&k, 3), 9);
            let back = r1_remove(&k, 3).unwrap();
            assert_eq!(back.crossing_count(), 3);
            assert_eq!(count(&back, 3), 9);
        }
        let mut tried = 0;
        for e in t.edges().collect::<Vec<_>>() {
            for f in t.edges().collect::<Vec<_>>() {
                let Ok(k) = r2_add(&t, e, f) else { continue };
                tried += 1;
                assert_eq!(k.crossing_count(), 5);
                let s: Vec<i8> = k.crossing_data()[3..].iter().map(|c| c.sign).collect();
                assert_eq!(s[0] + s[1], 0);
                assert_eq!(count(&k, 3), 9);
                let back = r2_remove(&k, 3, 4).unwrap();
                assert_eq!(back.crossing_count(), 3);
                assert_eq!(count(&back, 3), 9);
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn curl_on_its_own_removes_to_a_circle() {
        let k = LinkDiagram::parse("X(1,2,2,1)").unwrap();
        let u = r1_remove(&k, 0).unwrap();
        assert_eq!((u.crossing_count(), u.free_loops()), (0, 1));
    }
}
