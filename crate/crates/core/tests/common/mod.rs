//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's algorithms.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

/// 0-based image table.
pub type P = Vec<u8>;

pub fn ident(d: usize) -> P {
    (0..d as u8).collect()
}

pub fn transp(d: usize, i: usize, j: usize) -> P {
    let mut p = ident(d);
    p.swap(i, j);
    p
}

/// `a` first, then `b`.
pub fn then(a: &P, b: &P) -> P {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inv(a: &P) -> P {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

/// `g⁻¹ a g`
pub fn conj(a: &P, g: &P) -> P {
    then(&then(&inv(g), a), g)
}

pub fn all_transpositions(d: usize) -> Vec<P> {
    let mut v = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            v.push(transp(d, i, j));
        }
    }
    v
}

pub fn is_closing(d: usize, s: &[P]) -> bool {
    s.iter().fold(ident(d), |acc, a| then(&acc, a)) == ident(d)
}

pub fn is_transitive(d: usize, s: &[P]) -> bool {
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for a in s {
            let y = a[x] as usize;
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// Every simple, closing, transitive tuple of transpositions of length `n`.
pub fn simple_closing_transitive(d: usize, n: usize) -> Vec<Vec<P>> {
    let ts = all_transpositions(d);
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if ts.is_empty() {
        return if n == 0 { vec![vec![]] } else { out };
    }
    loop {
        let s: Vec<P> = idx.iter().map(|&i| ts[i].clone()).collect();
        if is_closing(d, &s) && is_transitive(d, &s) {
            out.push(s);
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < ts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Full HC-orbit of `start` by breadth-first search, conjugating by all
/// adjacent transpositions.
pub fn hc_orbit(d: usize, start: &[P]) -> HashSet<Vec<P>> {
    let gens: Vec<P> = (0..d.saturating_sub(1))
        .map(|i| transp(d, i, i + 1))
        .collect();
    let mut seen = HashSet::new();
    let mut q = VecDeque::new();
    seen.insert(start.to_vec());
    q.push_back(start.to_vec());
    while let Some(x) = q.pop_front() {
        let mut next = Vec::new();
        for k in 0..x.len().saturating_sub(1) {
            let (a, b) = (&x[k], &x[k + 1]);
            let mut f = x.clone();
            f[k] = b.clone();
            f[k + 1] = conj(a, b);
            next.push(f);
            let mut g = x.clone();
            g[k] = conj(b, &inv(a));
            g[k + 1] = a.clone();
            next.push(g);
        }
        for g in &gens {
            next.push(x.iter().map(|a| conj(a, g)).collect());
        }
        for y in next {
            if seen.insert(y.clone()) {
                q.push_back(y);
            }
        }
    }
    seen
}

/// 1-based one-line notation for the library parser, e.g. `[2,1,3]`.
pub fn one_line(p: &P) -> String {
    let parts: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

pub struct Dsu(Vec<usize>);

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    pub fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    pub fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Euler characteristic per component of the surface obtained by gluing `d`
/// copies of the base polygon. The base sphere cut along arcs `e_1..e_n`
/// from the base point to the branch points is a disk whose boundary reads
/// `e_1^+ e_1^- e_2^+ e_2^- ...`; side `e_k^-` of sheet `i` is glued to side
/// `e_k^+` of sheet `a_k(i)`. Returns `(sheets, χ)` sorted by least sheet.
pub fn polygon_euler(d: usize, entries: &[P]) -> Vec<(Vec<usize>, i64)> {
    let n = entries.len();
    // vertices: corners c_k(i) for k in 0..n (c_n = c_0), tips t_k(i)
    let corner = |k: usize, i: usize| (k % n.max(1)) * d + i;
    let tip = |k: usize, i: usize| n * d + k * d + i;
    let mut verts = Dsu::new(2 * n * d + d);
    let mut faces = Dsu::new(d);
    for (k, a) in entries.iter().enumerate() {
        for (i, &j) in a.iter().enumerate() {
            let j = j as usize;
            verts.union(corner(k + 1, i), corner(k, j));
            verts.union(tip(k, i), tip(k, j));
            faces.union(i, j);
        }
    }
    let mut comps: std::collections::BTreeMap<usize, (Vec<usize>, i64)> = Default::default();
    for i in 0..d {
        let r = faces.find(i);
        let e = comps.entry(r).or_default();
        e.0.push(i + 1);
        e.1 += 1; // one face per sheet
        e.1 -= n as i64; // n glued edges per sheet
    }
    let mut seen = HashSet::new();
    for i in 0..d {
        let r = faces.find(i);
        let mut vs: Vec<usize> = (0..n).map(|k| corner(k, i)).collect();
        vs.extend((0..n).map(|k| tip(k, i)));
        if n == 0 {
            // an uncut sphere sheet: one face, no edges, count it as a sphere
            comps.get_mut(&r).unwrap().1 += 1;
            continue;
        }
        for v in vs {
            let c = verts.find(v);
            if seen.insert(c) {
                comps.get_mut(&r).unwrap().1 += 1;
            }
        }
    }
    let mut out: Vec<_> = comps.into_values().collect();
    out.sort();
    out
}

pub mod charts;
pub mod links;
