//! Permutations of `{1..d}`.
//!
//! Products are read left to right: `a.then(b)` applies `a` first and `b`
//! second, so a word `w = l1 l2 ... lk` evaluates to
//! `l1.then(l2)...then(lk)`. Conjugation `g⁻¹ a g` under this convention
//! relabels the cycles of `a` through `g`.

use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_DEGREE;

/// An element of the symmetric group `S_d`, `1 <= d <= MAX_DEGREE`.
///
/// Points are 1-based in every public method and in text form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

pub(crate) fn check_degree(d: usize) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&d) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(d))
    }
}

impl Permutation {
    /// Identity of `S_d`. Panics if `d` is outside `1..=MAX_DEGREE`.
    pub fn identity(d: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&d), "degree {d} out of range");
        let mut images = [0u8; MAX_DEGREE];
        for (i, slot) in images.iter_mut().enumerate() {
            *slot = i as u8;
        }
        Permutation {
            degree: d as u8,
            images,
        }
    }

    /// Builds a permutation from 1-based images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        check_degree(d)?;
        let mut seen = [false; MAX_DEGREE];
        let mut out = Self::identity(d);
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > d {
                return Err(Error::parse(i, format!("image {img} out of range 1..={d}")));
            }
            if seen[img - 1] {
                return Err(Error::parse(i, format!("image {img} repeated")));
            }
            seen[img - 1] = true;
            out.images[i] = (img - 1) as u8;
        }
        Ok(out)
    }

    /// The transposition `(i j)` in `S_d`.
    pub fn transposition(d: usize, i: usize, j: usize) -> Result<Self> {
        check_degree(d)?;
        for p in [i, j] {
            if p == 0 || p > d {
                return Err(Error::IndexOutOfRange { index: p, len: d });
            }
        }
        if i == j {
            return Err(Error::parse(0, "transposition needs two distinct points"));
        }
        let mut out = Self::identity(d);
        out.images.swap(i - 1, j - 1);
        Ok(out)
    }

    /// The adjacent transposition `τ_i = (i i+1)`.
    pub fn tau(d: usize, i: usize) -> Result<Self> {
        Self::transposition(d, i, i + 1)
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Image of the 1-based point `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.raw().iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images[..self.degree as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.raw().iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` first, then `other`. Panics on degree mismatch.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = *self;
        for i in 0..self.degree as usize {
            out.images[i] = other.images[self.images[i] as usize];
        }
        out
    }

    /// Checked product, `self` applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = *self;
        for i in 0..self.degree as usize {
            out.images[self.images[i] as usize] = i as u8;
        }
        out
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// Points not fixed, ascending.
    pub fn moved_points(&self) -> Vec<usize> {
        self.raw()
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_transposition(&self) -> bool {
        self.moved_points().len() == 2
    }

    /// The two moved points of a transposition, ascending.
    pub fn transposition_points(&self) -> Option<(usize, usize)> {
        match self.moved_points()[..] {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }

    /// All cycles including fixed points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cyc.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Number of cycles of `self` restricted to `points`, which must be a
    /// union of cycles.
    pub fn cycle_count_on(&self, points: &[usize]) -> usize {
        self.cycles()
            .into_iter()
            .filter(|c| points.contains(&c[0]))
            .count()
    }

    /// Sorted cycle lengths (a conjugacy invariant).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    /// Parses cycle notation such as `(1 2)(3 4)`, `(1,3)` or `()`, or a
    /// one-line image array such as `[2,1,3]`.
    pub fn parse(text: &str, d: usize) -> Result<Self> {
        check_degree(d)?;
        let t = text.trim();
        if t.starts_with('[') {
            return Self::parse_images(t, d);
        }
        let mut out = Self::identity(d);
        let bytes: Vec<char> = t.chars().collect();
        let mut i = 0;
        let mut saw_cycle = false;
        while i < bytes.len() {
            match bytes[i] {
                c if c.is_whitespace() => i += 1,
                '(' => {
                    saw_cycle = true;
                    let open = i;
                    i += 1;
                    let mut cyc: Vec<usize> = Vec::new();
                    loop {
                        while i < bytes.len() && (bytes[i].is_whitespace() || bytes[i] == ',') {
                            i += 1;
                        }
                        if i >= bytes.len() {
                            return Err(Error::parse(open, "unclosed cycle"));
                        }
                        if bytes[i] == ')' {
                            i += 1;
                            break;
                        }
                        let start = i;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        if start == i {
                            return Err(Error::parse(start, format!("unexpected '{}'", bytes[i])));
                        }
                        let s: String = bytes[start..i].iter().collect();
                        let p: usize = s.parse().map_err(|_| Error::parse(start, "bad integer"))?;
                        if p == 0 || p > d {
                            return Err(Error::parse(
                                start,
                                format!("point {p} out of range 1..={d}"),
                            ));
                        }
                        if cyc.contains(&p) {
                            return Err(Error::parse(
                                start,
                                format!("point {p} repeated in cycle"),
                            ));
                        }
                        cyc.push(p);
                    }
                    if cyc.len() > 1 {
                        let mut c = Self::identity(d);
                        for k in 0..cyc.len() {
                            c.images[cyc[k] - 1] = (cyc[(k + 1) % cyc.len()] - 1) as u8;
                        }
                        out = out.then(&c);
                    }
                }
                c => return Err(Error::parse(i, format!("unexpected '{c}'"))),
            }
        }
        if !saw_cycle && !t.is_empty() {
            return Err(Error::parse(0, "expected cycle notation"));
        }
        Ok(out)
    }

    fn parse_images(t: &str, d: usize) -> Result<Self> {
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::parse(t.len(), "expected ']'"))?;
        let mut imgs = Vec::new();
        let mut offset = 1;
        for tok in inner.split(',') {
            let lead = tok.len() - tok.trim_start().len();
            let v: usize = tok.trim().parse().map_err(|_| {
                Error::parse(offset + lead, format!("bad integer {:?}", tok.trim()))
            })?;
            imgs.push(v);
            offset += tok.len() + 1;
        }
        if imgs.len() != d {
            return Err(Error::parse(
                0,
                format!("expected {d} images, found {}", imgs.len()),
            ));
        }
        Self::from_images(&imgs)
    }

    /// One-line form `[2,1,3]`.
    pub fn to_one_line(&self) -> String {
        let parts: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
