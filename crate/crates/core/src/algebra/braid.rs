//! Braid words and the braid word problem.
//!
//! Equality of braids is decided through the Artin action of `B_d` on the
//! free group `F_d`:
//!
//! ```text
//! σ_i   : x_i ↦ x_i x_{i+1} x_i⁻¹,   x_{i+1} ↦ x_i
//! σ_i⁻¹ : x_i ↦ x_{i+1},             x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
//! ```
//!
//! with all other generators fixed. A word `l1 l2 ... lk` acts by applying
//! `l1` first, matching the left-to-right product convention used for
//! permutations. The action is faithful, so the tuple of reduced images of
//! `x_1..x_d` is a complete invariant of the braid.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::algebra::free::FreeWord;
use crate::algebra::perm::{check_degree, Permutation};
use crate::error::{Error, Result};

/// Images of the free generators under a braid's Artin automorphism.
pub type Canonical = Vec<FreeWord>;

/// A word in `σ_1..σ_{d-1}` and inverses.
///
/// `PartialEq` and `Hash` are group equality: two words compare equal iff
/// they represent the same braid. Use [`BraidWord::letters`] for syntactic
/// comparison. The canonical form is computed once per value and cached.
#[derive(Clone)]
pub struct BraidWord {
    degree: u8,
    letters: Vec<i8>,
    canon: OnceLock<Arc<Canonical>>,
}

impl BraidWord {
    /// Identity braid on `d` strands.
    pub fn identity(d: usize) -> Self {
        assert!(
            (1..=crate::MAX_DEGREE).contains(&d),
            "degree {d} out of range"
        );
        BraidWord {
            degree: d as u8,
            letters: Vec::new(),
            canon: OnceLock::new(),
        }
    }

    /// `σ_i^sign`.
    pub fn generator(d: usize, i: usize, sign: i8) -> Result<Self> {
        Self::from_letters(d, &[i as i8 * sign.signum()])
    }

    /// Builds a word from signed generator indices (`-2` is `σ_2⁻¹`).
    /// The letters are kept as given.
    pub fn from_letters(d: usize, letters: &[i8]) -> Result<Self> {
        check_degree(d)?;
        for (pos, &l) in letters.iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize >= d {
                return Err(Error::parse(
                    pos,
                    format!(
                        "generator index {} out of range 1..={}",
                        l.unsigned_abs(),
                        d - 1
                    ),
                ));
            }
        }
        Ok(BraidWord {
            degree: d as u8,
            letters: letters.to_vec(),
            canon: OnceLock::new(),
        })
    }

    fn from_letters_unchecked(d: u8, letters: Vec<i8>) -> Self {
        BraidWord {
            degree: d,
            letters,
            canon: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Syntactic free reduction (cancels adjacent `σ_i σ_i⁻¹`).
    pub fn freely_reduced(&self) -> BraidWord {
        let mut out: Vec<i8> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        let w = Self::from_letters_unchecked(self.degree, out);
        if let Some(c) = self.canon.get() {
            let _ = w.canon.set(c.clone());
        }
        w
    }

    /// Product `self` then `other`, freely reduced. Panics on degree mismatch.
    pub fn then(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::from_letters_unchecked(self.degree, letters).freely_reduced()
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|&l| -l).collect();
        Self::from_letters_unchecked(self.degree, letters)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &BraidWord) -> BraidWord {
        g.inverse().then(self).then(g)
    }

    /// Sum of the letter signs.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Image under `B_d → S_d`, `σ_i ↦ τ_i`.
    pub fn project(&self) -> Permutation {
        let d = self.degree();
        let mut p = Permutation::identity(d);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            p = p.then(&Permutation::tau(d, i).expect("index checked at construction"));
        }
        p
    }

    /// Artin-action images `(x_1^w, ..., x_d^w)`, each freely reduced.
    pub fn canonical(&self) -> &Canonical {
        self.canon
            .get_or_init(|| Arc::new(artin_images(self.degree(), &self.letters)))
    }

    /// True iff both words represent the same braid.
    pub fn braid_eq(&self, other: &BraidWord) -> Result<bool> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.canonical() == other.canonical())
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
            || self
                .canonical()
                .iter()
                .enumerate()
                .all(|(j, w)| w.letters() == [(j + 1) as i16])
    }

    /// Parses tokens such as `s1 s2^-1 s3`. `e`, `1` or an empty string is
    /// the identity. Positions in errors are byte offsets.
    pub fn parse(text: &str, d: usize) -> Result<Self> {
        check_degree(d)?;
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in text.split(|c: char| c.is_whitespace() || c == '*') {
            let pos = offset;
            offset += tok.len() + 1;
            if tok.is_empty() || tok == "e" || tok == "1" {
                continue;
            }
            let body = tok
                .strip_prefix('s')
                .or_else(|| tok.strip_prefix('σ'))
                .ok_or_else(|| {
                    Error::parse(pos, format!("expected generator token, found {tok:?}"))
                })?;
            let (idx, pow) = match body.split_once('^') {
                Some((i, p)) => (i, p),
                None => (body, "1"),
            };
            let i: usize = idx
                .parse()
                .map_err(|_| Error::parse(pos, format!("bad generator index in {tok:?}")))?;
            if i == 0 || i >= d {
                return Err(Error::parse(
                    pos,
                    format!("generator index {i} out of range 1..={}", d - 1),
                ));
            }
            let p: i64 = pow
                .trim_start_matches('+')
                .parse()
                .map_err(|_| Error::parse(pos, format!("bad exponent in {tok:?}")))?;
            if p == 0 || p.unsigned_abs() > 64 {
                return Err(Error::parse(pos, format!("unsupported exponent {p}")));
            }
            for _ in 0..p.unsigned_abs() {
                letters.push(i as i8 * p.signum() as i8);
            }
        }
        Ok(Self::from_letters_unchecked(d as u8, letters))
    }
}

fn generator_images(d: usize, l: i8) -> Vec<FreeWord> {
    let mut imgs: Vec<FreeWord> = (1..=d).map(|j| FreeWord::generator(d, j)).collect();
    let i = l.unsigned_abs() as i16;
    let (xi, xj) = (i, i + 1);
    if l > 0 {
        imgs[xi as usize - 1] = FreeWord::from_letters(d, &[xi, xj, -xi]);
        imgs[xj as usize - 1] = FreeWord::generator(d, xi as usize);
    } else {
        imgs[xi as usize - 1] = FreeWord::generator(d, xj as usize);
        imgs[xj as usize - 1] = FreeWord::from_letters(d, &[-xj, xi, xj]);
    }
    imgs
}

fn artin_images(d: usize, letters: &[i8]) -> Canonical {
    let mut cur: Vec<FreeWord> = (1..=d).map(|j| FreeWord::generator(d, j)).collect();
    let mut table: HashMap<i8, Vec<FreeWord>> = HashMap::new();
    for &l in letters {
        let imgs = table.entry(l).or_insert_with(|| generator_images(d, l));
        for w in cur.iter_mut() {
            *w = w.substitute(imgs);
        }
    }
    cur
}

impl PartialEq for BraidWord {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.canonical() == other.canonical()
    }
}

impl Eq for BraidWord {}

impl Hash for BraidWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.canonical().hash(state);
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("s{l}")
                } else {
                    format!("s{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Outcome of the bounded test "is this braid a conjugate of some `σ_i^{±1}`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleCheck {
    /// `word = conjugator⁻¹ · σ_generator^sign · conjugator`.
    Simple {
        conjugator: BraidWord,
        generator: usize,
        sign: i8,
    },
    /// Certainly not a conjugate of a standard generator or its inverse.
    NotSimple,
    /// Necessary conditions hold but no conjugator within the length bound.
    Undetermined,
}

impl SimpleCheck {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimpleCheck::Simple { .. })
    }
}

/// Default conjugator length bound for [`simple_certificate`].
pub const DEFAULT_CONJUGATOR_BOUND: usize = 6;

/// All braids reachable from `start` by conjugation with at most `depth`
/// generator letters, keyed by the braid, each with a conjugator `c` such
/// that the braid equals `c⁻¹ · start · c`.
fn conjugation_ball(start: &BraidWord, depth: usize) -> HashMap<BraidWord, BraidWord> {
    let d = start.degree();
    let gens: Vec<BraidWord> = (1..d)
        .flat_map(|i| [i as i8, -(i as i8)])
        .map(|l| BraidWord::from_letters_unchecked(d as u8, vec![l]))
        .collect();
    let mut seen: HashMap<BraidWord, BraidWord> = HashMap::new();
    seen.insert(start.clone(), BraidWord::identity(d));
    let mut frontier = vec![(start.clone(), BraidWord::identity(d))];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (x, c) in &frontier {
            for g in &gens {
                let y = x.conjugate_by(g);
                if !seen.contains_key(&y) {
                    let cy = c.then(g);
                    seen.insert(y.clone(), cy.clone());
                    next.push((y, cy));
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Decides whether `w` is conjugate to some `σ_i^{±1}`, searching
/// conjugators of length at most `max_len`.
///
/// Rejects outright when the exponent sum is not `±1` or the projection is
/// not a transposition. The search meets in the middle: conjugates of `w`
/// up to length `⌈max_len/2⌉` against conjugates of each target up to
/// `⌊max_len/2⌋`.
pub fn simple_certificate(w: &BraidWord, max_len: usize) -> SimpleCheck {
    let e = w.exponent_sum();
    if e.abs() != 1 || !w.project().is_transposition() {
        return SimpleCheck::NotSimple;
    }
    let d = w.degree();
    let sign = e as i8;
    let left = conjugation_ball(w, max_len.div_ceil(2));
    let right_depth = max_len / 2;
    for i in 1..d {
        let target = BraidWord::from_letters_unchecked(d as u8, vec![i as i8 * sign]);
        if let Some(c) = left.get(&target) {
            // target = c⁻¹ w c  ⇒  w = (c⁻¹)⁻¹ target c⁻¹
            return SimpleCheck::Simple {
                conjugator: c.inverse(),
                generator: i,
                sign,
            };
        }
        if right_depth == 0 {
            continue;
        }
        for (y, c2) in conjugation_ball(&target, right_depth) {
            if let Some(c1) = left.get(&y) {
                // y = c1⁻¹ w c1 = c2⁻¹ t c2  ⇒  w = (c2 c1⁻¹)⁻¹ t (c2 c1⁻¹)
                return SimpleCheck::Simple {
                    conjugator: c2.then(&c1.inverse()),
                    generator: i,
                    sign,
                };
            }
        }
    }
    SimpleCheck::Undetermined
}
