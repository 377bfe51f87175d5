use std::fmt;

use serde::{Deserialize, Serialize};

/// A freely reduced word in `x_1..x_rank` and their inverses.
///
/// Letters are signed 1-based generator indices: `3` is `x_3`, `-3` is `x_3⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    rank: u16,
    letters: Vec<i16>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank: rank as u16,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        FreeWord {
            rank: rank as u16,
            letters: vec![i as i16],
        }
    }

    /// Builds a word from signed letters, reducing freely.
    pub fn from_letters(rank: usize, letters: &[i16]) -> Self {
        let mut w = Self::identity(rank);
        for &l in letters {
            w.push(l);
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn letters(&self) -> &[i16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter, cancelling against the last one if inverse.
    pub fn push(&mut self, l: i16) {
        debug_assert!(l != 0 && l.unsigned_abs() <= self.rank);
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn append(&mut self, other: &FreeWord) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn append_inverse(&mut self, other: &FreeWord) {
        for &l in other.letters.iter().rev() {
            self.push(-l);
        }
    }

    pub fn inverse(&self) -> FreeWord {
        let mut out = Self::identity(self.rank());
        out.append_inverse(self);
        out
    }

    /// Image under the endomorphism sending `x_j` to `images[j-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = Self::identity(self.rank());
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out.append(img);
            } else {
                out.append_inverse(img);
            }
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("x{l}")
                } else {
                    format!("x{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
