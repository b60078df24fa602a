//! Permutations in one-line notation.
//!
//! Points are 0-based internally: a permutation of degree `n` is a bijection
//! of `{0, .., n-1}`. The adjacent transposition `s_i` (1-based `i` in the
//! usual notation) is stored as index `i - 1` and swaps points `i - 1, i`.
//! Composition is right to left: `(a.compose(b))(x) = a(b(x))`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = alloc::vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.images[x];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based one-line notation.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvariantViolation(alloc::format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation, e.g. `[2, 1, 3]` for `(1,2)`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvariantViolation("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|x| x - 1).collect())
    }

    /// The transposition of 0-based points `a` and `b` in `S_n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// The adjacent transposition swapping 0-based points `i` and `i + 1`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = alloc::vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn inversions(&self) -> usize {
        let n = self.degree();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.images[i] > self.images[j]).count())
            .sum()
    }

    /// +1 or -1.
    pub fn sign(&self) -> i64 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The image of this permutation under `S_k ⊂ S_n`, acting on points
    /// `offset .. offset + k` and fixing the rest.
    pub fn embed(&self, offset: usize, n: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset + x;
        }
        Permutation { images }
    }

    /// A reduced word `[a_1, .., a_k]` of 0-based adjacent transposition
    /// indices with `self = s_{a_1} ∘ .. ∘ s_{a_k}`; its length is the
    /// number of inversions.
    pub fn factor_adjacent(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.inversions());
        let mut cur = self.images.clone();
        // Peel right descents: if cur(i) > cur(i+1) then cur = (cur s_i) s_i
        // with cur s_i one inversion shorter.
        while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
            cur.swap(i, i + 1);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// All permutations of degree `n` in lexicographic order of one-line
    /// notation.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// Compose a word of adjacent transpositions into a permutation.
pub fn compose_word(n: usize, word: &[usize]) -> Permutation {
    word.iter()
        .fold(Permutation::identity(n), |acc, &i| acc.compose(&Permutation::adjacent(n, i)))
}
