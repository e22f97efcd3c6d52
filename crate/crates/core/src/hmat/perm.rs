use alloc::vec::Vec;
use core::fmt;

use super::QMatrix;
use crate::quat::Quaternion;
use crate::{Error, Result};

/// An element `w` of the symmetric group `S_n`, stored 0-based in one-line
/// notation: `image[j] = w(j)`.
///
/// Composition is `(v∘w)(j) = v(w(j))`, which makes
/// `P_{v∘w} = P_v·P_w` for the permutation matrix `(P_w)_{i,j} = δ_{i,w(j)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    /// From a 0-based one-line image.
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = alloc::vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(image));
            }
            seen[x] = true;
        }
        Ok(Self { image })
    }

    /// From a 1-based one-line image such as `[3, 1, 2]`.
    pub fn from_one_based(one_line: &[usize]) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(Error::InvalidPermutation(one_line.to_vec()));
        }
        Self::from_images(one_line.iter().map(|&x| x - 1).collect())
    }

    /// The adjacent transposition `s_r = (r, r+1)` in `S_n`, `r` 1-based.
    pub fn transposition(n: usize, r: usize) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::WordLetter { letter: r, n });
        }
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(r - 1, r);
        Ok(Self { image })
    }

    /// The longest element `[n, n-1, …, 1]`.
    pub fn longest(n: usize) -> Self {
        Self { image: (0..n).rev().collect() }
    }

    /// Composes a word of adjacent transpositions `s_{r_1}∘s_{r_2}∘…`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &r in word {
            w = w.compose(&Self::transposition(n, r)?);
        }
        Ok(w)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `w(j)` for 0-based `j`.
    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.image.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &x)| j == x)
    }

    /// `self∘other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "permutations of different degree");
        Self { image: other.image.iter().map(|&x| self.image[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut image = alloc::vec![0; self.n()];
        for (j, &x) in self.image.iter().enumerate() {
            image[x] = j;
        }
        Self { image }
    }

    /// Number of inversions, which equals the Coxeter length.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.image[a] > self.image[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `(a, b)` with `a < b` (0-based positions) is an inversion.
    #[inline]
    pub fn is_inversion(&self, a: usize, b: usize) -> bool {
        a < b && self.image[a] > self.image[b]
    }

    /// A reduced word `[r_1, …, r_m]` (1-based) with `w = s_{r_1}∘…∘s_{r_m}`
    /// and `m = length(w)`, found by bubble-sort descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut cur = self.clone();
        let mut letters = Vec::new();
        // Peel right descents: w = (w∘s_r)∘s_r with length(w∘s_r) = length(w) - 1.
        'outer: loop {
            for r in 0..cur.n().saturating_sub(1) {
                if cur.image[r] > cur.image[r + 1] {
                    cur.image.swap(r, r + 1);
                    letters.push(r + 1);
                    continue 'outer;
                }
            }
            break;
        }
        letters.reverse();
        letters
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> f64 {
        if self.length() % 2 == 0 { 1.0 } else { -1.0 }
    }

    /// The permutation matrix with `(P_w)_{i,j} = δ_{i,w(j)}`.
    pub fn matrix(&self) -> QMatrix {
        QMatrix::from_fn(self.n(), self.n(), |i, j| {
            if self.image[j] == i { Quaternion::ONE } else { Quaternion::ZERO }
        })
    }

    /// All permutations of `S_n` in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self { image: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (idx, x) in self.image.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        f.write_str("]")
    }
}
