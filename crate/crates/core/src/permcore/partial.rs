use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::PermError;
use crate::exactla::{Field, Matrix};

/// An `n × n` {0,1} matrix with at most one 1 in each row and column.
///
/// `image[j]` is the (1-based) row of the 1 in column `j + 1`, or 0 when that
/// column is zero. Full-rank instances are ordinary permutations in one-line
/// notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartialPermutationRepr", into = "PartialPermutationRepr")]
pub struct PartialPermutation {
    image: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PartialPermutationRepr {
    n: usize,
    image: Vec<usize>,
}

impl TryFrom<PartialPermutationRepr> for PartialPermutation {
    type Error = PermError;
    fn try_from(r: PartialPermutationRepr) -> Result<Self, PermError> {
        if r.image.len() != r.n {
            return Err(PermError::SizeMismatch { expected: r.n, found: r.image.len() });
        }
        PartialPermutation::new(r.image)
    }
}

impl From<PartialPermutation> for PartialPermutationRepr {
    fn from(w: PartialPermutation) -> Self {
        Self { n: w.n(), image: w.image }
    }
}

impl PartialPermutation {
    pub fn new(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for (j, &r) in image.iter().enumerate() {
            if r > n {
                return Err(PermError::OutOfRange { column: j + 1, value: r, n });
            }
            if r != 0 {
                if seen[r] {
                    return Err(PermError::Repeated { value: r });
                }
                seen[r] = true;
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (1..=n).collect() }
    }

    /// The longest element `w₀ = [n, n−1, …, 1]`.
    pub fn longest(n: usize) -> Self {
        Self { image: (1..=n).rev().collect() }
    }

    pub fn zero(n: usize) -> Self {
        Self { image: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Raw image, 0 for an empty column.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Row of the dot in column `j` (both 1-based).
    pub fn get(&self, j: usize) -> Option<usize> {
        match self.image[j - 1] {
            0 => None,
            r => Some(r),
        }
    }

    /// Column of the dot in row `i` (both 1-based).
    pub fn column_of(&self, i: usize) -> Option<usize> {
        self.image.iter().position(|&r| r == i).map(|c| c + 1)
    }

    pub fn rank(&self) -> usize {
        self.image.iter().filter(|&&r| r != 0).count()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.n()
    }

    fn require_full(&self) -> Result<(), PermError> {
        if self.is_full() {
            Ok(())
        } else {
            Err(PermError::NotFull(self.to_string()))
        }
    }

    /// Number of inversions; only meaningful for full permutations.
    pub fn length(&self) -> usize {
        let w = &self.image;
        (0..w.len())
            .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    pub fn inverse(&self) -> Result<Self, PermError> {
        self.require_full()?;
        let mut inv = vec![0; self.n()];
        for (j, &r) in self.image.iter().enumerate() {
            inv[r - 1] = j + 1;
        }
        Ok(Self { image: inv })
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.n() != other.n() {
            return Err(PermError::SizeMismatch { expected: self.n(), found: other.n() });
        }
        self.require_full()?;
        other.require_full()?;
        Ok(Self { image: other.image.iter().map(|&k| self.image[k - 1]).collect() })
    }

    /// The {0,1} matrix with entries at `(w(j), j)`.
    pub fn matrix<F: Field>(&self, field: &F) -> Matrix<F> {
        let n = self.n();
        let mut m = Matrix::zeros(field, n, n);
        for (j, &r) in self.image.iter().enumerate() {
            if r != 0 {
                m.set(r - 1, j, field.one());
            }
        }
        m
    }

    /// Every partial permutation of size `n`, ordered by rank then lexicographically.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for k in 0..=n {
            for cols in (0..n).combinations(k) {
                for rows in (1..=n).permutations(k) {
                    let mut image = vec![0; n];
                    for (&c, &r) in cols.iter().zip(&rows) {
                        image[c] = r;
                    }
                    out.push(Self { image });
                }
            }
        }
        out
    }

    /// Every permutation of size `n` in lexicographic order.
    pub fn all_full(n: usize) -> impl Iterator<Item = Self> {
        (1..=n).permutations(n).map(|image| Self { image })
    }
}

impl fmt::Display for PartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for r in &self.image {
                write!(f, "{r}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.image.iter().join(" "))
        }
    }
}

impl fmt::Debug for PartialPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for PartialPermutation {
    type Err = PermError;

    /// Accepts `"2 1 4 3"`, `"2,1,4,3"`, compact `"2143"` (single digits) or
    /// the JSON object `{"n": 4, "image": [2, 1, 4, 3]}`. 0 marks an empty column.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| PermError::Parse(e.to_string()));
        }
        let bad = |t: &str| PermError::Parse(format!("bad entry {t:?} in {s:?}"));
        let image: Vec<usize> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad(t)))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad(&c.to_string())))
                .collect::<Result<_, _>>()?
        };
        Self::new(image)
    }
}
