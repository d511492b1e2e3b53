use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{PartialPermutation, PermError};

/// `r[i][j]` = number of dots in rows `i..=n`, columns `1..=j` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankMatrix {
    n: usize,
    entries: Vec<Vec<usize>>,
}

impl RankMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`; rows past `n` and column 0 read as 0.
    pub fn get(&self, i: usize, j: usize) -> usize {
        if i > self.n || j == 0 {
            0
        } else {
            self.entries[i - 1][j - 1]
        }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.entries
    }

    /// Entrywise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .flatten()
                .zip(other.entries.iter().flatten())
                .all(|(a, b)| a <= b)
    }
}

pub fn rank_matrix(w: &PartialPermutation) -> RankMatrix {
    let n = w.n();
    let mut entries = vec![vec![0; n]; n];
    for i in (1..=n).rev() {
        let mut acc = 0;
        for j in 1..=n {
            if w.get(j) == Some(i) {
                acc += 1;
            }
            let below = if i < n { entries[i][j - 1] } else { 0 };
            entries[i - 1][j - 1] = acc + below;
        }
    }
    RankMatrix { n, entries }
}

/// Boxes `(p, q)` left unshaded after shading everything above and to the
/// right of each dot. Dots themselves are never in the diagram.
pub fn diagram(w: &PartialPermutation) -> BTreeSet<(usize, usize)> {
    let n = w.n();
    let mut out = BTreeSet::new();
    for p in 1..=n {
        let dot_col = w.column_of(p);
        for q in 1..=n {
            let below_dot = match w.get(q) {
                None => true,
                Some(r) => r < p,
            };
            let left_of_dot = dot_col.map_or(true, |c| c > q);
            if below_dot && left_of_dot {
                out.insert((p, q));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EssentialCondition {
    pub row: usize,
    pub col: usize,
    pub rank: usize,
}

/// Northeast corners of the diagram, sorted by `(row, col)`.
pub fn essential_set(w: &PartialPermutation) -> Vec<EssentialCondition> {
    let d = diagram(w);
    let r = rank_matrix(w);
    d.iter()
        .filter(|&&(p, q)| {
            let above = p > 1 && d.contains(&(p - 1, q));
            let right = d.contains(&(p, q + 1));
            let diag = p > 1 && d.contains(&(p - 1, q + 1));
            !(above || right || diag)
        })
        .map(|&(p, q)| EssentialCondition { row: p, col: q, rank: r.get(p, q) })
        .collect()
}

/// The essential data `(p_i, q_i, r_i)` of a covexillary partial permutation,
/// with `p_i = row − 1`, `q_i = col`. Both sequences are weakly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CovexillaryData {
    n: usize,
    triples: Vec<(usize, usize, usize)>,
}

impl CovexillaryData {
    pub fn new(n: usize, triples: Vec<(usize, usize, usize)>) -> Result<Self, PermError> {
        for (k, &(p, q, r)) in triples.iter().enumerate() {
            if p >= n || q == 0 || q > n || r > q.min(n - p) {
                return Err(PermError::NotRealizable(format!("triple {k} = ({p}, {q}, {r}) is out of range for n = {n}")));
            }
        }
        for (a, b) in triples.iter().tuple_windows() {
            if (a.0, a.1) == (b.0, b.1) {
                return Err(PermError::NotRealizable(format!("repeated box (p, q) = ({}, {})", a.0, a.1)));
            }
            if a.0 > b.0 || a.1 > b.1 {
                return Err(PermError::NotCovexillary {
                    first: (a.0 + 1, a.1),
                    second: (b.0 + 1, b.1),
                });
            }
        }
        Ok(Self { n, triples })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of blocks; the triples are indexed `1..m`.
    pub fn m(&self) -> usize {
        self.triples.len() + 1
    }

    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    pub fn t(&self) -> Vec<usize> {
        self.triples.iter().map(|&(p, q, _)| p + q).collect()
    }

    /// Triples indexed `0..=m`: `(0,0,0)`, the data, then `(n, n, 0)`.
    pub fn padded(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.triples.len() + 2);
        out.push((0, 0, 0));
        out.extend_from_slice(&self.triples);
        out.push((self.n, self.n, 0));
        out
    }

    /// Same data as essential conditions.
    pub fn conditions(&self) -> Vec<EssentialCondition> {
        self.triples
            .iter()
            .map(|&(p, q, r)| EssentialCondition { row: p + 1, col: q, rank: r })
            .collect()
    }
}

pub fn covexillary_data(w: &PartialPermutation) -> Result<CovexillaryData, PermError> {
    let ess = essential_set(w);
    for (a, b) in ess.iter().tuple_windows() {
        if b.col < a.col {
            return Err(PermError::NotCovexillary { first: (a.row, a.col), second: (b.row, b.col) });
        }
    }
    CovexillaryData::new(w.n(), ess.iter().map(|e| (e.row - 1, e.col, e.rank)).collect())
}

pub fn is_covexillary(w: &PartialPermutation) -> bool {
    covexillary_data(w).is_ok()
}

/// First occurrence (1-based positions) of `pattern` in `w`, if any.
pub fn find_pattern(w: &PartialPermutation, pattern: &PartialPermutation) -> Option<Vec<usize>> {
    let (wi, pi) = (w.image(), pattern.image());
    let k = pi.len();
    if k > wi.len() {
        return None;
    }
    (0..wi.len()).combinations(k).find(|pos| {
        (0..k).all(|a| (a + 1..k).all(|b| (wi[pos[a]] < wi[pos[b]]) == (pi[a] < pi[b])))
    })
    .map(|pos| pos.into_iter().map(|p| p + 1).collect())
}

pub fn avoids_pattern(w: &PartialPermutation, pattern: &PartialPermutation) -> bool {
    find_pattern(w, pattern).is_none()
}

/// No `i < j < k < l` with `w(k) < w(l) < w(i) < w(j)`.
pub fn avoids_3412(w: &PartialPermutation) -> bool {
    let v = w.image();
    let n = v.len();
    for j in 1..n {
        for i in 0..j {
            if v[i] >= v[j] {
                continue;
            }
            for l in j + 2..n {
                if v[l] >= v[i] {
                    continue;
                }
                if (j + 1..l).any(|k| v[k] < v[l]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Entrywise comparison of rank matrices.
pub fn bruhat_leq(u: &PartialPermutation, w: &PartialPermutation) -> Result<bool, PermError> {
    if u.n() != w.n() {
        return Err(PermError::SizeMismatch { expected: w.n(), found: u.n() });
    }
    Ok(rank_matrix(u).le(&rank_matrix(w)))
}
