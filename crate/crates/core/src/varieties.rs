//! Membership predicates and samplers for matrix, flag and Grassmannian
//! Schubert varieties, and location of the cell containing a point.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exactla::{Field, Matrix, Subspace};
use crate::permcore::{essential_set, rank_matrix, PartialPermutation};
use crate::{Error, Result};

/// A complete flag `F_1 ⊂ … ⊂ F_{n−1}`, `F_i` = span of the first `i`
/// columns of an invertible generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag<F: Field> {
    g: Matrix<F>,
}

impl<F: Field> Flag<F> {
    pub fn new(g: Matrix<F>) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::Size(format!("flag generator is {}x{}", g.rows(), g.cols())));
        }
        // first failing prefix names the member with the wrong dimension
        for i in 1..=g.cols() {
            if g.block(0, g.rows(), 0, i).rank() != i {
                return Err(Error::Invariant(format!("dim F_{i} != {i}")));
            }
        }
        Ok(Self { g })
    }

    /// The standard flag `E_•`.
    pub fn standard(field: &F, n: usize) -> Self {
        Self { g: Matrix::identity(field, n) }
    }

    /// `w E_•` for a full permutation `w`.
    pub fn of_permutation(field: &F, w: &PartialPermutation) -> Result<Self> {
        if !w.is_full() {
            return Err(Error::Invariant(format!("{w} is not a full permutation")));
        }
        Ok(Self { g: w.matrix(field) })
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn generator(&self) -> &Matrix<F> {
        &self.g
    }

    pub fn member(&self, i: usize) -> Subspace<F> {
        Subspace::column_span(&self.g.block(0, self.n(), 0, i))
    }

    /// `b F_•` for an invertible `b`.
    pub fn translate(&self, b: &Matrix<F>) -> Result<Self> {
        Self::new(b.mul(&self.g)?)
    }
}

/// Increasing `d`-sequence in `1..=N` indexing a Grassmannian Schubert cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassIndex {
    ambient: usize,
    seq: Vec<usize>,
}

impl GrassIndex {
    pub fn new(ambient: usize, seq: Vec<usize>) -> Result<Self> {
        if seq.windows(2).any(|w| w[0] >= w[1]) || seq.first().is_some_and(|&a| a == 0) || seq.last().is_some_and(|&b| b > ambient) {
            return Err(Error::Index(format!("{seq:?} is not strictly increasing in 1..={ambient}")));
        }
        Ok(Self { ambient, seq })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn d(&self) -> usize {
        self.seq.len()
    }
    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Dimension of the Schubert cell, `Σ u_i − i`.
    pub fn dim(&self) -> usize {
        self.seq.iter().enumerate().map(|(i, &u)| u - i - 1).sum()
    }

    /// Componentwise order, which is the containment order of Schubert varieties.
    pub fn le(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.d() == other.d() && self.seq.iter().zip(&other.seq).all(|(a, b)| a <= b)
    }

    /// The indices `i` (1-based) whose conditions are not implied by others:
    /// `u_{i+1} ≠ u_i + 1`, with `i = d` always kept.
    pub fn essential_positions(&self) -> Vec<usize> {
        let d = self.d();
        (1..=d).filter(|&i| i == d || self.seq[i] != self.seq[i - 1] + 1).collect()
    }

    /// The coordinate point `⟨e_{u_1}, …, e_{u_d}⟩`.
    pub fn fixed_point<F: Field>(&self, field: &F) -> Subspace<F> {
        let idx: Vec<usize> = self.seq.iter().map(|u| u - 1).collect();
        Subspace::coordinate(field, self.ambient, &idx)
    }
}

/// A failed rank condition `dim(x E_j / E_{i−1}) ≤ bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankViolation {
    pub i: usize,
    pub j: usize,
    pub rank: usize,
    pub bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionSet {
    /// Every `(i, j)`.
    Full,
    /// Only the essential boxes.
    Essential,
}

/// `dim(x E_j / E_{i−1})`: the rank of rows `i..=n`, columns `1..=j` of `x`.
pub fn sw_rank<F: Field>(x: &Matrix<F>, i: usize, j: usize) -> usize {
    if i > x.rows() || j == 0 {
        return 0;
    }
    x.block(i - 1, x.rows(), 0, j).rank()
}

fn check_square<F: Field>(x: &Matrix<F>, n: usize) -> Result<()> {
    if x.shape() != (n, n) {
        return Err(Error::Size(format!("expected {n}x{n}, got {}x{}", x.rows(), x.cols())));
    }
    Ok(())
}

/// First violated condition of the matrix Schubert variety `g_w`, if any.
pub fn matrix_schubert_violation<F: Field>(
    x: &Matrix<F>,
    w: &PartialPermutation,
    mode: ConditionSet,
) -> Result<Option<RankViolation>> {
    let n = w.n();
    check_square(x, n)?;
    let r = rank_matrix(w);
    let boxes: Vec<(usize, usize)> = match mode {
        ConditionSet::Full => (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect(),
        ConditionSet::Essential => essential_set(w).iter().map(|e| (e.row, e.col)).collect(),
    };
    for (i, j) in boxes {
        let bound = r.get(i, j);
        let rank = sw_rank(x, i, j);
        if rank > bound {
            return Ok(Some(RankViolation { i, j, rank, bound }));
        }
    }
    Ok(None)
}

pub fn in_matrix_schubert<F: Field>(x: &Matrix<F>, w: &PartialPermutation, mode: ConditionSet) -> Result<bool> {
    Ok(matrix_schubert_violation(x, w, mode)?.is_none())
}

pub fn flag_schubert_violation<F: Field>(flag: &Flag<F>, w: &PartialPermutation) -> Result<Option<RankViolation>> {
    if !w.is_full() {
        return Err(Error::Invariant(format!("{w} is not a full permutation")));
    }
    matrix_schubert_violation(flag.generator(), w, ConditionSet::Full)
}

/// `dim(F_j / E_{i−1}) ≤ r_w(i, j)` for all `i, j`.
pub fn in_flag_schubert<F: Field>(flag: &Flag<F>, w: &PartialPermutation) -> Result<bool> {
    Ok(flag_schubert_violation(flag, w)?.is_none())
}

/// `dim(V + E_k)`.
pub fn dim_plus_standard<F: Field>(v: &Subspace<F>, k: usize) -> usize {
    let b = v.basis_rows();
    k + b.block(0, b.rows(), k, b.cols()).rank()
}

/// A failed Grassmannian condition `dim(V + E_{u_i}) ≤ d + u_i − i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassViolation {
    pub i: usize,
    pub u: usize,
    pub dim: usize,
    pub bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrassConditions {
    All,
    /// Only `i ∈ S_u`; the others follow.
    Minimal,
}

pub fn grass_schubert_violation<F: Field>(
    v: &Subspace<F>,
    idx: &GrassIndex,
    mode: GrassConditions,
) -> Result<Option<GrassViolation>> {
    if v.ambient() != idx.ambient() || v.dim() != idx.d() {
        return Err(Error::Size(format!(
            "subspace of dim {} in {} against index of Gr({}, {})",
            v.dim(),
            v.ambient(),
            idx.d(),
            idx.ambient()
        )));
    }
    let positions: Vec<usize> = match mode {
        GrassConditions::All => (1..=idx.d()).collect(),
        GrassConditions::Minimal => idx.essential_positions(),
    };
    let d = idx.d();
    for i in positions {
        let u = idx.seq()[i - 1];
        let dim = dim_plus_standard(v, u);
        let bound = d + u - i;
        if dim > bound {
            return Ok(Some(GrassViolation { i, u, dim, bound }));
        }
    }
    Ok(None)
}

pub fn in_grass_schubert<F: Field>(v: &Subspace<F>, idx: &GrassIndex, mode: GrassConditions) -> Result<bool> {
    Ok(grass_schubert_violation(v, idx, mode)?.is_none())
}

/// The partial permutation whose `B × B` orbit contains `x`, read from the
/// second differences of its southwest rank function.
pub fn locate_matrix_cell<F: Field>(x: &Matrix<F>) -> Result<PartialPermutation> {
    let n = x.rows();
    check_square(x, n)?;
    let mut r = vec![vec![0usize; n + 1]; n + 2];
    for (i, row) in r.iter_mut().enumerate().take(n + 1).skip(1) {
        for (j, cell) in row.iter_mut().enumerate().skip(1) {
            *cell = sw_rank(x, i, j);
        }
    }
    let mut image = vec![0; n];
    for i in 1..=n {
        for j in 1..=n {
            if r[i][j] + r[i + 1][j - 1] > r[i + 1][j] + r[i][j - 1] {
                image[j - 1] = i;
            }
        }
    }
    Ok(PartialPermutation::new(image)?)
}

/// The permutation `w` with `F_• ∈ B w E_•`.
pub fn locate_flag_cell<F: Field>(flag: &Flag<F>) -> Result<PartialPermutation> {
    locate_matrix_cell(flag.generator())
}

/// The positions `j` with `dim(V + E_j) = dim(V + E_{j−1})`.
pub fn locate_grass_cell<F: Field>(v: &Subspace<F>) -> GrassIndex {
    let n = v.ambient();
    let mut prev = v.dim();
    let mut seq = Vec::with_capacity(v.dim());
    for j in 1..=n {
        let cur = dim_plus_standard(v, j);
        if cur == prev {
            seq.push(j);
        }
        prev = cur;
    }
    GrassIndex { ambient: n, seq }
}

/// `b_l · w · b_r` with fresh Borel samples.
pub fn sample_cell_point<F: Field, R: Rng + ?Sized>(field: &F, w: &PartialPermutation, rng: &mut R) -> Result<Matrix<F>> {
    let n = w.n();
    let bl = Matrix::random_borel(field, n, rng)?;
    let br = Matrix::random_borel(field, n, rng)?;
    Ok(bl.mul(&w.matrix(field))?.mul(&br)?)
}
