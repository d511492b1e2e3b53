//! Conormal varieties of covexillary Schubert varieties: rank-condition
//! membership in matrix, flag and Grassmannian form, the maps relating the
//! three cotangent bundles, and linear-algebra oracles for conormal fibers.

mod fiber;
mod springer;

pub use fiber::{conormal_fiber_flag, conormal_fiber_matrix, tangent_rank, MatrixSpace};
pub use springer::{
    push_graph, push_iota, springer_flag, springer_grass, tau_sharp, CotangentMatrixPoint, GroupCotangent,
    SpringerFlagPoint, SpringerGrassPoint,
};

use serde::{Deserialize, Serialize};

use crate::embedding::TargetCondition;
use crate::exactla::{Field, Matrix, Subspace};
use crate::permcore::{covexillary_data, CovexillaryData, PartialPermutation};
use crate::varieties::{
    dim_plus_standard, flag_schubert_violation, matrix_schubert_violation, ConditionSet, RankViolation,
};
use crate::{Error, Result};

/// Bound `b(i, j)` for a pair `0 ≤ j < i ≤ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairBound {
    pub i: usize,
    pub j: usize,
    pub bound: i64,
}

/// Case bounds over the padded triples `(0,0,0), (p_i,q_i,r_i), (n,n,0)`:
/// `b(i,j) = min((q_{i−1} − r_{i−1}) − (q_j − r_j), (p_i + r_i) − (p_{j+1} + r_{j+1}))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConormalBoundTable {
    pub padded: Vec<(usize, usize, usize)>,
    pub pairs: Vec<PairBound>,
}

impl ConormalBoundTable {
    pub fn new(data: &CovexillaryData) -> Self {
        Self::with_terminal_rank(data, 0)
    }

    /// Same table with `r_m` replaced; used to compare padding conventions.
    pub fn with_terminal_rank(data: &CovexillaryData, r_m: usize) -> Self {
        let mut padded = data.padded();
        padded.last_mut().expect("padding is nonempty").2 = r_m;
        let m = padded.len() - 1;
        let s = |k: usize| padded[k].1 as i64 - padded[k].2 as i64;
        let a = |k: usize| padded[k].0 as i64 + padded[k].2 as i64;
        let mut pairs = Vec::new();
        for i in 1..=m {
            for j in 0..i {
                let bound = (s(i - 1) - s(j)).min(a(i) - a(j + 1));
                pairs.push(PairBound { i, j, bound });
            }
        }
        Self { padded, pairs }
    }

    pub fn m(&self) -> usize {
        self.padded.len() - 1
    }
}

/// Measured rank against its bound for one pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub rank: usize,
    pub bound: i64,
    /// Whether the measured space was nonempty; an empty one satisfies any bound.
    pub nonempty: bool,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        !self.nonempty || self.rank as i64 <= self.bound
    }
}

/// Outcome of a conormal membership test with full diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConormalVerdict {
    pub member: bool,
    /// First failed Schubert condition on the base point, if any.
    pub base_violation: Option<BaseViolation>,
    pub pairs: Vec<PairCheck>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseViolation {
    Rank(RankViolation),
    Target { t: usize, dim: usize, bound: usize },
}

impl ConormalVerdict {
    fn from_parts(base_violation: Option<BaseViolation>, pairs: Vec<PairCheck>) -> Self {
        let member = base_violation.is_none() && pairs.iter().all(PairCheck::holds);
        Self { member, base_violation, pairs }
    }

    pub fn first_failure(&self) -> Option<&PairCheck> {
        self.pairs.iter().find(|p| !p.holds())
    }
}

/// `M = ((yx, y), (xyx, xy))`.
pub fn big_matrix_m<F: Field>(pt: &CotangentMatrixPoint<F>) -> Result<Matrix<F>> {
    let (x, y) = (&pt.x, &pt.y);
    let yx = y.mul(x)?;
    let xy = x.mul(y)?;
    let xyx = xy.mul(x)?;
    Ok(Matrix::from_blocks(&yx, y, &xyx, &xy)?)
}

/// Row and column index sets (0-based) of `M(i, j)`.
pub fn mij_indices(table: &ConormalBoundTable, n: usize, i: usize, j: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let m = table.m();
    if !(j < i && i <= m) {
        return Err(Error::Index(format!("need 0 <= j < i <= {m}, got (i, j) = ({i}, {j})")));
    }
    let (pi, qi, _) = table.padded[i];
    let (pj, qj, _) = table.padded[j];
    let rows = (qj..n).chain(n + pj..2 * n).collect();
    let cols = (0..qi).chain(n..n + pi).collect();
    Ok((rows, cols))
}

/// Rows `{q_j+1..n} ∪ {n+p_j+1..2n}`, columns `{1..q_i} ∪ {n+1..n+p_i}` of `M`.
pub fn submatrix_mij<F: Field>(m: &Matrix<F>, table: &ConormalBoundTable, i: usize, j: usize) -> Result<Matrix<F>> {
    let n = m.rows() / 2;
    let (rows, cols) = mij_indices(table, n, i, j)?;
    Ok(m.select(&rows, &cols))
}

fn covex_for<F: Field>(w: &PartialPermutation, x: &Matrix<F>) -> Result<CovexillaryData> {
    if x.shape() != (w.n(), w.n()) {
        return Err(Error::Size(format!("point is {}x{}, permutation has n = {}", x.rows(), x.cols(), w.n())));
    }
    Ok(covexillary_data(w)?)
}

/// Membership of `(x, α_y)` in the conormal variety of `g_w`: `x ∈ g_w` and
/// `rank M(i, j) ≤ b(i, j)` for every pair.
pub fn in_conormal_matrix<F: Field>(pt: &CotangentMatrixPoint<F>, w: &PartialPermutation) -> Result<ConormalVerdict> {
    let data = covex_for(w, &pt.x)?;
    in_conormal_matrix_with(pt, w, &ConormalBoundTable::new(&data))
}

pub fn in_conormal_matrix_with<F: Field>(
    pt: &CotangentMatrixPoint<F>,
    w: &PartialPermutation,
    table: &ConormalBoundTable,
) -> Result<ConormalVerdict> {
    let base = matrix_schubert_violation(&pt.x, w, ConditionSet::Essential)?.map(BaseViolation::Rank);
    let big = big_matrix_m(pt)?;
    let mut pairs = Vec::with_capacity(table.pairs.len());
    for pb in &table.pairs {
        let sub = submatrix_mij(&big, table, pb.i, pb.j)?;
        pairs.push(PairCheck {
            i: pb.i,
            j: pb.j,
            rank: sub.rank(),
            bound: pb.bound,
            nonempty: sub.rows() > 0 && sub.cols() > 0,
        });
    }
    Ok(ConormalVerdict::from_parts(base, pairs))
}

/// Membership of `(F_•, z)` in the conormal variety of `Fl_w`:
/// `F_• ∈ Fl_w` and `dim(z(F_{q_i} + E_{p_i}) / (F_{q_j} ∩ E_{p_j})) ≤ b(i, j)`.
pub fn in_conormal_flag<F: Field>(pt: &SpringerFlagPoint<F>, w: &PartialPermutation) -> Result<ConormalVerdict> {
    let data = covex_for(w, &pt.z)?;
    if !w.is_full() {
        return Err(Error::Invariant(format!("{w} is not a full permutation")));
    }
    let table = ConormalBoundTable::new(&data);
    let field = pt.z.field().clone();
    let n = w.n();
    let base = flag_schubert_violation(&pt.flag, w)?.map(BaseViolation::Rank);
    let mut pairs = Vec::with_capacity(table.pairs.len());
    for pb in &table.pairs {
        let (pi, qi, _) = table.padded[pb.i];
        let (pj, qj, _) = table.padded[pb.j];
        let top = pt.flag.member(qi).sum(&Subspace::standard(&field, n, pi))?;
        let image = top.image(&pt.z)?;
        let bottom = pt.flag.member(qj).intersect(&Subspace::standard(&field, n, pj))?;
        let rank = image.dim_quotient(&bottom)?;
        pairs.push(PairCheck { i: pb.i, j: pb.j, rank, bound: pb.bound, nonempty: top.dim() > 0 });
    }
    Ok(ConormalVerdict::from_parts(base, pairs))
}

/// Membership of `(V, x)` in the conormal variety of the Grassmannian Schubert
/// variety cut out by `dim(V + E_t) ≤ bound`. With `c = bound − d` and padding
/// `(0, 0)`, `(N, N − d)`, the pairs require
/// `dim(x E_{t_i} / E_{t_j}) ≤ min((t_{i−1} − c_{i−1}) − (t_j − c_j), c_i − c_{j+1})`.
pub fn in_conormal_grass<F: Field>(pt: &SpringerGrassPoint<F>, conditions: &[TargetCondition]) -> Result<ConormalVerdict> {
    let big_n = pt.v.ambient();
    let d = pt.v.dim();
    let mut padded = vec![(0i64, 0i64)];
    for c in conditions {
        if c.bound < d || c.t > big_n {
            return Err(Error::Index(format!("condition {c:?} is out of range for Gr({d}, {big_n})")));
        }
        padded.push((c.t as i64, (c.bound - d) as i64));
    }
    padded.push((big_n as i64, (big_n - d) as i64));
    let base = conditions
        .iter()
        .map(|c| (c, dim_plus_standard(&pt.v, c.t)))
        .find(|(c, dim)| *dim > c.bound)
        .map(|(c, dim)| BaseViolation::Target { t: c.t, dim, bound: c.bound });
    let k = padded.len() - 1;
    let mut pairs = Vec::new();
    for i in 1..=k {
        for j in 0..i {
            let (ti, ci) = padded[i];
            let (tj, cj) = padded[j];
            let bound = ((padded[i - 1].0 - padded[i - 1].1) - (tj - cj)).min(ci - padded[j + 1].1);
            let sub = pt.x.block(tj as usize, big_n, 0, ti as usize);
            pairs.push(PairCheck {
                i,
                j,
                rank: sub.rank(),
                bound,
                nonempty: sub.rows() > 0 && sub.cols() > 0,
            });
        }
    }
    Ok(ConormalVerdict::from_parts(base, pairs))
}
