//! The graph embedding of a covexillary matrix Schubert variety into a
//! Grassmannian Schubert variety of `Gr(n, 2n)`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::exactla::{Field, Matrix, Subspace};
use crate::permcore::{covexillary_data, CovexillaryData, PartialPermutation};
use crate::varieties::{dim_plus_standard, GrassIndex};
use crate::{Error, Result};

/// Block-interleaving permutation of `S_2n`. For each block `i = 1..=m` it
/// sends `e_{q_{i−1}+1..q_i}` and then `e_{n+p_{i−1}+1..n+p_i}` to the next
/// consecutive basis vectors, so that `τ⁻¹E_{t_i} = ⟨e_1..e_{q_i}, e_{n+1}..e_{n+p_i}⟩`.
pub fn tau_permutation(data: &CovexillaryData) -> PartialPermutation {
    let n = data.n();
    let pad = data.padded();
    let mut tau = vec![0; 2 * n];
    let mut next = 1;
    for (prev, cur) in pad.iter().tuple_windows() {
        for k in prev.1 + 1..=cur.1 {
            tau[k - 1] = next;
            next += 1;
        }
        for k in prev.0 + 1..=cur.0 {
            tau[n + k - 1] = next;
            next += 1;
        }
    }
    PartialPermutation::new(tau).expect("interleaving is a bijection")
}

/// A Grassmannian condition `dim(V + E_t) ≤ bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetCondition {
    pub t: usize,
    pub bound: usize,
}

/// The Schubert variety of `Gr(n, 2n)` receiving `τ ∘ h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingTarget {
    pub data: CovexillaryData,
    pub tau: PartialPermutation,
    pub conditions: Vec<TargetCondition>,
}

impl EmbeddingTarget {
    pub fn new(data: CovexillaryData) -> Self {
        let n = data.n();
        let tau = tau_permutation(&data);
        let conditions = data
            .triples()
            .iter()
            .map(|&(p, q, r)| TargetCondition { t: p + q, bound: n + p + r })
            .collect();
        Self { data, tau, conditions }
    }

    pub fn of(w: &PartialPermutation) -> Result<Self> {
        Ok(Self::new(covexillary_data(w)?))
    }

    pub fn n(&self) -> usize {
        self.data.n()
    }

    /// The Schubert index `v̂` of the target: the largest coordinate point
    /// satisfying every condition. Componentwise maxima of admissible
    /// coordinate points are themselves admissible, which is checked.
    pub fn grass_index(&self) -> Result<GrassIndex> {
        let n = self.n();
        let admissible: Vec<Vec<usize>> = (1..=2 * n)
            .combinations(n)
            .filter(|s| {
                self.conditions
                    .iter()
                    .all(|c| c.t + s.iter().filter(|&&x| x > c.t).count() <= c.bound)
            })
            .collect();
        let top: Vec<usize> = (0..n).map(|i| admissible.iter().map(|s| s[i]).max().unwrap_or(0)).collect();
        if !admissible.contains(&top) {
            return Err(Error::Invariant("target conditions have no largest coordinate point".into()));
        }
        GrassIndex::new(2 * n, top)
    }

    /// The coordinate point `τ E_n`, image of `0`.
    pub fn base_point<F: Field>(&self, field: &F) -> Subspace<F> {
        let idx: Vec<usize> = self.tau.image()[..self.n()].iter().map(|t| t - 1).collect();
        Subspace::coordinate(field, 2 * self.n(), &idx)
    }

    pub fn tau_matrix<F: Field>(&self, field: &F) -> Matrix<F> {
        self.tau.matrix(field)
    }

    /// First condition violated by `V`, as `(condition, dim(V + E_t))`.
    pub fn violation<F: Field>(&self, v: &Subspace<F>) -> Result<Option<(TargetCondition, usize)>> {
        if v.ambient() != 2 * self.n() || v.dim() != self.n() {
            return Err(Error::Size(format!("expected a point of Gr({}, {})", self.n(), 2 * self.n())));
        }
        Ok(self.conditions.iter().map(|&c| (c, dim_plus_standard(v, c.t))).find(|(c, d)| *d > c.bound))
    }

    pub fn contains<F: Field>(&self, v: &Subspace<F>) -> Result<bool> {
        Ok(self.violation(v)?.is_none())
    }

    /// `τ · h(x)`.
    pub fn embed_point<F: Field>(&self, x: &Matrix<F>) -> Result<Subspace<F>> {
        Ok(graph_embed(x)?.image(&self.tau_matrix(x.field()))?)
    }
}

/// Column span of `(I over x)`.
pub fn graph_embed<F: Field>(x: &Matrix<F>) -> Result<Subspace<F>> {
    if !x.is_square() {
        return Err(Error::Size(format!("expected a square matrix, got {}x{}", x.rows(), x.cols())));
    }
    let top = Matrix::identity(x.field(), x.rows());
    Ok(Subspace::column_span(&top.vstack(x)?))
}

/// `(dim(xE_q/E_p) ≤ r, dim(h(x) + V) ≤ n + p + r)` with
/// `V = ⟨e_1..e_q, e_{n+1}..e_{n+p}⟩`. The two always agree.
pub fn check_rank_lemma<F: Field>(x: &Matrix<F>, p: usize, q: usize, r: usize) -> Result<(bool, bool)> {
    let n = x.rows();
    if !x.is_square() || p > n || q > n {
        return Err(Error::Size(format!("need square x and p, q <= {n}")));
    }
    let lhs = crate::varieties::sw_rank(x, p + 1, q) <= r;
    let idx: Vec<usize> = (0..q).chain(n..n + p).collect();
    let v = Subspace::coordinate(x.field(), 2 * n, &idx);
    let rhs = graph_embed(x)?.dim_sum(&v)? <= n + p + r;
    Ok((lhs, rhs))
}

/// A torus weight on the matrix side: `x_i` acts on rows, `y_i` on columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Weight {
    X(usize),
    Y(usize),
}

/// `t_{τ(i)} ↦ y_i` for `i ≤ n` and `t_{τ(i)} ↦ x_{i−n}` otherwise; entry
/// `k − 1` of the result is the image of `t_k`.
pub fn weight_map(target: &EmbeddingTarget) -> Vec<Weight> {
    let n = target.n();
    let mut out = vec![Weight::X(0); 2 * n];
    for (i, &t) in target.tau.image().iter().enumerate() {
        out[t - 1] = if i < n { Weight::Y(i + 1) } else { Weight::X(i + 1 - n) };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};

    fn p(s: &str) -> PartialPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn tau_examples() {
        let t = EmbeddingTarget::of(&p("12")).unwrap();
        assert_eq!(t.tau, p("1324"));
        assert_eq!(t.conditions, vec![TargetCondition { t: 2, bound: 3 }]);
        let t = EmbeddingTarget::of(&PartialPermutation::longest(3)).unwrap();
        assert_eq!(t.tau, PartialPermutation::identity(6));
        assert!(t.conditions.is_empty());
    }

    #[test]
    fn tau_inverse_of_e4_for_2143() {
        let q = Rationals;
        let t = EmbeddingTarget::of(&p("2143")).unwrap();
        let tau_inv = t.tau.inverse().unwrap().matrix(&q);
        let img = Subspace::standard(&q, 8, 4).image(&tau_inv).unwrap();
        assert_eq!(img, Subspace::coordinate(&q, 8, &[0, 1, 4, 5]));
    }

    #[test]
    fn weights_for_2143() {
        let t = EmbeddingTarget::of(&p("2143")).unwrap();
        let w = weight_map(&t);
        assert_eq!(&w[..5], &[Weight::Y(1), Weight::Y(2), Weight::X(1), Weight::X(2), Weight::Y(3)]);
        let id = EmbeddingTarget::of(&PartialPermutation::longest(2)).unwrap();
        assert_eq!(weight_map(&id), vec![Weight::Y(1), Weight::Y(2), Weight::X(1), Weight::X(2)]);
    }

    #[test]
    fn zero_goes_to_base_point() {
        let f = PrimeField::default();
        let t = EmbeddingTarget::of(&p("2143")).unwrap();
        let v = t.embed_point(&Matrix::zeros(&f, 4, 4)).unwrap();
        assert_eq!(v, t.base_point(&f));
        let q = Rationals;
        assert_eq!(graph_embed(&Matrix::zeros(&q, 3, 3)).unwrap(), Subspace::standard(&q, 6, 3));
    }

    #[test]
    fn rank_lemma_scalar() {
        let q = Rationals;
        for a in [0, 4] {
            let x = Matrix::from_i64_rows(&q, &[&[a]]);
            assert_eq!(check_rank_lemma(&x, 0, 1, 0).unwrap(), (a == 0, a == 0));
        }
    }
}
