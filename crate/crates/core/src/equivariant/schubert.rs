use std::collections::HashSet;

use super::MultiPoly;
use crate::permcore::PartialPermutation;
use crate::{Error, Result};

/// `∂_k f = (f − s_k f) / (x_k − x_{k+1})` on the `x` variables (`k` 1-based,
/// `x_i` is variable `i − 1`).
pub fn divided_difference(f: &MultiPoly, k: usize) -> Result<MultiPoly> {
    if k == 0 || k >= f.nvars() {
        return Err(Error::Index(format!("no divided difference d_{k} on {} variables", f.nvars())));
    }
    let (i, j) = (k - 1, k);
    f.sub(&f.swap_vars(i, j)).div_by_difference(i, j)
}

fn inversions(w: &[usize]) -> HashSet<(usize, usize)> {
    let mut out = HashSet::new();
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if w[a] > w[b] {
                out.insert((w[a], w[b]));
            }
        }
    }
    out
}

/// The double Schubert polynomial `𝔖_w(x; y)` in variables
/// `x_1..x_n, y_1..y_n` (indices `0..n` and `n..2n`).
///
/// Starts from `𝔖_{w₀} = ∏_{i+j≤n} (x_i − y_j)` and applies `∂_k` along a
/// path `w₀ > w₀s_{k1} > …` in right weak order ending at `w`.
pub fn double_schubert(w: &PartialPermutation) -> Result<MultiPoly> {
    if !w.is_full() {
        return Err(Error::Invariant(format!("{w} is not a full permutation")));
    }
    let n = w.n();
    let nv = 2 * n;
    let mut f = MultiPoly::one(nv);
    for i in 1..=n {
        for j in 1..=n - i {
            let factor = MultiPoly::var(nv, i - 1).sub(&MultiPoly::var(nv, n + j - 1));
            f = f.mul(&factor);
        }
    }
    let target = w.image().to_vec();
    let want = inversions(&target);
    let mut cur: Vec<usize> = (1..=n).rev().collect();
    while cur != target {
        let k = (0..n - 1)
            .find(|&k| {
                if cur[k] < cur[k + 1] {
                    return false;
                }
                let mut next = cur.clone();
                next.swap(k, k + 1);
                want.is_subset(&inversions(&next))
            })
            .expect("right weak order path exists");
        f = divided_difference(&f, k + 1)?;
        cur.swap(k, k + 1);
    }
    Ok(f)
}
