use std::collections::{HashMap, HashSet};

use super::MultiPoly;
use crate::kl::CosetData;
use crate::permcore::PartialPermutation;
use crate::varieties::GrassIndex;
use crate::{Error, Result};

fn length(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

fn value_inversions(w: &[usize]) -> HashSet<(usize, usize)> {
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

/// Reduced word `a_1 … a_p` (0-based letters) with `w = s_{a_1} ⋯ s_{a_p}`.
fn reduced_word(w: &[usize]) -> Vec<usize> {
    let mut w = w.to_vec();
    let mut word = Vec::new();
    while let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
        w.swap(k, k + 1);
        word.push(k);
    }
    word.reverse();
    word
}

/// Billey's formula for the localization `ξ^v(u)` of the Schubert class of
/// `v` at the fixed point `u`, in `t_1..t_N`.
///
/// Sums `∏ r_j` over reduced subwords for `v` of a reduced word of `u`, where
/// `r_j = s_{a_1} ⋯ s_{a_{j−1}}(t_{a_j} − t_{a_j + 1})`. The sum is organised
/// as a dynamic program over partial products, which must stay below `v` in
/// right weak order.
pub fn billey(v: &[usize], u: &[usize]) -> Result<MultiPoly> {
    let big_n = u.len();
    if v.len() != big_n {
        return Err(Error::Size(format!("localizing S_{} at a point of S_{big_n}", v.len())));
    }
    let word = reduced_word(u);
    let target_inv = value_inversions(v);
    let identity: Vec<usize> = (1..=big_n).collect();
    let mut states: HashMap<Vec<usize>, MultiPoly> = HashMap::from([(identity.clone(), MultiPoly::one(big_n))]);
    let mut prefix = identity;
    for &a in &word {
        let root = MultiPoly::var(big_n, prefix[a] - 1).sub(&MultiPoly::var(big_n, prefix[a + 1] - 1));
        let mut next = states.clone();
        for (p, f) in &states {
            if p[a] > p[a + 1] {
                continue;
            }
            let mut q = p.clone();
            q.swap(a, a + 1);
            if !target_inv.contains(&(q[a], q[a + 1])) {
                continue;
            }
            let term = f.mul(&root);
            let slot = next.entry(q).or_insert_with(|| MultiPoly::zero(big_n));
            *slot = slot.add(&term);
        }
        states = next;
        prefix.swap(a, a + 1);
    }
    Ok(states.remove(v).unwrap_or_else(|| MultiPoly::zero(big_n)))
}

/// Localization of the class of the Grassmannian Schubert variety `X_{v_idx}`
/// at the fixed point of `u_idx`, in `t_1..t_N`. Zero unless `u_idx ≤ v_idx`.
///
/// Computed as `ξ^{w₀σ}(w₀π)` for the maximal representatives `σ, π`,
/// followed by `t_i ↦ t_{N+1−i}`.
pub fn localize_grass_class(v_idx: &GrassIndex, u_idx: &GrassIndex) -> Result<MultiPoly> {
    let big_n = v_idx.ambient();
    if u_idx.ambient() != big_n || u_idx.d() != v_idx.d() {
        return Err(Error::Index(format!("{u_idx:?} and {v_idx:?} live in different Grassmannians")));
    }
    let twist = |w: &PartialPermutation| -> Vec<usize> { w.image().iter().map(|&k| big_n + 1 - k).collect() };
    let sigma = twist(&CosetData::new(v_idx).max_rep);
    let pi = twist(&CosetData::new(u_idx).max_rep);
    if length(&sigma) > length(&pi) {
        return Ok(MultiPoly::zero(big_n));
    }
    let raw = billey(&sigma, &pi)?;
    let reverse: Vec<usize> = (0..big_n).rev().collect();
    Ok(raw.rename(&reverse, big_n))
}
