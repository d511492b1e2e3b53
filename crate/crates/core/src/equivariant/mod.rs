//! Torus-equivariant classes: double Schubert polynomials, localization of
//! Grassmannian Schubert classes, and the comparison of the two through the
//! covexillary graph embedding.
//!
//! The multidegree of the matrix Schubert variety of `w` is recovered by
//! localizing the class of `X_{v̂}` at the fixed point `τ·h(0)` and pulling
//! the torus weights back along `t_{τ(i)} ↦ y_i` (`i ≤ n`), `x_{i−n}`
//! (`i > n`). The result agrees with `𝔖_{w₀w}(x; y)` after a fixed change of
//! sign and variable convention, see [`Convention`].

mod localize;
mod poly;
mod schubert;

pub use localize::{billey, localize_grass_class};
pub use poly::{t_names, xy_names, MultiPoly, Term};
pub use schubert::{divided_difference, double_schubert};

use serde::{Deserialize, Serialize};

use crate::embedding::{weight_map, EmbeddingTarget, Weight};
use crate::permcore::PartialPermutation;
use crate::varieties::GrassIndex;
use crate::{Error, Result};

/// A change of convention on `Z[x_1..x_n, y_1..y_n]`, applied in the order
/// swap, reverse, negate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    /// Exchange `x_i` and `y_i`.
    pub swap_xy: bool,
    /// Send `y_i` to `y_{n+1−i}`.
    pub reverse_y: bool,
    /// Multiply by `(−1)^deg`.
    pub negate: bool,
}

/// The convention matching double Schubert polynomials, frozen from
/// [`calibrate_convention`] on `S_2`.
pub const FROZEN_CONVENTION: Convention = Convention { swap_xy: true, reverse_y: true, negate: true };

impl Convention {
    pub fn all() -> impl Iterator<Item = Convention> {
        (0..8u8).map(|b| Convention { swap_xy: b & 1 != 0, reverse_y: b & 2 != 0, negate: b & 4 != 0 })
    }

    /// Applies the convention to a polynomial in `x_1..x_n, y_1..y_n`.
    pub fn apply(&self, f: &MultiPoly, n: usize) -> MultiPoly {
        let nv = 2 * n;
        let mut g = f.clone();
        if self.swap_xy {
            let map: Vec<usize> = (0..nv).map(|k| (k + n) % nv).collect();
            g = g.rename(&map, nv);
        }
        if self.reverse_y {
            let map: Vec<usize> = (0..nv).map(|k| if k < n { k } else { n + (2 * n - 1 - k) }).collect();
            g = g.rename(&map, nv);
        }
        if self.negate && g.degree().is_some_and(|d| d % 2 == 1) {
            g = g.scale(-1);
        }
        g
    }
}

/// The fixed point `τ·h(0)`: the sorted image of `1..n` under `τ`.
pub fn base_fixed_point(target: &EmbeddingTarget) -> Result<GrassIndex> {
    let n = target.n();
    let mut seq = target.tau.image()[..n].to_vec();
    seq.sort_unstable();
    GrassIndex::new(2 * n, seq)
}

/// Localization of `[X_{v̂}]` at the base fixed point, with weights pulled
/// back to `x_1..x_n, y_1..y_n`, before any convention is applied.
pub fn raw_multidegree(target: &EmbeddingTarget) -> Result<MultiPoly> {
    let n = target.n();
    let local = localize_grass_class(&target.grass_index()?, &base_fixed_point(target)?)?;
    let map: Vec<usize> = weight_map(target)
        .into_iter()
        .map(|w| match w {
            Weight::X(i) => i - 1,
            Weight::Y(i) => n + i - 1,
        })
        .collect();
    Ok(local.rename(&map, 2 * n))
}

/// `w₀ ∘ w`, that is `i ↦ n + 1 − w(i)`.
pub fn w0_times(w: &PartialPermutation) -> Result<PartialPermutation> {
    if !w.is_full() {
        return Err(Error::Invariant(format!("{w} is not a full permutation")));
    }
    let n = w.n();
    Ok(PartialPermutation::new(w.image().iter().map(|&k| n + 1 - k).collect())?)
}

/// Outcome of comparing the localized class with the double Schubert
/// polynomial of `w₀w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultidegreeReport {
    pub w: PartialPermutation,
    pub convention: Convention,
    pub localized: String,
    pub schubert: String,
    pub matched: bool,
}

pub fn verify_multidegree_with(w: &PartialPermutation, convention: Convention) -> Result<MultidegreeReport> {
    let n = w.n();
    let target = EmbeddingTarget::of(w)?;
    let localized = convention.apply(&raw_multidegree(&target)?, n);
    let schubert = double_schubert(&w0_times(w)?)?;
    let names = xy_names(n);
    Ok(MultidegreeReport {
        w: w.clone(),
        convention,
        localized: localized.render(&names),
        schubert: schubert.render(&names),
        matched: localized == schubert,
    })
}

pub fn verify_multidegree(w: &PartialPermutation) -> Result<MultidegreeReport> {
    verify_multidegree_with(w, FROZEN_CONVENTION)
}

/// Conventions under which every covexillary `w ∈ S_n` matches.
pub fn calibrate_convention(n: usize) -> Result<Vec<Convention>> {
    let mut out = Vec::new();
    for c in Convention::all() {
        let mut ok = true;
        for w in PartialPermutation::all_full(n) {
            if !crate::permcore::is_covexillary(&w) {
                continue;
            }
            if !verify_multidegree_with(&w, c)?.matched {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_on_s2_is_unique_and_frozen() {
        assert_eq!(calibrate_convention(2).unwrap(), vec![FROZEN_CONVENTION]);
    }

    #[test]
    fn s3_matches() {
        for w in PartialPermutation::all_full(3) {
            let r = verify_multidegree(&w).unwrap();
            assert!(r.matched, "{r:?}");
        }
    }

    #[test]
    fn convention_is_an_involution_on_swaps() {
        let f = MultiPoly::var(4, 0).sub(&MultiPoly::var(4, 3));
        let c = Convention { swap_xy: true, reverse_y: false, negate: false };
        assert_eq!(c.apply(&c.apply(&f, 2), 2), f);
    }
}
