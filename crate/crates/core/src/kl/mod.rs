//! Kazhdan–Lusztig polynomials of `S_n` and of Grassmannians, and the
//! comparison of the two through the covexillary graph embedding.

mod grass;
mod hecke;
mod poly;

pub use grass::{grassmannian_kl, CosetData, GrassKl};
pub use hecke::{kl_polynomial, KlTable};
pub use poly::PolynomialQ;

use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingTarget;
use crate::exactla::Rationals;
use crate::permcore::{bruhat_leq, PartialPermutation};
use crate::varieties::{locate_grass_cell, GrassIndex};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlRow {
    pub u: PartialPermutation,
    pub u_hat: GrassIndex,
    pub matrix_side: PolynomialQ,
    pub grass_side: PolynomialQ,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlReport {
    pub w: PartialPermutation,
    pub v_hat: GrassIndex,
    pub rows: Vec<KlRow>,
}

impl KlReport {
    pub fn all_matched(&self) -> bool {
        self.rows.iter().all(|r| r.matched)
    }
}

/// For every `u ≤ w`, compares `P_{u,w}` with the Grassmannian polynomial at
/// `(û, v̂)`, where `û` locates `τ·h(u)` and `v̂` indexes the target.
pub fn covexillary_kl_check(w: &PartialPermutation) -> Result<KlReport> {
    if !w.is_full() {
        return Err(Error::Invariant(format!("{w} is not a full permutation")));
    }
    let n = w.n();
    let target = EmbeddingTarget::of(w)?;
    let v_hat = target.grass_index()?;
    let table = KlTable::new(n);
    let grass = GrassKl::new(n, 2 * n)?;
    let mut rows = Vec::new();
    for u in PartialPermutation::all_full(n) {
        if !bruhat_leq(&u, w)? {
            continue;
        }
        let u_hat = locate_grass_cell(&target.embed_point(&u.matrix(&Rationals))?);
        let matrix_side = table.polynomial(&u, w)?;
        let grass_side = grass.polynomial(&u_hat, &v_hat)?;
        let matched = u_hat.le(&v_hat) && matrix_side == grass_side;
        rows.push(KlRow { u, u_hat, matrix_side, grass_side, matched });
    }
    Ok(KlReport { w: w.clone(), v_hat, rows })
}
