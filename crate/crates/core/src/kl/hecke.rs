use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::PolynomialQ;
use crate::permcore::PartialPermutation;
use crate::{Error, Result};

type Perm = Vec<u8>;

fn length(w: &[u8]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// Tableau criterion: every prefix of `u`, sorted, is dominated by that of `w`.
fn leq(u: &[u8], w: &[u8]) -> bool {
    let n = u.len();
    let mut cu = vec![0i32; n + 2];
    let mut cw = vec![0i32; n + 2];
    for i in 0..n {
        cu[u[i] as usize] += 1;
        cw[w[i] as usize] += 1;
        let (mut su, mut sw) = (0, 0);
        for k in (1..=n).rev() {
            su += cu[k];
            sw += cw[k];
            if su > sw {
                return false;
            }
        }
    }
    true
}

fn swap(w: &[u8], k: usize) -> Perm {
    let mut v = w.to_vec();
    v.swap(k, k + 1);
    v
}

/// Kazhdan–Lusztig polynomials of `S_n` by the standard recursion on a right
/// descent, memoized. Sums over `z` run only through lower Bruhat intervals.
///
/// The memo is behind a lock so one table can be shared by worker threads;
/// values never depend on evaluation order.
#[derive(Clone)]
pub struct KlTable {
    n: usize,
    memo: Arc<RwLock<HashMap<(Perm, Perm), PolynomialQ>>>,
    intervals: Arc<RwLock<HashMap<Perm, Arc<Vec<(Perm, usize)>>>>>,
}

impl KlTable {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            memo: Arc::default(),
            intervals: Arc::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn to_raw(&self, w: &PartialPermutation) -> Result<Perm> {
        if w.n() != self.n {
            return Err(Error::Size(format!("expected S_{}, got {w}", self.n)));
        }
        if !w.is_full() {
            return Err(Error::Invariant(format!("{w} is not a full permutation")));
        }
        Ok(w.image().iter().map(|&r| r as u8).collect())
    }

    /// `P_{u,w}`; zero unless `u ≤ w`.
    pub fn polynomial(&self, u: &PartialPermutation, w: &PartialPermutation) -> Result<PolynomialQ> {
        let (u, w) = (self.to_raw(u)?, self.to_raw(w)?);
        Ok(self.p(&u, &w))
    }

    /// `[e, v]` with lengths, found by walking down reflections.
    fn lower_interval(&self, v: &[u8]) -> Arc<Vec<(Perm, usize)>> {
        if let Some(hit) = self.intervals.read().expect("lock").get(v) {
            return hit.clone();
        }
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        let mut stack = vec![v.to_vec()];
        seen.insert(v.to_vec(), length(v));
        while let Some(z) = stack.pop() {
            for a in 0..z.len() {
                for b in a + 1..z.len() {
                    if z[a] > z[b] {
                        let mut y = z.clone();
                        y.swap(a, b);
                        if !seen.contains_key(&y) {
                            seen.insert(y.clone(), length(&y));
                            stack.push(y);
                        }
                    }
                }
            }
        }
        let mut out: Vec<(Perm, usize)> = seen.into_iter().collect();
        out.sort();
        let out = Arc::new(out);
        self.intervals.write().expect("lock").insert(v.to_vec(), out.clone());
        out
    }

    fn p(&self, x: &[u8], w: &[u8]) -> PolynomialQ {
        if x == w {
            return PolynomialQ::one();
        }
        if !leq(x, w) {
            return PolynomialQ::zero();
        }
        let key = (x.to_vec(), w.to_vec());
        if let Some(hit) = self.memo.read().expect("lock").get(&key) {
            return hit.clone();
        }
        let result = self.compute(x, w);
        self.memo.write().expect("lock").insert(key, result.clone());
        result
    }

    fn compute(&self, x: &[u8], w: &[u8]) -> PolynomialQ {
        let s = (0..w.len() - 1).find(|&k| w[k] > w[k + 1]).expect("w is not the identity");
        let xs = swap(x, s);
        if x[s] < x[s + 1] {
            return self.p(&xs, w);
        }
        let v = swap(w, s);
        let (lv, lw) = (length(&v), length(w));
        let mut res = self.p(&xs, &v).add_scaled(&self.p(x, &v), 1, 1);
        for (z, lz) in self.lower_interval(&v).iter() {
            let lz = *lz;
            if lz >= lv || (lv - lz) % 2 == 0 || z[s] < z[s + 1] || !leq(x, z) {
                continue;
            }
            let mu = self.p(z, &v).coeff((lv - lz - 1) / 2);
            if mu != 0 {
                res = res.add_scaled(&self.p(x, z), -mu, (lw - lz) / 2);
            }
        }
        res
    }
}

/// One-shot `P_{u,w}` with a fresh table.
pub fn kl_polynomial(u: &PartialPermutation, w: &PartialPermutation) -> Result<PolynomialQ> {
    if u.n() != w.n() {
        return Err(Error::Size(format!("{u} and {w} have different sizes")));
    }
    KlTable::new(w.n()).polynomial(u, w)
}
