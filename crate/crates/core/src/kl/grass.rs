use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::PolynomialQ;
use crate::permcore::PartialPermutation;
use crate::varieties::GrassIndex;
use crate::{Error, Result};

/// Laurent polynomial in `v`, exponent to coefficient, no zero entries.
type Laurent = BTreeMap<i32, i64>;

fn add_into(acc: &mut Laurent, other: &Laurent, c: i64, shift: i32) {
    for (&e, &x) in other {
        let slot = acc.entry(e + shift).or_insert(0);
        *slot += c * x;
        if *slot == 0 {
            acc.remove(&(e + shift));
        }
    }
}

/// Subsets of `{1..N}` as bitmasks, bit `k − 1` for element `k`.
type Mask = u32;

fn mask_dim(s: Mask) -> usize {
    let mut total = 0;
    let mut i = 0;
    for k in 0..32 {
        if s & (1 << k) != 0 {
            i += 1;
            total += k + 1 - i;
        }
    }
    total
}

fn has(s: Mask, k: usize) -> bool {
    s & (1 << (k - 1)) != 0
}

fn swap_elem(s: Mask, from: usize, to: usize) -> Mask {
    (s & !(1 << (from - 1))) | (1 << (to - 1))
}

/// Canonical basis of the parabolic module of `S_N` induced from the trivial
/// representation of `S_d × S_{N−d}`, on the standard basis indexed by
/// `d`-subsets. The coefficient of the subset `U` in the basis element at `V`
/// encodes `P_{U,V}`, which equals the ordinary KL polynomial of the maximal
/// coset representatives.
#[derive(Clone)]
pub struct GrassKl {
    d: usize,
    big_n: usize,
    memo: Arc<RwLock<HashMap<Mask, Arc<HashMap<Mask, Laurent>>>>>,
}

impl GrassKl {
    pub fn new(d: usize, big_n: usize) -> Result<Self> {
        if d > big_n || big_n > 31 {
            return Err(Error::Index(format!("unsupported Gr({d}, {big_n})")));
        }
        Ok(Self { d, big_n, memo: Arc::default() })
    }

    fn mask(&self, idx: &GrassIndex) -> Result<Mask> {
        if idx.d() != self.d || idx.ambient() != self.big_n {
            return Err(Error::Index(format!("{idx:?} is not an index of Gr({}, {})", self.d, self.big_n)));
        }
        Ok(idx.seq().iter().fold(0, |m, &k| m | (1 << (k - 1))))
    }

    fn basis(&self, s: Mask) -> Arc<HashMap<Mask, Laurent>> {
        if let Some(hit) = self.memo.read().expect("lock").get(&s) {
            return hit.clone();
        }
        let built = Arc::new(self.build(s));
        self.memo.write().expect("lock").insert(s, built.clone());
        built
    }

    fn build(&self, s: Mask) -> HashMap<Mask, Laurent> {
        let mut res: HashMap<Mask, Laurent> = HashMap::new();
        if mask_dim(s) == 0 {
            res.insert(s, Laurent::from([(0, 1)]));
            return res;
        }
        let k = (1..self.big_n).find(|&k| has(s, k + 1) && !has(s, k)).expect("a non-minimal subset has an ascent");
        let prev = swap_elem(s, k + 1, k);
        // multiply the basis element at `prev` by the generator for s_k
        for (&b, c) in self.basis(prev).iter() {
            match (has(b, k), has(b, k + 1)) {
                (true, false) => {
                    add_into(res.entry(swap_elem(b, k, k + 1)).or_default(), c, 1, 0);
                    add_into(res.entry(b).or_default(), c, 1, 1);
                }
                (false, true) => {
                    add_into(res.entry(swap_elem(b, k + 1, k)).or_default(), c, 1, 0);
                    add_into(res.entry(b).or_default(), c, 1, -1);
                }
                _ => {
                    let slot = res.entry(b).or_default();
                    add_into(slot, c, 1, 1);
                    add_into(slot, c, 1, -1);
                }
            }
        }
        // subtract lower basis elements until every off-diagonal coefficient lies in vZ[v]
        loop {
            let candidate = res
                .iter()
                .filter(|(&b, c)| b != s && c.keys().next().is_some_and(|&e| e <= 0))
                .map(|(&b, _)| b)
                .max_by_key(|&b| (mask_dim(b), b));
            let Some(b) = candidate else { break };
            let c0 = res[&b].get(&0).copied().unwrap_or(0);
            assert!(c0 != 0, "bar-invariant correction has no constant term");
            for (&t, cc) in self.basis(b).iter() {
                add_into(res.entry(t).or_default(), cc, -c0, 0);
            }
        }
        res.retain(|_, c| !c.is_empty());
        res
    }

    /// `P_{U,V}`; zero unless `U ≤ V`.
    pub fn polynomial(&self, u: &GrassIndex, v: &GrassIndex) -> Result<PolynomialQ> {
        let (um, vm) = (self.mask(u)?, self.mask(v)?);
        if !u.le(v) {
            return Ok(PolynomialQ::zero());
        }
        let basis = self.basis(vm);
        let Some(c) = basis.get(&um) else {
            return Ok(PolynomialQ::zero());
        };
        let gap = (v.dim() - u.dim()) as i32;
        let mut coeffs = vec![0i64; (gap / 2 + 1) as usize];
        for (&e, &x) in c {
            if (gap - e) % 2 != 0 || e > gap {
                return Err(Error::Invariant(format!("unexpected exponent {e} for length gap {gap}")));
            }
            coeffs[((gap - e) / 2) as usize] += x;
        }
        Ok(PolynomialQ::from_coeffs(coeffs))
    }
}

/// Minimal and maximal length representatives of the coset of
/// `S_d × S_{N−d}` attached to a Grassmannian index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetData {
    pub big_n: usize,
    pub d: usize,
    pub min_rep: PartialPermutation,
    pub max_rep: PartialPermutation,
}

impl CosetData {
    pub fn new(idx: &GrassIndex) -> Self {
        let n = idx.ambient();
        let rest: Vec<usize> = (1..=n).filter(|k| !idx.seq().contains(k)).collect();
        let min: Vec<usize> = idx.seq().iter().chain(&rest).copied().collect();
        let max: Vec<usize> = idx.seq().iter().rev().chain(rest.iter().rev()).copied().collect();
        Self {
            big_n: n,
            d: idx.d(),
            min_rep: PartialPermutation::new(min).expect("coset representative"),
            max_rep: PartialPermutation::new(max).expect("coset representative"),
        }
    }
}

/// KL polynomial of the Grassmannian Schubert variety for `v_idx` at the
/// cell of `u_idx`.
pub fn grassmannian_kl(u_idx: &GrassIndex, v_idx: &GrassIndex) -> Result<PolynomialQ> {
    GrassKl::new(v_idx.d(), v_idx.ambient())?.polynomial(u_idx, v_idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(n: usize, s: &[usize]) -> GrassIndex {
        GrassIndex::new(n, s.to_vec()).unwrap()
    }

    #[test]
    fn gr24_singular_point() {
        assert_eq!(grassmannian_kl(&gi(4, &[1, 2]), &gi(4, &[2, 4])).unwrap().coeffs(), &[1, 1]);
        assert_eq!(grassmannian_kl(&gi(4, &[1, 3]), &gi(4, &[2, 4])).unwrap(), PolynomialQ::one());
        assert_eq!(grassmannian_kl(&gi(4, &[3, 4]), &gi(4, &[3, 4])).unwrap(), PolynomialQ::one());
        assert!(grassmannian_kl(&gi(4, &[3, 4]), &gi(4, &[2, 4])).unwrap().is_zero());
    }

    #[test]
    fn projective_space_is_smooth() {
        let g = GrassKl::new(1, 5).unwrap();
        for a in 1..=5 {
            for b in a..=5 {
                assert_eq!(g.polynomial(&gi(5, &[a]), &gi(5, &[b])).unwrap(), PolynomialQ::one());
            }
        }
    }

    #[test]
    fn coset_representatives() {
        let c = CosetData::new(&gi(5, &[2, 4]));
        assert_eq!(c.min_rep.image(), &[2, 4, 1, 3, 5]);
        assert_eq!(c.max_rep.image(), &[4, 2, 5, 3, 1]);
        assert_eq!(c.max_rep.length() - c.min_rep.length(), 1 + 3);
    }
}
