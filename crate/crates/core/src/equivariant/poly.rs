use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Integer polynomial in `nvars` commuting variables. Monomials are exponent
/// vectors kept in a sorted map, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

/// One monomial in serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub exponents: Vec<u32>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, 1);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &i64)> {
        self.terms.iter()
    }

    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(e, &c)| Term { coeff: c, exponents: e.clone() })
            .collect()
    }

    fn add_term(&mut self, e: Vec<u32>, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let v = slot.get().checked_add(c).expect("coefficient overflow");
                if v == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, &a) in &self.terms {
            out.add_term(e.clone(), a.checked_mul(c).expect("coefficient overflow"));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, &a) in &self.terms {
            for (eb, &b) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a.checked_mul(b).expect("coefficient overflow"));
            }
        }
        out
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Substitutes variable `i` by variable `map[i]` of a polynomial ring
    /// with `target_nvars` variables.
    pub fn rename(&self, map: &[usize], target_nvars: usize) -> Self {
        let mut out = Self::zero(target_nvars);
        for (e, &c) in &self.terms {
            let mut f = vec![0; target_nvars];
            for (i, &k) in e.iter().enumerate() {
                f[map[i]] += k;
            }
            out.add_term(f, c);
        }
        out
    }

    /// Swaps variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut map: Vec<usize> = (0..self.nvars).collect();
        map.swap(i, j);
        self.rename(&map, self.nvars)
    }

    /// Exact quotient by `v_i − v_j`; fails if the division leaves a remainder.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<Self> {
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        loop {
            // the term with largest degree in v_i is peeled off first
            let Some((e, c)) = rem
                .terms
                .iter()
                .filter(|(e, _)| e[i] > 0)
                .max_by_key(|(e, _)| (e[i], (*e).clone()))
                .map(|(e, &c)| (e.clone(), c))
            else {
                break;
            };
            let mut q = e.clone();
            q[i] -= 1;
            quot.add_term(q.clone(), c);
            rem.add_term(e, -c);
            let mut shifted = q;
            shifted[j] += 1;
            rem.add_term(shifted, c);
        }
        if !rem.is_zero() {
            return Err(Error::Invariant(format!("division by v{} - v{} is not exact", i + 1, j + 1)));
        }
        Ok(quot)
    }

    /// Renders with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, &c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { names[v].clone() } else { format!("{}^{k}", names[v]) })
                .collect();
            let a = c.unsigned_abs();
            let body = match (mono.is_empty(), a) {
                (true, _) => a.to_string(),
                (false, 1) => mono.join("*"),
                (false, _) => format!("{a}*{}", mono.join("*")),
            };
            match (idx, c < 0) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

/// `x1..xn, y1..yn`.
pub fn xy_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect()
}

/// `t1..tN`.
pub fn t_names(big_n: usize) -> Vec<String> {
    (1..=big_n).map(|i| format!("t{i}")).collect()
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}
