use super::essential::{essential_set, EssentialCondition};
use super::{PartialPermutation, PermError};

/// Completion of `w` to a permutation of size `2n` whose bottom-left `n × n`
/// block is `w` and whose remaining dots run from bottom-left to top-right.
///
/// Columns `1..=n` keep the dots of `w` (shifted down by `n`); the rows of the
/// bottom half missed by `w` are filled in decreasing order in columns
/// `n+1, n+2, …`; the top rows `n, n−1, …, 1` go, in that order, to the empty
/// columns of `w` followed by the remaining last columns.
pub fn hat_permutation(w: &PartialPermutation) -> PartialPermutation {
    let n = w.n();
    let mut hat = vec![0; 2 * n];
    for (j, &r) in w.image().iter().enumerate() {
        if r != 0 {
            hat[j] = n + r;
        }
    }
    let missing: Vec<usize> = (1..=n).rev().filter(|&k| w.column_of(k).is_none()).map(|k| n + k).collect();
    for (idx, &r) in missing.iter().enumerate() {
        hat[n + idx] = r;
    }
    let columns = (0..n).filter(|&j| w.image()[j] == 0).chain(n + missing.len()..2 * n);
    for (idx, c) in columns.enumerate() {
        hat[c] = n - idx;
    }
    PartialPermutation::new(hat).expect("completion is a permutation")
}

/// Recovers the unique partial permutation with the given essential set.
///
/// The rank function is rebuilt as the largest function compatible with the
/// conditions, `R(i,j) = min(min(j, n−i+1), min_e r_e + (p_e − i)⁺ + (j − q_e)⁺)`,
/// and the dots are read off its second differences. The result is checked
/// against the input, so non-realizable data is rejected rather than repaired.
pub fn reconstruct_from_essential(
    n: usize,
    conditions: &[EssentialCondition],
) -> Result<PartialPermutation, PermError> {
    if n == 0 {
        return Err(PermError::Empty);
    }
    for c in conditions {
        if c.row == 0 || c.row > n || c.col == 0 || c.col > n || c.rank > c.col.min(n - c.row + 1) {
            return Err(PermError::NotRealizable(format!("condition {c:?} is out of range for n = {n}")));
        }
    }
    let r = |i: usize, j: usize| -> i64 {
        if i > n || j == 0 {
            return 0;
        }
        let mut b = j.min(n - i + 1) as i64;
        for c in conditions {
            let bound = c.rank + c.row.saturating_sub(i) + j.saturating_sub(c.col);
            b = b.min(bound as i64);
        }
        b
    };
    let mut image = vec![0; n];
    for i in 1..=n {
        for j in 1..=n {
            match r(i, j) - r(i + 1, j) - r(i, j - 1) + r(i + 1, j - 1) {
                0 => {}
                1 if image[j - 1] == 0 => image[j - 1] = i,
                _ => return Err(PermError::NotRealizable(format!("rank function has a bad jump at ({i}, {j})"))),
            }
        }
    }
    let w = PartialPermutation::new(image)
        .map_err(|e| PermError::NotRealizable(format!("recovered matrix is not a partial permutation: {e}")))?;
    let mut want = conditions.to_vec();
    want.sort();
    if essential_set(&w) != want {
        return Err(PermError::NotRealizable(format!(
            "no partial permutation has exactly these conditions (closest is {w})"
        )));
    }
    Ok(w)
}
