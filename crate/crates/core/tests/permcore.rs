use std::collections::{BTreeSet, VecDeque};

use covex_core::permcore::{
    bruhat_leq, covexillary_data, essential_set, hat_permutation, is_covexillary, rank_matrix,
    reconstruct_from_essential, EssentialCondition, PartialPermutation,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn partial(n: usize, seed: u64) -> PartialPermutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut image: Vec<usize> = (1..=n).collect();
    image.shuffle(&mut rng);
    let keep = rng.gen_range(0..=n);
    for v in image.iter_mut().skip(keep) {
        *v = 0;
    }
    image.shuffle(&mut rng);
    PartialPermutation::new(image).unwrap()
}

fn partial_perm(n_max: usize) -> impl Strategy<Value = PartialPermutation> {
    (1..=n_max, any::<u64>()).prop_map(|(n, s)| partial(n, s))
}

/// Brute-force search over all 4-subsets of positions, zeros excluded.
fn contains_3412(w: &[usize]) -> bool {
    let n = w.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let (x, y, z, t) = (w[a], w[b], w[c], w[d]);
                    if z > 0 && z < t && t < x && x < y {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn length(w: &[usize]) -> usize {
    (0..w.len()).flat_map(|i| (i + 1..w.len()).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count()
}

/// Lower Bruhat interval, generated by length-decreasing transpositions.
fn lower_interval(w: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    let mut u = v.clone();
                    u.swap(i, j);
                    debug_assert!(length(&u) < length(&v));
                    if seen.insert(u.clone()) {
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    seen
}

proptest! {
    #[test]
    fn rank_matrix_counts_dots(w in partial_perm(8)) {
        let n = w.n();
        let r = rank_matrix(&w);
        for i in 1..=n {
            for j in 1..=n {
                let direct = (1..=j).filter(|&c| w.image()[c - 1] >= i).count();
                prop_assert_eq!(r.get(i, j), direct);
            }
        }
    }

    #[test]
    fn essential_set_reconstructs(w in partial_perm(8)) {
        let ess = essential_set(&w);
        prop_assert_eq!(reconstruct_from_essential(w.n(), &ess).unwrap(), w.clone());
        if let Ok(data) = covexillary_data(&w) {
            prop_assert_eq!(reconstruct_from_essential(w.n(), &data.conditions()).unwrap(), w);
        }
    }

    #[test]
    fn covexillary_data_is_monotone(w in partial_perm(8)) {
        if let Ok(data) = covexillary_data(&w) {
            let pad = data.padded();
            prop_assert_eq!(pad[0], (0, 0, 0));
            prop_assert_eq!(*pad.last().unwrap(), (w.n(), w.n(), 0));
            for pair in pad.windows(2) {
                let ((p0, q0, r0), (p1, q1, r1)) = (pair[0], pair[1]);
                prop_assert!(p0 <= p1 && q0 <= q1);
                // consecutive bounds are therefore nonnegative
                prop_assert!(q0 as i64 - r0 as i64 <= q1 as i64 - r1 as i64);
                prop_assert!(p0 + r0 <= p1 + r1);
            }
        }
    }

    #[test]
    fn text_and_json_roundtrip(w in partial_perm(9)) {
        let text = w.to_string();
        prop_assert_eq!(text.parse::<PartialPermutation>().unwrap(), w.clone());
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<PartialPermutation>(&json).unwrap(), w);
    }

    #[test]
    fn reconstruction_rejects_perturbed_ranks(w in partial_perm(6), k in any::<usize>()) {
        let mut ess = essential_set(&w);
        prop_assume!(!ess.is_empty());
        let i = k % ess.len();
        ess[i].rank += 1;
        // a stale rank either makes the data unrealizable or names another permutation
        if let Ok(u) = reconstruct_from_essential(w.n(), &ess) {
            prop_assert_ne!(u, w);
        }
    }
}

#[test]
fn covexillary_iff_completion_avoids_3412() {
    for n in 1..=5 {
        for w in PartialPermutation::all(n) {
            let hat = hat_permutation(&w);
            assert_eq!(is_covexillary(&w), !contains_3412(hat.image()), "w = {w}");
        }
    }
    for n in 1..=6 {
        for w in PartialPermutation::all_full(n) {
            assert_eq!(is_covexillary(&w), !contains_3412(w.image()), "w = {w}");
        }
    }
}

#[test]
fn completion_keeps_the_essential_set() {
    for n in 1..=4 {
        for w in PartialPermutation::all(n) {
            let hat = hat_permutation(&w);
            assert!(hat.is_full());
            let shifted: Vec<EssentialCondition> = essential_set(&w)
                .into_iter()
                .map(|e| EssentialCondition { row: e.row + n, ..e })
                .collect();
            assert_eq!(essential_set(&hat), shifted, "w = {w}, hat = {hat}");
            let r = rank_matrix(&hat);
            let rw = rank_matrix(&w);
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(r.get(n + i, j), rw.get(i, j));
                }
            }
        }
    }
}

#[test]
fn bruhat_order_matches_transposition_closure() {
    for n in 1..=4 {
        let perms: Vec<PartialPermutation> = PartialPermutation::all_full(n).collect();
        for w in &perms {
            let below = lower_interval(w.image());
            for u in &perms {
                assert_eq!(bruhat_leq(u, w).unwrap(), below.contains(u.image()), "{u} <= {w}");
            }
        }
    }
}

#[test]
fn bruhat_order_is_a_partial_order_on_partial_permutations() {
    let all = PartialPermutation::all(3);
    for a in &all {
        assert!(bruhat_leq(a, a).unwrap());
        for b in &all {
            if a != b && bruhat_leq(a, b).unwrap() {
                assert!(!bruhat_leq(b, a).unwrap());
                for c in &all {
                    if bruhat_leq(b, c).unwrap() {
                        assert!(bruhat_leq(a, c).unwrap());
                    }
                }
            }
        }
        assert!(bruhat_leq(&PartialPermutation::zero(3), a).unwrap());
        assert!(bruhat_leq(a, &PartialPermutation::longest(3)).unwrap());
    }
}

#[test]
fn full_permutations_have_no_boundary_boxes() {
    for n in 1..=6 {
        for w in PartialPermutation::all_full(n) {
            for e in essential_set(&w) {
                assert!(e.row > 1 && e.col < n, "{w}: {e:?}");
            }
        }
    }
}

#[test]
fn counts() {
    let sizes: Vec<usize> = (1..=5).map(|n| PartialPermutation::all(n).len()).collect();
    assert_eq!(sizes, vec![2, 7, 34, 209, 1546]);
    // 3412 is Wilf-equivalent to 1234
    let covex: Vec<usize> = (1..=7).map(|n| PartialPermutation::all_full(n).filter(is_covexillary).count()).collect();
    assert_eq!(covex, vec![1, 2, 6, 23, 103, 513, 2761]);
}
