use covex_core::exactla::{Matrix, PrimeField, Rationals, Subspace};
use covex_core::permcore::{bruhat_leq, PartialPermutation};
use covex_core::varieties::{
    in_flag_schubert, in_grass_schubert, in_matrix_schubert, locate_flag_cell, locate_grass_cell,
    locate_matrix_cell, sample_cell_point, ConditionSet, Flag, GrassConditions, GrassIndex,
};
use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grass_indices(d: usize, n: usize) -> Vec<GrassIndex> {
    (1..=n).combinations(d).map(|s| GrassIndex::new(n, s).unwrap()).collect()
}

/// Generic point of the `B`-orbit of the coordinate point `idx`.
fn grass_cell_point(f: &PrimeField, idx: &GrassIndex, rng: &mut ChaCha8Rng) -> Subspace<PrimeField> {
    let b = Matrix::random_borel(f, idx.ambient(), rng).unwrap();
    idx.fixed_point(f).image(&b).unwrap()
}

#[test]
fn orbit_closures_follow_bruhat_order() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=3 {
        let all = PartialPermutation::all(n);
        for u in &all {
            let x = sample_cell_point(&f, u, &mut rng).unwrap();
            assert_eq!(&locate_matrix_cell(&x).unwrap(), u);
            for w in &all {
                let full = in_matrix_schubert(&x, w, ConditionSet::Full).unwrap();
                let ess = in_matrix_schubert(&x, w, ConditionSet::Essential).unwrap();
                assert_eq!(full, ess, "x in cell {u}, w = {w}");
                assert_eq!(full, bruhat_leq(u, w).unwrap(), "x in cell {u}, w = {w}");
            }
        }
    }
    let all = PartialPermutation::all(4);
    for _ in 0..3000 {
        let u = all.choose(&mut rng).unwrap();
        let w = all.choose(&mut rng).unwrap();
        let x = sample_cell_point(&f, u, &mut rng).unwrap();
        let full = in_matrix_schubert(&x, w, ConditionSet::Full).unwrap();
        assert_eq!(full, in_matrix_schubert(&x, w, ConditionSet::Essential).unwrap());
        assert_eq!(full, bruhat_leq(u, w).unwrap());
    }
}

proptest! {
    #[test]
    fn essential_conditions_suffice_on_uniform_points((n, seed) in (1usize..=5, any::<u64>())) {
        // a small field makes rank drops, hence non-members, common
        let f = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Matrix::random(&f, n, n, &mut rng).unwrap();
        let all = PartialPermutation::all(n);
        let w = all.choose(&mut rng).unwrap();
        prop_assert_eq!(
            in_matrix_schubert(&x, w, ConditionSet::Full).unwrap(),
            in_matrix_schubert(&x, w, ConditionSet::Essential).unwrap()
        );
        let cell = locate_matrix_cell(&x).unwrap();
        prop_assert!(in_matrix_schubert(&x, &cell, ConditionSet::Full).unwrap());
        prop_assert_eq!(in_matrix_schubert(&x, w, ConditionSet::Full).unwrap(), bruhat_leq(&cell, w).unwrap());
    }

    #[test]
    fn flag_cells_are_borel_stable((n, seed) in (1usize..=5, any::<u64>())) {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let flag = Flag::new(Matrix::random(&f, n, n, &mut rng).unwrap()).unwrap();
        let cell = locate_flag_cell(&flag).unwrap();
        prop_assert!(cell.is_full());
        let b = Matrix::random_borel(&f, n, &mut rng).unwrap();
        prop_assert_eq!(locate_flag_cell(&flag.translate(&b).unwrap()).unwrap(), cell.clone());
        for w in PartialPermutation::all_full(n) {
            let member = in_flag_schubert(&flag, &w).unwrap();
            prop_assert_eq!(member, bruhat_leq(&cell, &w).unwrap());
            // G_w is the invertible part of the matrix Schubert variety
            prop_assert_eq!(member, in_matrix_schubert(flag.generator(), &w, ConditionSet::Full).unwrap());
        }
    }
}

#[test]
fn flag_cells_of_permutations() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for w in PartialPermutation::all_full(4) {
        let flag = Flag::of_permutation(&f, &w).unwrap();
        assert_eq!(locate_flag_cell(&flag).unwrap(), w);
        let moved = flag.translate(&Matrix::random_borel(&f, 4, &mut rng).unwrap()).unwrap();
        assert_eq!(locate_flag_cell(&moved).unwrap(), w);
    }
    let std = Flag::standard(&Rationals, 3);
    for w in PartialPermutation::all_full(3) {
        assert!(in_flag_schubert(&std, &w).unwrap());
    }
}

#[test]
fn grassmannian_cells_follow_the_index_order() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (d, n) in [(1, 3), (2, 4), (2, 5), (3, 6)] {
        let idx = grass_indices(d, n);
        for u in &idx {
            let v = grass_cell_point(&f, u, &mut rng);
            assert_eq!(&locate_grass_cell(&v), u);
            assert_eq!(&locate_grass_cell(&u.fixed_point(&f)), u);
            for w in &idx {
                let all = in_grass_schubert(&v, w, GrassConditions::All).unwrap();
                assert_eq!(all, in_grass_schubert(&v, w, GrassConditions::Minimal).unwrap(), "{u:?} in {w:?}");
                assert_eq!(all, u.le(w), "{u:?} in {w:?}");
            }
        }
    }
}

#[test]
fn grassmannian_example() {
    let q = Rationals;
    let v = Subspace::coordinate(&q, 4, &[2, 3]);
    assert!(!in_grass_schubert(&v, &GrassIndex::new(4, vec![1, 3]).unwrap(), GrassConditions::All).unwrap());
    assert!(in_grass_schubert(&v, &GrassIndex::new(4, vec![3, 4]).unwrap(), GrassConditions::All).unwrap());
    assert_eq!(locate_grass_cell(&v).seq(), &[3, 4]);
}
