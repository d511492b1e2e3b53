use covex_core::embedding::{check_rank_lemma, graph_embed, weight_map, EmbeddingTarget, Weight};
use covex_core::exactla::{Matrix, PrimeField, Rationals, Subspace};
use covex_core::permcore::{diagram, is_covexillary, PartialPermutation};
use covex_core::varieties::{in_matrix_schubert, locate_grass_cell, sample_cell_point, ConditionSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn covexillary(n: usize) -> Vec<PartialPermutation> {
    PartialPermutation::all(n).into_iter().filter(is_covexillary).collect()
}

#[test]
fn tau_inverse_sends_flag_members_to_interleaved_blocks() {
    let q = Rationals;
    for n in 1..=5 {
        for w in covexillary(n) {
            let target = EmbeddingTarget::of(&w).unwrap();
            let tau = target.tau.image();
            let inv = target.tau.inverse().unwrap().matrix(&q);
            for (&(p, qq, _), &t) in target.data.triples().iter().zip(&target.data.t()) {
                let expect: Vec<usize> = (0..qq).chain(n..n + p).collect();
                let got: Vec<usize> = (0..2 * n).filter(|&k| tau[k] <= t).collect();
                assert_eq!(got, expect, "w = {w}, t = {t}");
                let image = Subspace::standard(&q, 2 * n, t).image(&inv).unwrap();
                assert_eq!(image, Subspace::coordinate(&q, 2 * n, &expect));
            }
        }
    }
}

#[test]
fn running_example() {
    let w: PartialPermutation = "2143".parse().unwrap();
    let target = EmbeddingTarget::of(&w).unwrap();
    assert_eq!(target.tau.to_string(), "12563478");
    let expect = [Weight::Y(1), Weight::Y(2), Weight::X(1), Weight::X(2), Weight::Y(3), Weight::Y(4), Weight::X(3), Weight::X(4)];
    assert_eq!(weight_map(&target), expect);
}

#[test]
fn generic_points_land_in_the_open_cell() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=4 {
        for w in covexillary(n) {
            let target = EmbeddingTarget::of(&w).unwrap();
            let v_hat = target.grass_index().unwrap();
            // τ ∘ h is an open embedding, so dimensions match
            assert_eq!(v_hat.dim(), n * n - diagram(&w).len(), "w = {w}");
            let x = sample_cell_point(&f, &w, &mut rng).unwrap();
            assert_eq!(locate_grass_cell(&target.embed_point(&x).unwrap()), v_hat, "w = {w}");
            let zero = Matrix::zeros(&f, n, n);
            assert_eq!(target.embed_point(&zero).unwrap(), target.base_point(&f));
            assert!(target.contains(&target.base_point(&f)).unwrap());
        }
    }
}

#[test]
fn membership_is_preserved_on_uniform_points() {
    let f = PrimeField::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=4 {
        let pool = covexillary(n);
        for _ in 0..2000 {
            let w = pool.choose(&mut rng).unwrap();
            let target = EmbeddingTarget::of(w).unwrap();
            let x = Matrix::random(&f, n, n, &mut rng).unwrap();
            assert_eq!(
                in_matrix_schubert(&x, w, ConditionSet::Full).unwrap(),
                target.contains(&target.embed_point(&x).unwrap()).unwrap(),
                "w = {w}"
            );
        }
    }
}

proptest! {
    #[test]
    fn rank_lemma_sides_agree((n, p, q, r, seed) in (1usize..=5, 0usize..=5, 0usize..=5, 0usize..=5, any::<u64>())) {
        let f = PrimeField::new(3).unwrap();
        let x = Matrix::random(&f, n, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let (lhs, rhs) = check_rank_lemma(&x, p.min(n), q.min(n), r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graph_is_injective((n, seed) in (1usize..=4, any::<u64>())) {
        let f = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::random(&f, n, n, &mut rng).unwrap();
        let b = Matrix::random(&f, n, n, &mut rng).unwrap();
        let (ha, hb) = (graph_embed(&a).unwrap(), graph_embed(&b).unwrap());
        prop_assert_eq!(ha.dim(), n);
        prop_assert_eq!(ha == hb, a == b);
    }
}
