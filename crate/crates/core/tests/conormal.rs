//! The conormal predicates checked against the covector conditions computed
//! from scratch: over the open orbit of `w` the conormal variety is the
//! conormal bundle, so membership there must match the annihilator of the
//! orbit's tangent space exactly.

use covex_core::conormal::{
    in_conormal_flag, in_conormal_grass, in_conormal_matrix, push_graph, springer_grass, tau_sharp,
    CotangentMatrixPoint, SpringerFlagPoint, SpringerGrassPoint,
};
use covex_core::embedding::EmbeddingTarget;
use covex_core::exactla::{Matrix, PrimeField, Subspace};
use covex_core::permcore::{is_covexillary, PartialPermutation};
use covex_core::suite::{grass_springer_formula, has_binding_negative_bound, padding_agreement};
use covex_core::varieties::{locate_grass_cell, locate_matrix_cell, sample_cell_point, Flag};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn covexillary(n: usize) -> Vec<PartialPermutation> {
    PartialPermutation::all(n).into_iter().filter(is_covexillary).collect()
}

/// Every `rows × cols` matrix over `F_p`.
fn all_matrices(f: &PrimeField, rows: usize, cols: usize) -> Vec<Matrix<PrimeField>> {
    let p = f.modulus();
    let count = p.pow((rows * cols) as u32);
    (0..count)
        .map(|mut code| {
            Matrix::from_fn(f, rows, cols, |_, _| {
                let e = code % p;
                code /= p;
                e
            })
        })
        .collect()
}

fn strictly_upper(f: &PrimeField, n: usize) -> Vec<Matrix<PrimeField>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let p = f.modulus();
    (0..p.pow(slots.len() as u32))
        .map(|mut code| {
            let mut m = Matrix::zeros(f, n, n);
            for &(i, j) in &slots {
                m.set(i, j, code % p);
                code /= p;
            }
            m
        })
        .collect()
}

fn in_fiber(x: &Matrix<PrimeField>, y: &Matrix<PrimeField>) -> bool {
    x.mul(y).unwrap().is_strictly_upper() && y.mul(x).unwrap().is_strictly_upper()
}

#[test]
fn matrix_predicate_is_exact_on_orbits_over_f3() {
    let f = PrimeField::new(3).unwrap();
    for n in 1..=2 {
        let everything = all_matrices(&f, n, n);
        for w in covexillary(n) {
            for x in everything.iter().filter(|x| locate_matrix_cell(x).unwrap() == w) {
                for y in &everything {
                    let pt = CotangentMatrixPoint::new(x.clone(), y.clone()).unwrap();
                    let got = in_conormal_matrix(&pt, &w).unwrap().member;
                    assert_eq!(got, in_fiber(x, y), "w = {w}, x = {x:?}, y = {y:?}");
                }
            }
        }
    }
}

#[test]
fn matrix_predicate_is_exact_on_sampled_orbits() {
    let f = PrimeField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 3..=4 {
        let pool = covexillary(n);
        for _ in 0..400 {
            let w = pool.choose(&mut rng).unwrap();
            let x = sample_cell_point(&f, w, &mut rng).unwrap();
            // half the covectors come from the fiber, half are uniform
            let fiber = covex_core::conormal::conormal_fiber_matrix(&x, w).unwrap();
            for y in [fiber.sample(&mut rng).unwrap(), Matrix::random(&f, n, n, &mut rng).unwrap()] {
                let pt = CotangentMatrixPoint::new(x.clone(), y.clone()).unwrap();
                assert_eq!(in_conormal_matrix(&pt, w).unwrap().member, in_fiber(&x, &y), "w = {w}");
            }
        }
    }
}

#[test]
fn flag_predicate_is_exact_on_orbits() {
    let f = PrimeField::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for (n, flags) in [(2, 40), (3, 60), (4, 8)] {
        let uppers = strictly_upper(&f, n);
        for _ in 0..flags {
            let g = loop {
                let g = Matrix::random(&f, n, n, &mut rng).unwrap();
                if g.inverse().is_some() {
                    break g;
                }
            };
            let w = locate_matrix_cell(&g).unwrap();
            if !is_covexillary(&w) {
                continue;
            }
            let gi = g.inverse().unwrap();
            for s in &uppers {
                let z = g.mul(s).unwrap().mul(&gi).unwrap();
                let pt = SpringerFlagPoint::new(Flag::new(g.clone()).unwrap(), z.clone()).unwrap();
                assert_eq!(in_conormal_flag(&pt, &w).unwrap().member, z.is_strictly_upper(), "w = {w}");
            }
            checked += 1;
        }
    }
    assert!(checked >= 60, "{checked} flags checked");
}

#[test]
fn grass_predicate_is_exact_on_the_open_cell() {
    let f = PrimeField::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for (n, points) in [(1, 10), (2, 30), (3, 6)] {
        let pool = covexillary(n);
        for _ in 0..points {
            let w = pool.choose(&mut rng).unwrap();
            let target = EmbeddingTarget::of(w).unwrap();
            let x0 = sample_cell_point(&f, w, &mut rng).unwrap();
            let v = target.embed_point(&x0).unwrap();
            if locate_grass_cell(&v) != target.grass_index().unwrap() {
                continue;
            }
            // x = B·M·K with Im(B) = V and ker(K) = V sweeps all of Hom(C^2n / V, V)
            let basis = v.basis_columns();
            let k = Matrix::from_rows(&f, v.annihilator().vectors()).unwrap();
            for m in all_matrices(&f, n, n) {
                let x = basis.mul(&m).unwrap().mul(&k).unwrap();
                let pt = SpringerGrassPoint::new(v.clone(), x.clone()).unwrap();
                let got = in_conormal_grass(&pt, &target.conditions).unwrap().member;
                assert_eq!(got, x.is_strictly_upper(), "w = {w}");
            }
            checked += 1;
        }
    }
    assert!(checked >= 25, "{checked} subspaces checked");
}

#[test]
fn springer_formula_matches_the_chain() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=4 {
        for w in covexillary(n) {
            let target = EmbeddingTarget::of(&w).unwrap();
            let x = sample_cell_point(&f, &w, &mut rng).unwrap();
            let y = Matrix::random(&f, n, n, &mut rng).unwrap();
            let pt = CotangentMatrixPoint::new(x.clone(), y.clone()).unwrap();
            let chained = springer_grass(&tau_sharp(&target, &push_graph(&pt).unwrap()).unwrap(), n).unwrap();
            let direct = grass_springer_formula(&target, &x, &y).unwrap();
            assert_eq!(chained, direct);
            assert!(direct.x.mul(&direct.x).unwrap().is_zero());
            assert_eq!(direct.v, target.embed_point(&x).unwrap());
        }
    }
}

#[test]
fn terminal_padding_does_not_matter() {
    let f = PrimeField::default();
    for n in 1..=4 {
        for (k, w) in covexillary(n).iter().enumerate() {
            assert!(!has_binding_negative_bound(w).unwrap(), "w = {w}");
            if n <= 3 || k % 5 == 0 {
                assert!(padding_agreement(w, &f, 4, k as u64).unwrap(), "w = {w}");
            }
        }
    }
    for w in covexillary(5) {
        assert!(!has_binding_negative_bound(&w).unwrap(), "w = {w}");
    }
}

#[test]
fn zero_section_and_invalid_springer_points() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for w in covexillary(3) {
        let x = sample_cell_point(&f, &w, &mut rng).unwrap();
        let zero = Matrix::zeros(&f, 3, 3);
        let pt = CotangentMatrixPoint::new(x, zero).unwrap();
        assert!(in_conormal_matrix(&pt, &w).unwrap().member);
    }
    let v = Subspace::coordinate(&f, 2, &[0]);
    let bad = Matrix::from_i64_rows(&f, &[&[0, 0], &[1, 0]]);
    assert!(SpringerGrassPoint::new(v, bad).is_err());
}
