use crate::embedding::EmbeddingTarget;
use crate::exactla::{Field, LinalgError, Matrix, Subspace};
use crate::varieties::Flag;
use crate::{Error, Result};

/// A point `(x, α_y)` of `T*g`, with `α_y = tr(y ·)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotangentMatrixPoint<F: Field> {
    pub x: Matrix<F>,
    pub y: Matrix<F>,
}

impl<F: Field> CotangentMatrixPoint<F> {
    pub fn new(x: Matrix<F>, y: Matrix<F>) -> Result<Self> {
        if !x.is_square() || x.shape() != y.shape() {
            return Err(Error::Size(format!(
                "x is {}x{}, y is {}x{}",
                x.rows(),
                x.cols(),
                y.rows(),
                y.cols()
            )));
        }
        Ok(Self { x, y })
    }
}

/// A point of `T*Fl` in Springer form: a flag and `z` with `zF_i ⊆ F_{i−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerFlagPoint<F: Field> {
    pub flag: Flag<F>,
    pub z: Matrix<F>,
}

impl<F: Field> SpringerFlagPoint<F> {
    pub fn new(flag: Flag<F>, z: Matrix<F>) -> Result<Self> {
        let n = flag.n();
        if z.shape() != (n, n) {
            return Err(Error::Size(format!("z is {}x{}, flag has n = {n}", z.rows(), z.cols())));
        }
        let mut prev = Subspace::zero(z.field(), n);
        for i in 1..=n {
            let cur = flag.member(i);
            if !cur.image(&z)?.is_subspace_of(&prev)? {
                return Err(Error::Invariant(format!("z F_{i} is not contained in F_{}", i - 1)));
            }
            prev = cur;
        }
        Ok(Self { flag, z })
    }
}

/// A point of `T*Gr(d, N)` in Springer form: `Im(x) ⊆ V ⊆ ker(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerGrassPoint<F: Field> {
    pub v: Subspace<F>,
    pub x: Matrix<F>,
}

impl<F: Field> SpringerGrassPoint<F> {
    pub fn new(v: Subspace<F>, x: Matrix<F>) -> Result<Self> {
        let n = v.ambient();
        if x.shape() != (n, n) {
            return Err(Error::Size(format!("x is {}x{}, ambient is {n}", x.rows(), x.cols())));
        }
        if !Subspace::column_span(&x).is_subspace_of(&v)? {
            return Err(Error::Invariant("Im(x) is not contained in V".into()));
        }
        if v.image(&x)?.dim() != 0 {
            return Err(Error::Invariant("V is not contained in ker(x)".into()));
        }
        Ok(Self { v, x })
    }
}

/// Group coordinates `(g, u)` on a cotangent bundle of a homogeneous space;
/// the Springer map sends them to `(g·base, g u g⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCotangent<F: Field> {
    pub g: Matrix<F>,
    pub u: Matrix<F>,
}

/// `(g, α_y) ↦ (g, α_{y g⁻¹})`, from `T*G` into `T*g` along `G ⊂ g`.
pub fn push_iota<F: Field>(g: &Matrix<F>, y: &Matrix<F>) -> Result<CotangentMatrixPoint<F>> {
    let gi = g.inverse().ok_or(LinalgError::Singular)?;
    CotangentMatrixPoint::new(g.clone(), y.mul(&gi)?)
}

/// `(x, α_y) ↦ (h₁(x), θ*(α_y))` with `h₁(x) = ((I, 0), (x, I))` and
/// `θ*(α_y) = ((0, y), (0, 0))`.
pub fn push_graph<F: Field>(pt: &CotangentMatrixPoint<F>) -> Result<GroupCotangent<F>> {
    let f = pt.x.field();
    let n = pt.x.rows();
    let id = Matrix::identity(f, n);
    let zero = Matrix::zeros(f, n, n);
    Ok(GroupCotangent {
        g: Matrix::from_blocks(&id, &zero, &pt.x, &id)?,
        u: Matrix::from_blocks(&zero, &pt.y, &zero, &zero)?,
    })
}

/// Left translation by `τ`.
pub fn tau_sharp<F: Field>(target: &EmbeddingTarget, gc: &GroupCotangent<F>) -> Result<GroupCotangent<F>> {
    let tau = target.tau_matrix(gc.g.field());
    Ok(GroupCotangent { g: tau.mul(&gc.g)?, u: gc.u.clone() })
}

/// `(g, u) ↦ (g E_d, g u g⁻¹)`; the Springer invariants are checked.
pub fn springer_grass<F: Field>(gc: &GroupCotangent<F>, d: usize) -> Result<SpringerGrassPoint<F>> {
    let gi = gc.g.inverse().ok_or(LinalgError::Singular)?;
    let v = Subspace::column_span(&gc.g.block(0, gc.g.rows(), 0, d));
    SpringerGrassPoint::new(v, gc.g.mul(&gc.u)?.mul(&gi)?)
}

/// `(g, y) ↦ (g E_•, g y g⁻¹)`; the Springer invariant is checked.
pub fn springer_flag<F: Field>(g: &Matrix<F>, y: &Matrix<F>) -> Result<SpringerFlagPoint<F>> {
    let gi = g.inverse().ok_or(LinalgError::Singular)?;
    SpringerFlagPoint::new(Flag::new(g.clone())?, g.mul(y)?.mul(&gi)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn iota_examples() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y = Matrix::random(&f, 3, 3, &mut rng).unwrap();
        let pt = push_iota(&Matrix::identity(&f, 3), &y).unwrap();
        assert_eq!(pt.y, y);
        let g = Matrix::random_borel(&f, 3, &mut rng).unwrap();
        let pt = push_iota(&g, &y).unwrap();
        assert_eq!(pt.y.mul(&g).unwrap(), y);
        assert!(push_iota(&g, &Matrix::zeros(&f, 3, 3)).unwrap().y.is_zero());
    }

    #[test]
    fn graph_push_examples() {
        let q = Rationals;
        let y = Matrix::from_i64_rows(&q, &[&[1, 2], &[3, 4]]);
        let gc = push_graph(&CotangentMatrixPoint::new(Matrix::zeros(&q, 2, 2), y).unwrap()).unwrap();
        assert_eq!(gc.g, Matrix::identity(&q, 4));
        let pt = springer_grass(&gc, 2).unwrap();
        assert_eq!(pt.v, Subspace::standard(&q, 4, 2));
        assert_eq!(pt.x, gc.u);
        let gc = push_graph(&CotangentMatrixPoint::new(Matrix::identity(&q, 2), Matrix::zeros(&q, 2, 2)).unwrap()).unwrap();
        assert!(gc.u.is_zero());
        assert!(springer_grass(&gc, 2).unwrap().x.is_zero());
    }

    #[test]
    fn springer_invariants_are_enforced() {
        let q = Rationals;
        let flag = Flag::standard(&q, 2);
        let lower = Matrix::from_i64_rows(&q, &[&[0, 0], &[1, 0]]);
        assert_eq!(
            SpringerFlagPoint::new(flag.clone(), lower).unwrap_err(),
            Error::Invariant("z F_1 is not contained in F_0".into())
        );
        let upper = Matrix::from_i64_rows(&q, &[&[0, 1], &[0, 0]]);
        assert!(SpringerFlagPoint::new(flag, upper.clone()).is_ok());
        let v = Subspace::standard(&q, 2, 1);
        assert!(SpringerGrassPoint::new(v, upper).is_ok());
        let v = Subspace::coordinate(&q, 2, &[1]);
        assert!(SpringerGrassPoint::new(v, Matrix::from_i64_rows(&q, &[&[0, 1], &[0, 0]])).is_err());
    }
}
