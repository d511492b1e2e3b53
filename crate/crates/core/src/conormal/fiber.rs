use rand::Rng;

use crate::exactla::{Field, Matrix, Subspace};
use crate::permcore::PartialPermutation;
use crate::varieties::{locate_matrix_cell, Flag};
use crate::{Error, Result};

/// A linear space of `n × n` matrices, stored as a subspace of `F^{n²}`
/// in row-major coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSpace<F: Field> {
    n: usize,
    space: Subspace<F>,
}

impl<F: Field> MatrixSpace<F> {
    pub fn from_kernel(field: &F, n: usize, system: &Matrix<F>) -> Self {
        let ker = system.kernel();
        let space = Subspace::from_vectors(field, n * n, &ker).expect("kernel vectors have length n^2");
        Self { n, space }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn basis(&self) -> Vec<Matrix<F>> {
        let f = self.space.field();
        self.space
            .vectors()
            .iter()
            .map(|v| Matrix::from_fn(f, self.n, self.n, |a, b| v[a * self.n + b].clone()))
            .collect()
    }

    pub fn contains(&self, m: &Matrix<F>) -> Result<bool> {
        if m.shape() != (self.n, self.n) {
            return Err(Error::Size(format!("expected {0}x{0}", self.n)));
        }
        let flat: Vec<F::Elem> = (0..self.n).flat_map(|a| m.row(a).to_vec()).collect();
        Ok(self.space.contains_vector(&flat)?)
    }

    /// Uniform random element: a random combination of the basis.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Matrix<F>> {
        let f = self.space.field().clone();
        let mut acc = Matrix::zeros(&f, self.n, self.n);
        for b in self.basis() {
            let c = f.sample(rng)?;
            acc = acc.add(&b.scale(&c))?;
        }
        Ok(acc)
    }
}

/// Coefficient row of `(a · Y · c)_{ij}` in the unknown entries of `Y`.
fn bilinear_row<F: Field>(a: &Matrix<F>, c: &Matrix<F>, i: usize, j: usize) -> Vec<F::Elem> {
    let f = a.field();
    let n = a.rows();
    let mut row = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            row.push(f.mul(a.get(i, s), c.get(t, j)));
        }
    }
    row
}

/// The space of `Y` with `a_k · Y · c_k` strictly upper triangular for every `k`.
fn strictly_upper_solutions<F: Field>(field: &F, n: usize, constraints: &[(Matrix<F>, Matrix<F>)]) -> MatrixSpace<F> {
    let mut rows = Vec::new();
    for (a, c) in constraints {
        for i in 0..n {
            for j in 0..=i {
                rows.push(bilinear_row(a, c, i, j));
            }
        }
    }
    let system = Matrix::from_fn(field, rows.len(), n * n, |r, k| rows[r][k].clone());
    MatrixSpace::from_kernel(field, n, &system)
}

/// `{y : xy and yx strictly upper triangular}`, the covectors annihilating
/// the tangent space `{ux + xv : u, v ∈ b}` of the orbit of `x`.
pub fn conormal_fiber_matrix<F: Field>(x: &Matrix<F>, w: &PartialPermutation) -> Result<MatrixSpace<F>> {
    let n = w.n();
    if x.shape() != (n, n) {
        return Err(Error::Size(format!("point is {}x{}, permutation has n = {n}", x.rows(), x.cols())));
    }
    let cell = locate_matrix_cell(x)?;
    if &cell != w {
        return Err(Error::NotInCell(format!("x lies in the cell of {cell}, not {w}")));
    }
    let f = x.field();
    let id = Matrix::identity(f, n);
    Ok(strictly_upper_solutions(f, n, &[(x.clone(), id.clone()), (id, x.clone())]))
}

/// `{z : z and g⁻¹zg strictly upper triangular}`, the conormal fiber of the
/// `B`-orbit of `gE_•` in Springer form.
pub fn conormal_fiber_flag<F: Field>(g: &Matrix<F>, w: &PartialPermutation) -> Result<MatrixSpace<F>> {
    let flag = Flag::new(g.clone())?;
    let cell = locate_matrix_cell(flag.generator())?;
    if &cell != w {
        return Err(Error::NotInCell(format!("flag lies in the cell of {cell}, not {w}")));
    }
    let f = g.field();
    let n = g.rows();
    let gi = g.inverse().ok_or(crate::exactla::LinalgError::Singular)?;
    let id = Matrix::identity(f, n);
    Ok(strictly_upper_solutions(f, n, &[(id.clone(), id), (gi, g.clone())]))
}

/// Rank of `(u, v) ↦ ux + xv` on pairs of upper triangular matrices: the
/// dimension of the tangent space to the `B × B` orbit of `x`.
pub fn tangent_rank<F: Field>(x: &Matrix<F>) -> Result<usize> {
    if !x.is_square() {
        return Err(Error::Size("tangent rank needs a square matrix".into()));
    }
    let f = x.field();
    let n = x.rows();
    let mut columns: Vec<Vec<F::Elem>> = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut e = Matrix::zeros(f, n, n);
            e.set(a, b, f.one());
            for img in [e.mul(x)?, x.mul(&e)?] {
                columns.push((0..n).flat_map(|r| img.row(r).to_vec()).collect());
            }
        }
    }
    Ok(Matrix::from_columns(f, n * n, &columns).rank())
}
