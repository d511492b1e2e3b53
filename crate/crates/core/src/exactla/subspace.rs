use super::field::Field;
use super::matrix::Matrix;
use super::LinalgError;

/// Linear subspace of `F^N`, stored canonically: the basis vectors are the
/// nonzero rows of the reduced row echelon form of any spanning set.
/// Equal subspaces therefore have identical stored bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self::from_rows(Matrix::identity(field, ambient))
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: Matrix<F>) -> Self {
        let ambient = m.cols();
        let echelon = m.echelon();
        let d = echelon.pivots.len();
        Self {
            ambient,
            basis: echelon.reduced.block(0, d, 0, ambient),
            pivots: echelon.pivots,
        }
    }

    /// Column span of `m`.
    pub fn column_span(m: &Matrix<F>) -> Self {
        Self::from_rows(m.transpose())
    }

    pub fn from_vectors(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Result<Self, LinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LinalgError::AmbientMismatch { left: ambient, right: v.len() });
        }
        Ok(Self::from_rows(Matrix::from_fn(field, vectors.len(), ambient, |i, j| vectors[i][j].clone())))
    }

    /// `⟨e_k : k ∈ indices⟩`, indices 0-based.
    pub fn coordinate(field: &F, ambient: usize, indices: &[usize]) -> Self {
        let m = Matrix::from_fn(field, indices.len(), ambient, |i, j| {
            if indices[i] == j {
                field.one()
            } else {
                field.zero()
            }
        });
        Self::from_rows(m)
    }

    /// The standard flag member `E_k = ⟨e_1, …, e_k⟩`.
    pub fn standard(field: &F, ambient: usize, k: usize) -> Self {
        let idx: Vec<usize> = (0..k).collect();
        Self::coordinate(field, ambient, &idx)
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as rows (reduced echelon form).
    pub fn basis_rows(&self) -> &Matrix<F> {
        &self.basis
    }

    /// Basis vectors as the columns of an `N × d` matrix.
    pub fn basis_columns(&self) -> Matrix<F> {
        self.basis.transpose()
    }

    pub fn vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.to_rows()
    }

    fn check(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        Ok(Self::from_rows(self.basis.vstack(&other.basis)?))
    }

    /// `dim(V + W)` without building the canonical basis.
    pub fn dim_sum(&self, other: &Self) -> Result<usize, LinalgError> {
        self.check(other)?;
        Ok(self.basis.vstack(&other.basis)?.rank())
    }

    /// Vectors annihilated by every basis vector under the standard pairing.
    pub fn annihilator(&self) -> Self {
        let ker = self.basis.kernel();
        let f = self.field().clone();
        Self::from_vectors(&f, self.ambient, &ker).expect("kernel vectors have ambient length")
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let stacked = a.basis.vstack(&b.basis)?;
        let f = self.field().clone();
        Ok(Self::from_vectors(&f, self.ambient, &stacked.kernel())?)
    }

    /// `dim((V + W) / W)`.
    pub fn dim_quotient(&self, w: &Self) -> Result<usize, LinalgError> {
        Ok(self.dim_sum(w)? - w.dim())
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::AmbientMismatch { left: self.ambient, right: v.len() });
        }
        let row = Matrix::from_fn(self.field(), 1, v.len(), |_, j| v[j].clone());
        Ok(self.basis.vstack(&row)?.rank() == self.dim())
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        Ok(self.dim_sum(other)? == other.dim())
    }

    /// Image under `a` (an `M × N` matrix).
    pub fn image(&self, a: &Matrix<F>) -> Result<Self, LinalgError> {
        if a.cols() != self.ambient {
            return Err(LinalgError::AmbientMismatch { left: self.ambient, right: a.cols() });
        }
        Ok(Self::column_span(&a.mul(&self.basis_columns())?))
    }
}
