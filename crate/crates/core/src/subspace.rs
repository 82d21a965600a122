//! Right subspaces of `F^n`, stored as a matrix whose columns are a basis.
//!
//! Scalars act on the right, matching column spaces `{M x}` and null spaces
//! `{x : M x = 0}` over a noncommutative ring.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// The span of the columns of `m`.
    pub fn span(m: &Matrix) -> Subspace {
        Subspace {
            basis: m.columns(&m.pivot_columns()),
        }
    }

    pub fn zero(ring: Ring, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(ring, ambient, 0),
        }
    }

    pub fn full(ring: Ring, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(ring, ambient),
        }
    }

    pub fn kernel(m: &Matrix) -> Subspace {
        Subspace {
            basis: m.right_null_space(),
        }
    }

    /// `{x : a x in col(b)}`.
    pub fn preimage(a: &Matrix, b: &Matrix) -> Result<Subspace> {
        let stacked = Matrix::hstack(&[a, &b.neg()])?;
        let null = stacked.right_null_space();
        Ok(Subspace::span(&null.row_range(0, a.cols())))
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn ring(&self) -> Ring {
        self.basis.ring()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&Matrix::hstack(&[&self.basis, &other.basis]).expect("same ambient space"))
    }

    pub fn sum_all(ring: Ring, ambient: usize, parts: &[&Subspace]) -> Subspace {
        parts.iter().fold(Subspace::zero(ring, ambient), |acc, s| acc.sum(s))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let stacked = Matrix::hstack(&[&self.basis, &other.basis.neg()]).expect("same ambient space");
        let null = stacked.right_null_space();
        let coeffs = null.row_range(0, self.dim());
        Subspace::span(&self.basis.matmul(&coeffs).expect("conformable"))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    /// A basis of some `X` with `self ⊕ X = within`; needs `self ⊆ within`.
    pub fn complement_in(&self, within: &Subspace) -> Result<Matrix> {
        if !within.contains(self) {
            return Err(Error::internal("complement of a subspace not contained in its ambient"));
        }
        let stacked = Matrix::hstack(&[&self.basis, &within.basis])?;
        let extra: Vec<usize> = stacked
            .pivot_columns()
            .into_iter()
            .filter(|&c| c >= self.dim())
            .collect();
        Ok(stacked.columns(&extra))
    }

    /// A basis of some `X` with `self ⊕ X = F^n`.
    pub fn complement(&self) -> Matrix {
        self.complement_in(&Subspace::full(self.ring(), self.ambient()))
            .expect("every subspace lies in the ambient space")
    }

    /// Splits each column `v` of `vectors` as `u + w` with `u` in `self` and
    /// `w` in `other`; returns `(u-parts, w-parts)`. The sum must be direct
    /// on the relevant vectors for the split to be unique.
    pub fn split(&self, other: &Subspace, vectors: &Matrix) -> Result<(Matrix, Matrix)> {
        let both = Matrix::hstack(&[&self.basis, &other.basis])?;
        let coeffs = both
            .solve_right(vectors)?
            .ok_or_else(|| Error::internal("vector outside the sum it was split over"))?;
        let u = self.basis.matmul(&coeffs.row_range(0, self.dim()))?;
        let w = other.basis.matmul(&coeffs.row_range(self.dim(), coeffs.rows()))?;
        Ok((u, w))
    }
}
