use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{int, Matrix};

/// An element of GL(A_r), stored with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    g: Matrix,
    ginv: Matrix,
}

impl GroupElement {
    pub fn new(g: Matrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "group element must be square, got {}x{}",
                g.nrows(),
                g.ncols()
            )));
        }
        let ginv = g.inverse().ok_or(Error::Singular)?;
        Ok(GroupElement { g, ginv })
    }

    pub fn identity(r: usize) -> Self {
        GroupElement { g: Matrix::identity(r), ginv: Matrix::identity(r) }
    }

    /// Random invertible integer matrix with entries in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(r: usize, bound: i64, rng: &mut R) -> Self {
        loop {
            let g = Matrix::from_fn(r, r, |_, _| int(rng.gen_range(-bound..=bound)));
            if let Ok(e) = GroupElement::new(g) {
                return e;
            }
        }
    }

    pub fn r(&self) -> usize {
        self.g.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.g
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.ginv
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { g: self.ginv.clone(), ginv: self.g.clone() }
    }

    /// Matrix transpose in the basis γ_1, …, γ_r.
    pub fn transpose(&self) -> GroupElement {
        GroupElement { g: self.g.transpose(), ginv: self.ginv.transpose() }
    }

    /// `self · other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement { g: &self.g * &other.g, ginv: &other.ginv * &self.ginv }
    }
}
