//! Representations of the Kronecker quiver K_r and elementary operations on them.

mod dim;
mod group;
pub mod io;
mod models;
mod subspace;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

pub use dim::{euler_form, tits_form, DimVector};
pub use group::GroupElement;
pub use models::{i0, i1, p0, p1, s1, s2, StdModels};
pub use subspace::SubspaceMap;

use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Scalar};

/// A representation of K_r: `r` matrices of shape `dim.y × dim.x`, one per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KroneckerRep {
    r: usize,
    dim: DimVector,
    maps: Vec<Matrix>,
}

impl KroneckerRep {
    /// Validated constructor.
    pub fn new(r: usize, dim: DimVector, maps: Vec<Matrix>) -> Result<Self> {
        let rep = KroneckerRep { r, dim, maps };
        rep.validate()?;
        Ok(rep)
    }

    /// Constructor for maps already known to have the right shapes.
    pub(crate) fn from_parts(r: usize, dim: DimVector, maps: Vec<Matrix>) -> Self {
        debug_assert!(KroneckerRep { r, dim, maps: maps.clone() }.validate().is_ok());
        KroneckerRep { r, dim, maps }
    }

    /// Representation with all structure maps zero.
    pub fn zero_maps(r: usize, dim: DimVector) -> Self {
        KroneckerRep { r, dim, maps: vec![Matrix::zeros(dim.y, dim.x); r] }
    }

    /// The zero object.
    pub fn zero(r: usize) -> Self {
        KroneckerRep::zero_maps(r, DimVector::new(0, 0))
    }

    /// Random representation with integer entries in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(r: usize, dim: DimVector, bound: i64, rng: &mut R) -> Self {
        let maps = (0..r).map(|_| Matrix::from_fn(dim.y, dim.x, |_, _| int(rng.gen_range(-bound..=bound)))).collect();
        KroneckerRep { r, dim, maps }
    }

    /// Checks the shape invariants.
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidRep("arrow count must be at least 1".into()));
        }
        if self.maps.len() != self.r {
            return Err(Error::InvalidRep(format!("expected {} maps, found {}", self.r, self.maps.len())));
        }
        for (i, m) in self.maps.iter().enumerate() {
            if m.shape() != (self.dim.y, self.dim.x) {
                return Err(Error::InvalidRep(format!(
                    "map {i} has shape {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    self.dim.y,
                    self.dim.x
                )));
            }
        }
        Ok(())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> DimVector {
        self.dim
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &Matrix {
        &self.maps[i]
    }

    pub fn is_zero_object(&self) -> bool {
        self.dim.x == 0 && self.dim.y == 0
    }

    /// ψ_M as the `y × r·x` concatenation `[M_1 | … | M_r]`.
    pub fn psi(&self) -> Matrix {
        let refs: Vec<&Matrix> = self.maps.iter().collect();
        Matrix::hconcat(&refs).expect("maps share a shape")
    }

    /// η_M as the `r·y × x` stack `[M_1; …; M_r]`.
    pub fn eta(&self) -> Matrix {
        let refs: Vec<&Matrix> = self.maps.iter().collect();
        Matrix::vconcat(&refs).expect("maps share a shape")
    }

    fn check_arrows(&self, other: usize) -> Result<()> {
        if self.r != other {
            return Err(Error::ArrowMismatch { left: self.r, right: other });
        }
        Ok(())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &KroneckerRep) -> Result<KroneckerRep> {
        self.check_arrows(other.r)?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| Matrix::block_diag(a, b)).collect();
        Ok(KroneckerRep { r: self.r, dim: self.dim + other.dim, maps })
    }

    /// Direct sum of `k` copies.
    pub fn power(&self, k: usize) -> KroneckerRep {
        (0..k).fold(KroneckerRep::zero(self.r), |acc, _| acc.direct_sum(self).expect("same arrow count"))
    }

    /// Duality: swaps the vertices and transposes every map.
    pub fn dual(&self) -> KroneckerRep {
        KroneckerRep { r: self.r, dim: self.dim.swapped(), maps: self.maps.iter().map(Matrix::transpose).collect() }
    }

    /// Restriction along an arbitrary `r × d` matrix α: `maps'[j] = Σ_i α[i][j]·maps[i]`.
    pub fn restrict_along(&self, alpha: &Matrix) -> Result<KroneckerRep> {
        if alpha.nrows() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "subspace map has {} rows but the representation has {} arrows",
                alpha.nrows(),
                self.r
            )));
        }
        let d = alpha.ncols();
        let maps = (0..d).map(|j| self.combine(|i| alpha.get(i, j).clone())).collect();
        Ok(KroneckerRep { r: d, dim: self.dim, maps })
    }

    /// Restriction along the canonical representative of a subspace.
    pub fn restrict(&self, alpha: &SubspaceMap) -> Result<KroneckerRep> {
        self.restrict_along(alpha.cols())
    }

    /// `Σ_i c(i)·maps[i]`.
    pub fn combine(&self, c: impl Fn(usize) -> Scalar) -> Matrix {
        let mut out = Matrix::zeros(self.dim.y, self.dim.x);
        for (i, m) in self.maps.iter().enumerate() {
            let ci = c(i);
            if ci.is_zero() {
                continue;
            }
            let term = if ci.is_one() { m.clone() } else { m.scale(&ci) };
            out = &out + &term;
        }
        out
    }

    /// Extends by zero maps to `r` arrows.
    pub fn inflate(&self, r: usize) -> Result<KroneckerRep> {
        if r < self.r {
            return Err(Error::Precondition(format!("cannot inflate from {} to {r} arrows", self.r)));
        }
        let mut maps = self.maps.clone();
        maps.resize(r, Matrix::zeros(self.dim.y, self.dim.x));
        Ok(KroneckerRep { r, dim: self.dim, maps })
    }

    /// The GL(A_r) action: `maps'[i] = Σ_j (g⁻¹)[j][i]·maps[j]`.
    pub fn act(&self, g: &GroupElement) -> Result<KroneckerRep> {
        self.check_arrows(g.r())?;
        let ginv = g.inverse_matrix();
        let maps = (0..self.r).map(|i| self.combine(|j| ginv.get(j, i).clone())).collect();
        Ok(KroneckerRep { r: self.r, dim: self.dim, maps })
    }

    /// Rank of ψ restricted to `v ⊗ M_1`, and whether it is injective there.
    pub fn rank_at_subspace(&self, v: &SubspaceMap) -> Result<(usize, bool)> {
        let res = self.restrict(v)?;
        let rank = res.psi().rank();
        Ok((rank, rank == v.d() * self.dim.x))
    }

    /// An isomorphic copy with integer maps: every map is multiplied by the lcm of all
    /// denominators (the scaling `(id, c·id)` is an isomorphism).
    pub fn integerized(&self) -> KroneckerRep {
        let l = self.maps.iter().fold(BigInt::one(), |acc, m| num_integer::lcm(acc, m.denominator_lcm()));
        if l.is_one() {
            return self.clone();
        }
        let c = Scalar::from_integer(l);
        KroneckerRep { r: self.r, dim: self.dim, maps: self.maps.iter().map(|m| m.scale(&c)).collect() }
    }

    /// `Σ_i im M(γ_i)` as a dimension.
    pub fn image_sum_dim(&self) -> usize {
        self.psi().rank()
    }
}
