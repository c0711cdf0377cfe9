//! Shift functors σ, σ⁻¹ on objects and morphisms, AR translates, and the adjunction
//! transport between `σ⁻¹∘inf` and `σ∘res`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{DimVector, KroneckerRep, SubspaceMap};

/// A morphism `(f1, f2): source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismPair {
    pub source: KroneckerRep,
    pub target: KroneckerRep,
    pub f1: Matrix,
    pub f2: Matrix,
}

impl MorphismPair {
    /// Checked constructor: shapes and `f2·S_i = T_i·f1` for every arrow.
    pub fn new(source: KroneckerRep, target: KroneckerRep, f1: Matrix, f2: Matrix) -> Result<Self> {
        let f = MorphismPair { source, target, f1, f2 };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn from_parts(source: KroneckerRep, target: KroneckerRep, f1: Matrix, f2: Matrix) -> Self {
        MorphismPair { source, target, f1, f2 }
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (self.source.dim(), self.target.dim());
        if self.source.r() != self.target.r() {
            return Err(Error::ArrowMismatch { left: self.source.r(), right: self.target.r() });
        }
        if self.f1.shape() != (t.x, s.x) || self.f2.shape() != (t.y, s.y) {
            return Err(Error::DimensionMismatch(format!(
                "morphism components have shapes {:?} and {:?}, expected ({}, {}) and ({}, {})",
                self.f1.shape(),
                self.f2.shape(),
                t.x,
                s.x,
                t.y,
                s.y
            )));
        }
        for i in 0..self.source.r() {
            let lhs = &self.f2 * self.source.map(i);
            let rhs = self.target.map(i) * &self.f1;
            if lhs != rhs {
                return Err(Error::Precondition(format!("pair does not intertwine arrow {i}")));
            }
        }
        Ok(())
    }

    pub fn identity(m: &KroneckerRep) -> Self {
        MorphismPair {
            source: m.clone(),
            target: m.clone(),
            f1: Matrix::identity(m.dim().x),
            f2: Matrix::identity(m.dim().y),
        }
    }

    pub fn zero(source: &KroneckerRep, target: &KroneckerRep) -> Self {
        MorphismPair {
            source: source.clone(),
            target: target.clone(),
            f1: Matrix::zeros(target.dim().x, source.dim().x),
            f2: Matrix::zeros(target.dim().y, source.dim().y),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MorphismPair) -> Result<MorphismPair> {
        if self.target != other.source {
            return Err(Error::Precondition("composable morphisms required".into()));
        }
        Ok(MorphismPair {
            source: self.source.clone(),
            target: other.target.clone(),
            f1: other.f1.checked_mul(&self.f1)?,
            f2: other.f2.checked_mul(&self.f2)?,
        })
    }

    /// Both components are invertible.
    pub fn is_isomorphism(&self) -> bool {
        let (s, t) = (self.source.dim(), self.target.dim());
        s == t && self.f1.rank() == s.x && self.f2.rank() == s.y
    }
}

/// Shift direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Plus,
    Minus,
}

/// A shifted representation with the basis data that realizes it.
///
/// For σ, `basis` has as columns a basis of `ker ψ_M ⊆ A_r ⊗ M_1`. For σ⁻¹, `basis`
/// is the projection `A_r ⊗ M_2 → coker η_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftWitness {
    pub rep: KroneckerRep,
    pub basis: Matrix,
    pub direction: Direction,
}

/// σ(M): dims `(nullity ψ_M, x)`, `maps[i]` = block row `i` of the kernel basis.
pub fn shift_plus(m: &KroneckerRep) -> ShiftWitness {
    let (r, x) = (m.r(), m.dim().x);
    let k = m.psi().kernel_basis();
    let n = k.ncols();
    let maps = (0..r).map(|i| k.block(i * x, x, 0, n)).collect();
    ShiftWitness { rep: KroneckerRep::from_parts(r, DimVector::new(n, x), maps), basis: k, direction: Direction::Plus }
}

/// σ⁻¹(M): dims `(y, r·y − rank η_M)`; the projection is `Q = kernel_basis(η_Mᵀ)ᵀ`
/// and `maps[i]` is its column block `i`.
pub fn shift_minus(m: &KroneckerRep) -> ShiftWitness {
    let (r, y) = (m.r(), m.dim().y);
    let q = m.eta().transpose().kernel_basis().transpose();
    let c = q.nrows();
    let maps = (0..r).map(|i| q.block(0, c, i * y, y)).collect();
    ShiftWitness { rep: KroneckerRep::from_parts(r, DimVector::new(y, c), maps), basis: q, direction: Direction::Minus }
}

/// τ = σ∘σ.
pub fn tau(m: &KroneckerRep) -> KroneckerRep {
    shift_plus(&shift_plus(m).rep).rep
}

/// τ⁻¹ = σ⁻¹∘σ⁻¹.
pub fn tau_inverse(m: &KroneckerRep) -> KroneckerRep {
    shift_minus(&shift_minus(m).rep).rep
}

/// Applies σ or σ⁻¹ to a morphism, using the witnesses of its source and target.
pub fn shift_on_morphism(
    f: &MorphismPair,
    direction: Direction,
    source: &ShiftWitness,
    target: &ShiftWitness,
) -> Result<MorphismPair> {
    if source.direction != direction || target.direction != direction {
        return Err(Error::Precondition("witness direction mismatch".into()));
    }
    let r = f.source.r();
    match direction {
        Direction::Plus => {
            let lifted = Matrix::kron_eye(r, &f.f1).checked_mul(&source.basis)?;
            let g1 =
                target.basis.solve(&lifted)?.ok_or_else(|| Error::Internal("inconsistent kernel witness".into()))?;
            Ok(MorphismPair::from_parts(source.rep.clone(), target.rep.clone(), g1, f.f1.clone()))
        }
        Direction::Minus => {
            let rhs = target.basis.checked_mul(&Matrix::kron_eye(r, &f.f2))?;
            let g2t = source
                .basis
                .transpose()
                .solve(&rhs.transpose())?
                .ok_or_else(|| Error::Internal("inconsistent cokernel witness".into()))?;
            Ok(MorphismPair::from_parts(source.rep.clone(), target.rep.clone(), f.f2.clone(), g2t.transpose()))
        }
    }
}

/// σ±(f) computing the witnesses internally.
pub fn shift_morphism(f: &MorphismPair, direction: Direction) -> Result<MorphismPair> {
    let shift = match direction {
        Direction::Plus => shift_plus,
        Direction::Minus => shift_minus,
    };
    shift_on_morphism(f, direction, &shift(&f.source), &shift(&f.target))
}

/// Transport direction for the adjunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transport {
    Forward,
    Backward,
}

/// The two sides of the adjunction for fixed `X ∈ rep(K_d)` and `M ∈ rep(K_r)`;
/// restriction is along the canonical inclusion A_d ⊆ A_r.
#[derive(Clone, Debug)]
pub struct Adjunction {
    pub x: KroneckerRep,
    pub m: KroneckerRep,
    /// σ⁻¹(inf X).
    pub left: ShiftWitness,
    /// σ(res M).
    pub right: ShiftWitness,
}

impl Adjunction {
    pub fn new(x: &KroneckerRep, m: &KroneckerRep) -> Result<Self> {
        let (d, r) = (x.r(), m.r());
        let left = shift_minus(&x.inflate(r)?);
        let right = shift_plus(&m.restrict(&SubspaceMap::standard(d, r))?);
        Ok(Adjunction { x: x.clone(), m: m.clone(), left, right })
    }

    /// τ_{X,M}: (f1, f2) ↦ ((id ⊗ f1)∘η_X, f1), first component in kernel-basis coordinates.
    pub fn forward(&self, f: &MorphismPair) -> Result<MorphismPair> {
        if f.source != self.left.rep || f.target != self.m {
            return Err(Error::Precondition("forward transport expects a morphism σ⁻¹(inf X) → M".into()));
        }
        f.check()?;
        let d = self.x.r();
        let lifted = Matrix::kron_eye(d, &f.f1).checked_mul(&self.x.eta())?;
        let g1 = self
            .right
            .basis
            .solve(&lifted)?
            .ok_or_else(|| Error::Internal("image of (id ⊗ f1)∘η_X not in ker ψ".into()))?;
        Ok(MorphismPair::from_parts(self.x.clone(), self.right.rep.clone(), g1, f.f1.clone()))
    }

    /// Inverse of `forward`: (g1, g2) ↦ (g2, h) with h·Q = ψ_M∘(id ⊗ g2).
    pub fn backward(&self, g: &MorphismPair) -> Result<MorphismPair> {
        if g.source != self.x || g.target != self.right.rep {
            return Err(Error::Precondition("backward transport expects a morphism X → σ(res M)".into()));
        }
        g.check()?;
        let r = self.m.r();
        let rhs = self.m.psi().checked_mul(&Matrix::kron_eye(r, &g.f2))?;
        let ht = self
            .left
            .basis
            .transpose()
            .solve(&rhs.transpose())?
            .ok_or_else(|| Error::Internal("ψ_M∘(id ⊗ g2) does not vanish on im η".into()))?;
        Ok(MorphismPair::from_parts(self.left.rep.clone(), self.m.clone(), g.f2.clone(), ht.transpose()))
    }
}

/// One-shot transport.
pub fn adjunction_transport(
    x: &KroneckerRep,
    m: &KroneckerRep,
    f: &MorphismPair,
    direction: Transport,
) -> Result<MorphismPair> {
    let adj = Adjunction::new(x, m)?;
    match direction {
        Transport::Forward => adj.forward(f),
        Transport::Backward => adj.backward(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{hom_basis, hom_dim, is_isomorphic, IsoVerdict};
    use crate::rep::{p0, p1, s1};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shift_minus_examples() {
        let w = shift_minus(&p1(2));
        assert_eq!(w.rep.dim(), DimVector::new(2, 3));
        assert!(shift_minus(&s1(3)).rep.is_zero_object());
        assert_eq!(shift_minus(&p1(3)).rep.dim(), DimVector::new(3, 8));
        let q = &w.basis * &p1(2).eta();
        assert!(q.is_zero());
    }

    #[test]
    fn shift_plus_examples() {
        assert!(shift_plus(&p0(3)).rep.is_zero_object());
        let p2 = shift_minus(&p1(2)).rep;
        let back = shift_plus(&p2);
        assert!((&p2.psi() * &back.basis).is_zero());
        assert_eq!(back.rep.dim(), DimVector::new(1, 2));
        assert_eq!(is_isomorphic(&back.rep, &p1(2), 1), IsoVerdict::Yes);
    }

    #[test]
    fn identity_and_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = KroneckerRep::random(3, DimVector::new(2, 4), 2, &mut rng);
        let id = MorphismPair::identity(&m);
        for dir in [Direction::Plus, Direction::Minus] {
            let s = shift_morphism(&id, dir).unwrap();
            assert_eq!(s.f1, Matrix::identity(s.source.dim().x));
            assert_eq!(s.f2, Matrix::identity(s.source.dim().y));
        }
        let n = KroneckerRep::random(3, DimVector::new(1, 2), 2, &mut rng).direct_sum(&m).unwrap();
        let basis = hom_basis(&m, &n).unwrap();
        let end = hom_basis(&n, &n).unwrap();
        if let (Some(f), Some(g)) = (basis.basis.first(), end.basis.last()) {
            let fg = f.then(g).unwrap();
            for dir in [Direction::Plus, Direction::Minus] {
                let lhs = shift_morphism(&fg, dir).unwrap();
                let rhs = shift_morphism(f, dir).unwrap().then(&shift_morphism(g, dir).unwrap()).unwrap();
                assert_eq!(lhs.f1, rhs.f1);
                assert_eq!(lhs.f2, rhs.f2);
            }
        }
    }

    #[test]
    fn shift_of_nonzero_morphism_is_nonzero() {
        let p2 = shift_minus(&p1(2)).rep;
        let hom = hom_basis(&p1(2), &p2).unwrap();
        assert_eq!(hom.dim, 2);
        for f in &hom.basis {
            let s = shift_morphism(f, Direction::Minus).unwrap();
            assert!(!s.is_zero());
            s.check().unwrap();
        }
    }

    #[test]
    fn adjunction_dims_and_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = p1(2);
        let m = KroneckerRep::random(3, DimVector::new(2, 4), 2, &mut rng);
        let adj = Adjunction::new(&x, &m).unwrap();
        let left = hom_basis(&adj.left.rep, &m).unwrap();
        let right = hom_basis(&x, &adj.right.rep).unwrap();
        assert_eq!(left.dim, right.dim);
        assert_eq!(hom_dim(&adj.left.rep, &m).unwrap(), left.dim);
        for f in &left.basis {
            let g = adj.forward(f).unwrap();
            g.check().unwrap();
            assert_eq!(&adj.backward(&g).unwrap(), f);
        }
        let zero = MorphismPair::zero(&adj.left.rep, &m);
        assert!(adj.forward(&zero).unwrap().is_zero());
    }
}
