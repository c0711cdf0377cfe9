use crate::linalg::Matrix;

use super::{DimVector, KroneckerRep};

/// S(1) = (𝕜, 0) = I_0(r).
pub fn s1(r: usize) -> KroneckerRep {
    KroneckerRep::zero_maps(r, DimVector::new(1, 0))
}

/// S(2) = (0, 𝕜) = P_0(r).
pub fn s2(r: usize) -> KroneckerRep {
    KroneckerRep::zero_maps(r, DimVector::new(0, 1))
}

/// P_0(r) = S(2).
pub fn p0(r: usize) -> KroneckerRep {
    s2(r)
}

/// P_1(r) = (𝕜, A_r) with γ_i ⊗ λ ↦ λγ_i.
pub fn p1(r: usize) -> KroneckerRep {
    let e = Matrix::identity(r);
    let maps = (0..r).map(|i| e.block(0, r, i, 1)).collect();
    KroneckerRep::from_parts(r, DimVector::new(1, r), maps)
}

/// I_0(r) = S(1).
pub fn i0(r: usize) -> KroneckerRep {
    s1(r)
}

/// I_1(r) = D(P_1(r)).
pub fn i1(r: usize) -> KroneckerRep {
    p1(r).dual()
}

/// All standard models for one arrow count.
#[derive(Clone, Debug)]
pub struct StdModels {
    pub s1: KroneckerRep,
    pub s2: KroneckerRep,
    pub p0: KroneckerRep,
    pub p1: KroneckerRep,
    pub i0: KroneckerRep,
    pub i1: KroneckerRep,
}

impl StdModels {
    pub fn new(r: usize) -> Self {
        assert!(r >= 1, "arrow count must be positive");
        StdModels { s1: s1(r), s2: s2(r), p0: p0(r), p1: p1(r), i0: i0(r), i1: i1(r) }
    }
}
