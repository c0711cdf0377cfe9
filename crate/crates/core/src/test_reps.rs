//! Test representations X^±(α), the families P_n^±(𝔳), and E(𝔳) = P_1⁻(𝔳).

use serde::{Deserialize, Serialize};

use crate::canonical::{preprojective, Family};
use crate::error::{Error, Result};
use crate::functors::{shift_minus, shift_plus};
use crate::linalg::{int, Matrix};
use crate::rep::{DimVector, GroupElement, KroneckerRep, SubspaceMap};

/// Which shift builds the test representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

/// `g.σ^∓(inf X)` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct TestRep {
    pub rep: KroneckerRep,
    /// Dimension vector of the seed X over K_d.
    pub base: DimVector,
    pub subspace: SubspaceMap,
    pub sign: Sign,
}

/// Completes α to an invertible `r × r` matrix: the first d columns are α, followed by
/// the standard basis vectors at the non-pivot rows of α in ascending order.
pub fn complete_to_glr(alpha: &SubspaceMap) -> Result<GroupElement> {
    let (d, r) = (alpha.d(), alpha.r());
    let cols = alpha.cols();
    let pivots = cols.transpose().rref().pivots;
    if pivots.len() != d {
        return Err(Error::RankDeficient);
    }
    let mut g = Matrix::zeros(r, r);
    g.set_block(0, 0, cols);
    let mut next = d;
    for row in (0..r).filter(|i| !pivots.contains(i)) {
        g.set(row, next, int(1));
        next += 1;
    }
    GroupElement::new(g)
}

/// X⁻(α) = g.σ⁻¹(inf X) or X⁺(α) = g.σ(inf X) for a completion g of α.
///
/// For homogeneous X the isomorphism class only depends on the image of α; this is not
/// checked here.
pub fn test_rep(x: &KroneckerRep, alpha: &SubspaceMap, sign: Sign) -> Result<TestRep> {
    if x.r() != alpha.d() {
        return Err(Error::DimensionMismatch(format!(
            "seed has {} arrows but the subspace has dimension {}",
            x.r(),
            alpha.d()
        )));
    }
    let g = complete_to_glr(alpha)?;
    let inflated = x.inflate(alpha.r())?;
    let shifted = match sign {
        Sign::Minus => shift_minus(&inflated).rep,
        Sign::Plus => shift_plus(&inflated).rep,
    };
    Ok(TestRep { rep: shifted.act(&g)?, base: x.dim(), subspace: alpha.clone(), sign })
}

/// P_n^±(𝔳) = P_n(d)^±(𝔳) with d = dim 𝔳.
pub fn p_test(n: usize, v: &SubspaceMap, sign: Sign) -> Result<TestRep> {
    let seed = preprojective(v.d(), n, Family::P)?;
    test_rep(&seed, v, sign)
}

/// E(𝔳) = P_1⁻(𝔳).
pub fn e_rep(v: &SubspaceMap) -> Result<TestRep> {
    p_test(1, v, Sign::Minus)
}
