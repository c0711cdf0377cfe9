//! Preprojective and preinjective models, the sequence a_n(d), and K₂ splitting types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functors::shift_minus;
use crate::homalg::hom_dim;
use crate::rep::{p0, DimVector, KroneckerRep};

/// Which family of indecomposables to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Preprojective P_n(d).
    P,
    /// Preinjective I_n(d) = D(P_n(d)).
    I,
}

/// `a_0, …, a_n` with `a_0 = 0`, `a_1 = 1`, `a_{k+2} = d·a_{k+1} − a_k`.
pub fn a_seq(d: usize, n: usize) -> Result<Vec<u64>> {
    if d < 2 {
        return Err(Error::Precondition(format!("a_n(d) needs d >= 2, got {d}")));
    }
    let d = d as u64;
    let mut out = vec![0u64, 1];
    while out.len() < n + 1 {
        let k = out.len();
        let next = d
            .checked_mul(out[k - 1])
            .and_then(|v| v.checked_sub(out[k - 2]))
            .ok_or_else(|| Error::Unsupported(format!("a_{k}({d}) overflows 64 bits")))?;
        out.push(next);
    }
    out.truncate(n + 1);
    Ok(out)
}

/// `(a_n(d), a_{n+1}(d))`.
pub fn preprojective_dim(d: usize, n: usize) -> Result<DimVector> {
    let a = a_seq(d, n + 1)?;
    Ok(DimVector::new(a[n] as usize, a[n + 1] as usize))
}

/// P_n(d) as σ⁻ⁿ(P_0(d)), or its dual I_n(d).
pub fn preprojective(d: usize, n: usize, family: Family) -> Result<KroneckerRep> {
    let expected = preprojective_dim(d, n)?;
    let mut m = p0(d);
    for _ in 0..n {
        m = shift_minus(&m).rep.integerized();
    }
    if m.dim() != expected {
        return Err(Error::Internal(format!("P_{n}({d}) came out with dim {}, expected {expected}", m.dim())));
    }
    Ok(match family {
        Family::P => m,
        Family::I => m.dual(),
    })
}

/// What is left after the preprojective part is accounted for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Remainder {
    NonPreprojective(DimVector),
}

/// Multiplicities `b_i` of `P_i(2)` summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingType {
    /// Nonzero multiplicities only.
    pub b: BTreeMap<usize, usize>,
    pub remainder: Option<Remainder>,
}

impl SplittingType {
    /// `Σ b_i·(i, i+1)`.
    pub fn preprojective_dim(&self) -> DimVector {
        self.b.iter().fold(DimVector::default(), |acc, (&i, &c)| acc + DimVector::new(i, i + 1).scale(c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.b.keys().copied().collect()
    }

    /// Multiplicity at `i` (zero outside the support).
    pub fn get(&self, i: usize) -> usize {
        self.b.get(&i).copied().unwrap_or(0)
    }

    pub fn is_fully_preprojective(&self) -> bool {
        self.remainder.is_none()
    }
}

/// Splitting type of a K₂ representation from second differences of
/// `h_k = dim Hom(P_k(2), n)`.
pub fn split_k2(n: &KroneckerRep) -> Result<SplittingType> {
    if n.r() != 2 {
        return Err(Error::Precondition(format!("split_k2 needs a K_2 representation, got r = {}", n.r())));
    }
    let k_max = n.dim().y;
    let mut h = Vec::with_capacity(k_max + 3);
    let mut model = p0(2);
    for k in 0..=k_max + 2 {
        if k > 0 {
            model = shift_minus(&model).rep.integerized();
        }
        let hk = hom_dim(&model, n)?;
        h.push(hk as i64);
        // Hom(P_k, -) vanishes from here on for the preprojective part, and the
        // remaining parts contribute increasing functions that never reach 0.
        if hk == 0 {
            break;
        }
    }
    h.resize(k_max + 3, 0);
    let mut b = BTreeMap::new();
    for k in 0..=k_max {
        let bk = h[k] - 2 * h[k + 1] + h[k + 2];
        if bk < 0 {
            return Err(Error::Internal(format!("negative multiplicity b_{k} = {bk}")));
        }
        if bk > 0 {
            b.insert(k, bk as usize);
        }
    }
    let mut st = SplittingType { b, remainder: None };
    let pre = st.preprojective_dim();
    let dim = n.dim();
    if pre != dim {
        if pre.x > dim.x || pre.y > dim.y {
            return Err(Error::Internal(format!("preprojective part {pre} exceeds the dimension {dim}")));
        }
        st.remainder = Some(Remainder::NonPreprojective(DimVector::new(dim.x - pre.x, dim.y - pre.y)));
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn a_seq_examples() {
        assert_eq!(a_seq(2, 5).unwrap(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(a_seq(3, 5).unwrap(), vec![0, 1, 3, 8, 21, 55]);
        assert!(a_seq(1, 3).is_err());
        assert_eq!(a_seq(3, 0).unwrap(), vec![0]);
        for d in 2..6usize {
            let a = a_seq(d, 12).unwrap();
            for w in a.windows(2) {
                let (x, y) = (w[0] as i128, w[1] as i128);
                assert_eq!(x * x + y * y - d as i128 * x * y, 1);
            }
        }
    }

    #[test]
    fn preprojective_examples() {
        assert_eq!(preprojective(2, 2, Family::P).unwrap().dim(), DimVector::new(2, 3));
        assert_eq!(preprojective(3, 2, Family::P).unwrap().dim(), DimVector::new(3, 8));
        assert_eq!(preprojective(2, 4, Family::I).unwrap().dim(), DimVector::new(5, 4));
        assert_eq!(preprojective(3, 1, Family::P).unwrap().psi().rank(), 3);
    }

    fn hom_oracle(a: &[u64], n: usize, m: usize) -> usize {
        if n <= m {
            a[m - n + 1] as usize
        } else {
            0
        }
    }

    #[test]
    fn hom_between_preprojectives() {
        for d in [2usize, 3] {
            let a = a_seq(d, 6).unwrap();
            let ps: Vec<_> = (0..=4).map(|n| preprojective(d, n, Family::P).unwrap()).collect();
            for n in 0..=4 {
                for m in 0..=4 {
                    assert_eq!(hom_dim(&ps[n], &ps[m]).unwrap(), hom_oracle(&a, n, m), "d={d} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn almost_split_dimension_law() {
        for d in [2usize, 3, 4] {
            for n in 0..6 {
                let (a, b, c) = (
                    preprojective_dim(d, n).unwrap(),
                    preprojective_dim(d, n + 1).unwrap(),
                    preprojective_dim(d, n + 2).unwrap(),
                );
                assert_eq!(a + c, b.scale(d));
            }
        }
    }

    #[test]
    fn split_examples() {
        let n = p0(2).power(2).direct_sum(&preprojective(2, 1, Family::P).unwrap()).unwrap();
        let st = split_k2(&n).unwrap();
        assert_eq!(st.b, BTreeMap::from([(0, 2), (1, 1)]));
        assert_eq!(st.remainder, None);
        for m in 0..5 {
            let st = split_k2(&preprojective(2, m, Family::P).unwrap()).unwrap();
            assert_eq!(st.b, BTreeMap::from([(m, 1)]));
        }
        let one = Matrix::from_ints(1, 1, &[1]);
        let reg = KroneckerRep::new(2, DimVector::new(1, 1), vec![one.clone(), one]).unwrap();
        let st = split_k2(&reg).unwrap();
        assert!(st.b.is_empty());
        assert_eq!(st.remainder, Some(Remainder::NonPreprojective(DimVector::new(1, 1))));
    }

    #[test]
    fn splitting_type_json() {
        let st = SplittingType { b: BTreeMap::from([(0, 2), (1, 1)]), remainder: None };
        assert_eq!(serde_json::to_string(&st).unwrap(), r#"{"b":{"0":2,"1":1},"remainder":null}"#);
    }
}
