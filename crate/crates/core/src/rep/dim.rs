use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// Dimension vector `(x, y)`: `x = dim M_1`, `y = dim M_2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector {
    pub x: usize,
    pub y: usize,
}

impl DimVector {
    pub const fn new(x: usize, y: usize) -> Self {
        DimVector { x, y }
    }

    pub fn swapped(self) -> Self {
        DimVector::new(self.y, self.x)
    }

    pub fn total(self) -> usize {
        self.x + self.y
    }

    pub fn scale(self, k: usize) -> Self {
        DimVector::new(k * self.x, k * self.y)
    }

    /// Δ(d) = y − d·x.
    pub fn delta(self, d: usize) -> i64 {
        self.y as i64 - (d * self.x) as i64
    }

    /// σ_r(x, y) = (r·x − y, x), if nonnegative.
    pub fn sigma_plus(self, r: usize) -> Option<Self> {
        let a = (r * self.x).checked_sub(self.y)?;
        Some(DimVector::new(a, self.x))
    }

    /// σ_r⁻¹(x, y) = (y, r·y − x), if nonnegative.
    pub fn sigma_minus(self, r: usize) -> Option<Self> {
        let b = (r * self.y).checked_sub(self.x)?;
        Some(DimVector::new(self.y, b))
    }
}

impl Add for DimVector {
    type Output = DimVector;

    fn add(self, o: DimVector) -> DimVector {
        DimVector::new(self.x + o.x, self.y + o.y)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Euler–Ringel form ⟨a, b⟩_r = a.x·b.x + a.y·b.y − r·a.x·b.y.
pub fn euler_form(a: DimVector, b: DimVector, r: usize) -> i64 {
    let (ax, ay, bx, by) = (a.x as i64, a.y as i64, b.x as i64, b.y as i64);
    ax * bx + ay * by - r as i64 * ax * by
}

/// Tits form q_r(a) = ⟨a, a⟩_r.
pub fn tits_form(a: DimVector, r: usize) -> i64 {
    euler_form(a, a, r)
}

impl DimVector {
    /// q_r ≤ 1.
    pub fn is_schur_root_candidate(self, r: usize) -> bool {
        tits_form(self, r) <= 1
    }

    /// q_r ≤ 0.
    pub fn is_regular(self, r: usize) -> bool {
        tits_form(self, r) <= 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        assert_eq!(euler_form(DimVector::new(1, 0), DimVector::new(0, 1), 5), -5);
        assert_eq!(tits_form(DimVector::new(13, 34), 3), -1);
        assert_eq!(tits_form(DimVector::new(1, 2), 3), -1);
        assert!(DimVector::new(1, 2).is_regular(3));
        assert!(!DimVector::new(1, 3).is_regular(3));
    }

    #[test]
    fn sigma_round_trip() {
        let v = DimVector::new(1, 3);
        assert_eq!(v.sigma_minus(3), Some(DimVector::new(3, 8)));
        assert_eq!(DimVector::new(3, 8).sigma_plus(3), Some(v));
        assert_eq!(DimVector::new(1, 4).sigma_plus(3), None);
    }
}
