use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{int, parse_scalar, Matrix};

/// A point of Gr_d(A_r), stored as the column-reduced echelon form of an injective
/// `r × d` matrix, so equal subspaces have equal representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceMap {
    cols: Matrix,
}

impl SubspaceMap {
    /// Canonicalizes a full-column-rank `r × d` matrix.
    pub fn new(alpha: &Matrix) -> Result<Self> {
        let d = alpha.ncols();
        if d == 0 || d > alpha.nrows() {
            return Err(Error::Precondition(format!("need 1 <= d <= r, got d = {d}, r = {}", alpha.nrows())));
        }
        let cols = alpha.column_echelon();
        if cols.ncols() != d {
            return Err(Error::RankDeficient);
        }
        Ok(SubspaceMap { cols })
    }

    /// span(γ_1, …, γ_d), the canonical inclusion ι.
    pub fn standard(d: usize, r: usize) -> Self {
        SubspaceMap { cols: Matrix::identity(r).block(0, r, 0, d) }
    }

    /// Span of the given coordinate vectors.
    pub fn coordinate(r: usize, indices: &[usize]) -> Result<Self> {
        let m = Matrix::identity(r).select_columns(indices);
        SubspaceMap::new(&m)
    }

    /// Parses `"a,b,c;d,e,f"`: semicolon-separated columns, comma-separated entries.
    pub fn from_literal(s: &str, r: usize) -> Result<Self> {
        let mut columns = Vec::new();
        for col in s.split(';') {
            let entries = col.split(',').map(parse_scalar).collect::<Result<Vec<_>>>()?;
            if entries.len() != r {
                return Err(Error::Parse(format!("column {col:?} has {} entries, expected {r}", entries.len())));
            }
            columns.push(entries);
        }
        let d = columns.len();
        let m = Matrix::from_fn(r, d, |i, j| columns[j][i].clone());
        SubspaceMap::new(&m)
    }

    /// Random subspace with integer entries in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(d: usize, r: usize, bound: i64, rng: &mut R) -> Self {
        loop {
            let m = Matrix::from_fn(r, d, |_, _| int(rng.gen_range(-bound..=bound)));
            if let Ok(s) = SubspaceMap::new(&m) {
                return s;
            }
        }
    }

    pub fn d(&self) -> usize {
        self.cols.ncols()
    }

    pub fn r(&self) -> usize {
        self.cols.nrows()
    }

    pub fn cols(&self) -> &Matrix {
        &self.cols
    }

    /// Command-line literal form.
    pub fn to_literal(&self) -> String {
        (0..self.d())
            .map(|j| self.cols.column(j).iter().map(crate::linalg::format_scalar).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// True when `self ⊆ other`.
    pub fn is_contained_in(&self, other: &SubspaceMap) -> bool {
        let both = Matrix::hconcat(&[other.cols(), self.cols()]).expect("same r");
        both.rank() == other.d()
    }
}
