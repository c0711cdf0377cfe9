//! JSON file formats for representations and subspaces.

use serde::{Deserialize, Serialize};

use super::{DimVector, KroneckerRep, SubspaceMap};
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_scalar, Matrix};

/// On-disk representation: `r`, `dim = [x, y]`, and `r` row-major matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub r: usize,
    pub dim: [usize; 2],
    pub maps: Vec<Vec<Vec<String>>>,
}

/// On-disk subspace: `d` and the `r × d` matrix `cols` as a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub d: usize,
    pub cols: Vec<Vec<String>>,
}

pub fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.nrows()).map(|i| m.row(i).iter().map(format_scalar).collect()).collect()
}

/// Parses a row list into a `rows × cols` matrix; `what` names the field in diagnostics.
pub fn matrix_from_rows(rows: &[Vec<String>], nrows: usize, ncols: usize, what: &str) -> Result<Matrix> {
    if rows.len() != nrows {
        return Err(Error::Parse(format!("{what}: expected {nrows} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(nrows);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Parse(format!("{what}: row {i} has {} entries, expected {ncols}", row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| parse_scalar(s).map_err(|e| Error::Parse(format!("{what}[{i}][{j}]: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(out, ncols)
}

impl From<&KroneckerRep> for RepFile {
    fn from(rep: &KroneckerRep) -> Self {
        RepFile { r: rep.r(), dim: [rep.dim().x, rep.dim().y], maps: rep.maps().iter().map(matrix_to_rows).collect() }
    }
}

impl TryFrom<&RepFile> for KroneckerRep {
    type Error = Error;

    fn try_from(f: &RepFile) -> Result<Self> {
        if f.maps.len() != f.r {
            return Err(Error::Parse(format!("maps: expected {} matrices, found {}", f.r, f.maps.len())));
        }
        let dim = DimVector::new(f.dim[0], f.dim[1]);
        let maps = f
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from_rows(m, dim.y, dim.x, &format!("maps[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        KroneckerRep::new(f.r, dim, maps)
    }
}

impl From<&SubspaceMap> for SubspaceFile {
    fn from(s: &SubspaceMap) -> Self {
        SubspaceFile { d: s.d(), cols: matrix_to_rows(s.cols()) }
    }
}

impl SubspaceFile {
    pub fn to_subspace(&self, r: usize) -> Result<SubspaceMap> {
        let m = matrix_from_rows(&self.cols, r, self.d, "cols")?;
        SubspaceMap::new(&m)
    }
}

pub fn rep_to_json(rep: &KroneckerRep) -> String {
    serde_json::to_string_pretty(&RepFile::from(rep)).expect("serializable")
}

pub fn rep_from_json(s: &str) -> Result<KroneckerRep> {
    let f: RepFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    KroneckerRep::try_from(&f)
}

pub fn subspace_to_json(s: &SubspaceMap) -> String {
    serde_json::to_string_pretty(&SubspaceFile::from(s)).expect("serializable")
}

pub fn subspace_from_json(s: &str, r: usize) -> Result<SubspaceMap> {
    let f: SubspaceFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    f.to_subspace(r)
}
