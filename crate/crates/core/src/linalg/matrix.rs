use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modular;
use crate::error::{Error, Result};

/// Exact rational scalar; `BigRational` keeps values in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// Rational scalar `n/d`; panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with `q > 0` and `gcd(p, q) = 1`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid scalar literal {s:?}"));
    match t.split_once('/') {
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if !d.is_positive() {
                return Err(Error::Parse(format!("denominator must be positive in {s:?}")));
            }
            if !n.gcd(&d).is_one() {
                return Err(Error::Parse(format!("{s:?} is not in lowest terms")));
            }
            Ok(BigRational::new_raw(n, d))
        }
    }
}

/// Formats a scalar as `"p"` or `"p/q"`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Matrices with at most this many entries use plain fraction-free elimination;
/// larger ones go through the modular routines.
const MODULAR_THRESHOLD: usize = 4096;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Integer matrix from row-major values; panics if `values.len() != rows * cols`.
    pub fn from_ints(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "wrong number of entries");
        Matrix { rows, cols, data: values.iter().map(|&v| int(v)).collect() }
    }

    /// Column vector.
    pub fn column_vector(values: Vec<Scalar>) -> Self {
        let n = values.len();
        Matrix { rows: n, cols: 1, data: values }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Matrix, op: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hconcat(blocks: &[&Matrix]) -> Result<Matrix> {
        let Some(first) = blocks.first() else {
            return Ok(Matrix::zeros(0, 0));
        };
        let rows = first.rows;
        if let Some(b) = blocks.iter().find(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch(format!("hconcat: {} rows vs {rows}", b.rows)));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Vertical concatenation.
    pub fn vconcat(blocks: &[&Matrix]) -> Result<Matrix> {
        let Some(first) = blocks.first() else {
            return Ok(Matrix::zeros(0, 0));
        };
        let cols = first.cols;
        if let Some(b) = blocks.iter().find(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch(format!("vconcat: {} cols vs {cols}", b.cols)));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Matrix { rows, cols, data })
    }

    /// The `nrows x ncols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, nrows: usize, c0: usize, ncols: usize) -> Matrix {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols, "block out of range");
        Matrix::from_fn(nrows, ncols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Writes `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Selects the given columns in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Block-diagonal `I_r ⊗ self`.
    pub fn kron_eye(r: usize, f: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(r * f.rows, r * f.cols);
        for k in 0..r {
            out.set_block(k * f.rows, k * f.cols, f);
        }
        out
    }

    /// Direct sum `diag(a, b)`.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        out.set_block(0, 0, a);
        out.set_block(a.rows, a.cols, b);
        out
    }

    /// Least common multiple of all denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Rows scaled to primitive integer vectors (same row space, same kernel).
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let mut v: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
                make_primitive(&mut v);
                v
            })
            .collect()
    }

    /// Reduced row-echelon form (unique).
    pub fn rref(&self) -> Rref {
        let (rows, pivots) = rref_integer(self.integer_rows(), self.cols);
        let mut reduced = Matrix::zeros(self.rows, self.cols);
        for (k, &pc) in pivots.iter().enumerate() {
            let lead = rows[k][pc].clone();
            for j in 0..self.cols {
                if !rows[k][j].is_zero() {
                    reduced.set(k, j, BigRational::new(rows[k][j].clone(), lead.clone()));
                }
            }
        }
        let rank = pivots.len();
        Rref { reduced, pivots, rank }
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows * self.cols > MODULAR_THRESHOLD {
            return modular::exact_rank(&self.integer_rows(), self.cols);
        }
        rref_integer(self.integer_rows(), self.cols).1.len()
    }

    /// Basis of the kernel as columns: one column per free variable (ascending), with that
    /// variable equal to 1 and the other free variables 0.
    pub fn kernel_basis(&self) -> Matrix {
        if self.rows * self.cols > MODULAR_THRESHOLD {
            if let Some(k) = modular::kernel_basis_multimodular(self) {
                return k;
            }
        }
        self.kernel_basis_direct()
    }

    /// Kernel basis computed by direct fraction-free elimination.
    pub fn kernel_basis_direct(&self) -> Matrix {
        let rr = self.rref();
        kernel_from_rref(&rr.reduced, &rr.pivots, self.cols)
    }

    /// Solves `self · x = b`; free variables of the particular solution are 0.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = Matrix::hconcat(&[self, b])?;
        let rr = aug.rref();
        if rr.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (k, &pc) in rr.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, rr.reduced.get(k, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let rr = Matrix::hconcat(&[self, &Matrix::identity(n)]).ok()?.rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] >= n {
            return None;
        }
        Some(rr.reduced.block(0, n, n, n))
    }

    /// Determinant of a square matrix; panics otherwise.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                let f = a.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(i, j) - &f * a.get(c, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// Column-reduced echelon form (transpose of the rref of the transpose), keeping the
    /// first `rank` columns. Two full-column-rank matrices have the same column space iff
    /// their column echelon forms agree.
    pub fn column_echelon(&self) -> Matrix {
        let rr = self.transpose().rref();
        rr.reduced.block(0, rr.rank, 0, self.rows).transpose()
    }
}

/// Kernel basis from a reduced row-echelon matrix.
pub(crate) fn kernel_from_rref(reduced: &Matrix, pivots: &[usize], cols: usize) -> Matrix {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = Matrix::zeros(cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.set(f, j, Scalar::one());
        for (r, &pc) in pivots.iter().enumerate() {
            let v = reduced.get(r, f);
            if !v.is_zero() {
                k.set(pc, j, -v.clone());
            }
        }
    }
    k
}

/// Divides a vector by the gcd of its entries and makes the first nonzero entry positive
/// only if it was already; the sign is left untouched.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x / &g;
        }
    }
}

/// Fraction-free Gauss-Jordan elimination on integer rows. Returns the reduced rows
/// (pivot row `k` has its pivot in column `pivots[k]`, zero elsewhere in that column)
/// and the pivot columns.
pub(crate) fn rref_integer(mut rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(pr) = (r..n).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].bits()) else {
            continue;
        };
        rows.swap(r, pr);
        let piv = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = piv[c].gcd(&row[c]);
            let a = &piv[c] / &g;
            let b = &row[c] / &g;
            for (x, p) in row.iter_mut().zip(&piv) {
                if p.is_zero() {
                    if !x.is_zero() && !a.is_one() {
                        *x = &*x * &a;
                    }
                } else {
                    *x = &*x * &a - &b * p;
                }
            }
            make_primitive(row);
        }
        rows[r] = piv;
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl std::ops::Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_proportional_rows() {
        let m = Matrix::from_ints(2, 2, &[1, 2, 2, 4]);
        let rr = m.rref();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.pivots, vec![0]);
        assert_eq!(rr.reduced, Matrix::from_ints(2, 2, &[1, 2, 0, 0]));
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let i = Matrix::identity(3);
        assert_eq!(i.rref().reduced, i);
        assert_eq!(i.rank(), 3);
        let z = Matrix::zeros(2, 2);
        let rr = z.rref();
        assert_eq!(rr.rank, 0);
        assert!(rr.pivots.is_empty());
    }

    #[test]
    fn rref_with_fractions() {
        let m = Matrix::from_ints(2, 3, &[2, 1, 0, 4, 3, 1]);
        let rr = m.rref();
        assert_eq!(rr.pivots, vec![0, 1]);
        assert_eq!(*rr.reduced.get(0, 2), frac(-1, 2));
        assert_eq!(*rr.reduced.get(1, 2), int(1));
    }

    #[test]
    fn kernel_examples() {
        let m = Matrix::from_ints(2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.kernel_basis(), Matrix::from_ints(2, 1, &[-2, 1]));
        assert_eq!(Matrix::identity(3).kernel_basis().ncols(), 0);
        let k = Matrix::zeros(2, 3).kernel_basis();
        assert_eq!(k, Matrix::identity(3));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_ints(2, 1, &[7, -3]);
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        let a = Matrix::from_ints(2, 2, &[1, 2, 2, 4]);
        assert_eq!(a.solve(&Matrix::from_ints(2, 1, &[1, 3])).unwrap(), None);
        let x = a.solve(&Matrix::from_ints(2, 1, &[1, 2])).unwrap().unwrap();
        assert_eq!(x, Matrix::from_ints(2, 1, &[1, 0]));
        assert!(a.solve(&Matrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn inverse_and_det() {
        let a = Matrix::from_ints(2, 2, &[2, 1, 5, 3]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert_eq!(a.det(), int(1));
        assert!(Matrix::from_ints(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        assert_eq!(Matrix::from_ints(2, 2, &[1, 2, 2, 4]).det(), int(0));
    }

    #[test]
    fn scalar_round_trip() {
        for s in ["0", "-7", "3/4", "-5/9"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert!(parse_scalar("2/4").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1/-2").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn column_echelon_identifies_subspaces() {
        let a = Matrix::from_ints(3, 2, &[1, 1, 0, 1, 1, 2]);
        let b = Matrix::from_ints(3, 2, &[2, 1, 1, 0, 3, 1]);
        assert_eq!(a.column_echelon(), b.column_echelon());
    }

    #[test]
    fn kron_eye_is_block_diagonal() {
        let f = Matrix::from_ints(1, 2, &[1, 2]);
        let k = Matrix::kron_eye(2, &f);
        assert_eq!(k, Matrix::from_ints(2, 4, &[1, 2, 0, 0, 0, 0, 1, 2]));
    }
}
