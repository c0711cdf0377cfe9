//! Arithmetic modulo word-sized primes and multimodular exact routines.
//!
//! Every exact answer produced here is either certified by a bound (rank) or verified
//! over ℚ after reconstruction (kernel); the modular data never leaks into results.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{kernel_from_rref, make_primitive, rref_integer, Matrix, Scalar};

/// A prime modulus below 2^31 with a precomputed Barrett constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modulus {
    p: u64,
    mu: u64,
}

impl Modulus {
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 31).contains(&p), "modulus out of range");
        let mu = ((1u128 << 64) / p as u128) as u64;
        Modulus { p, mu }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `x mod p` for `x < 2^62`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.mu as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        if let Some(v) = x.to_i64() {
            return self.from_i64(v);
        }
        x.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits in u64")
    }

    /// Image of a rational number, `None` when p divides the denominator.
    pub fn from_rational(&self, x: &Scalar) -> Option<u64> {
        let d = self.inv(self.from_bigint(x.denom()))?;
        Some(self.mul(self.from_bigint(x.numer()), d))
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Primes below 2^31 in descending order.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(512);
        let mut n: u64 = (1 << 31) - 1;
        while out.len() < 512 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl ModMatrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        ModMatrix { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = ModMatrix::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Reduction of a rational matrix, `None` if p divides some denominator.
    pub fn from_matrix(m: &Matrix, modulus: Modulus) -> Option<Self> {
        let mut out = ModMatrix::zeros(modulus, m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    out.set(i, j, modulus.from_rational(v)?);
                }
            }
        }
        Some(out)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j] as u64
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.modulus.p);
        self.data[i * self.cols + j] = v as u32;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut out = ModMatrix::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "modular product shape mismatch");
        let m = self.modulus;
        let mut out = ModMatrix::zeros(m, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x = m.reduce(*x + a * b as u64);
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = x as u32;
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.cols, "vstack shape mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ModMatrix { modulus: self.modulus, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// In-place elimination; returns pivot columns. With `full` the result is the
    /// reduced row-echelon form, otherwise a row-echelon form with unit pivots.
    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let m = self.modulus;
        let p = m.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut nz: Vec<usize> = Vec::with_capacity(cols);
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = m.inv(self.data[r * cols + c] as u64).expect("nonzero pivot");
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            nz.clear();
            for k in c..cols {
                if prow[k] != 0 {
                    prow[k] = m.mul(prow[k] as u64, inv) as u32;
                    nz.push(k);
                }
            }
            let apply = |row: &mut [u32]| {
                let f = row[c] as u64;
                if f != 0 {
                    let nf = p - f;
                    for &k in &nz {
                        row[k] = m.reduce(row[k] as u64 + nf * prow[k] as u64) as u32;
                    }
                }
            };
            after.chunks_exact_mut(cols).for_each(apply);
            if full {
                before.chunks_exact_mut(cols).for_each(apply);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (ModMatrix, Vec<usize>) {
        let mut a = self.clone();
        let piv = a.eliminate(true);
        (a, piv)
    }

    /// Kernel basis with the same normalization as the rational routine.
    pub fn kernel_basis(&self) -> ModMatrix {
        let (rr, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = ModMatrix::zeros(self.modulus, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = rr.get(row, f);
                if v != 0 {
                    k.set(pc, j, self.modulus.neg(v));
                }
            }
        }
        k
    }
}

/// Systems with at most this many dense entries are eliminated directly over ℚ.
const SMALL_SYSTEM: usize = 4096;

/// Sparse integer linear system; each row is stored as primitive `(column, value)` pairs.
#[derive(Clone, Debug, Default)]
pub struct IntSystem {
    cols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntSystem {
    pub fn new(cols: usize) -> Self {
        IntSystem { cols, rows: Vec::new() }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut sys = IntSystem::new(m.ncols());
        for row in m.integer_rows() {
            sys.push_dense(row);
        }
        sys
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row given as `(column, value)` pairs; duplicate columns are summed and
    /// zero rows are dropped.
    pub fn push_sparse(&mut self, mut entries: Vec<(usize, BigInt)>) {
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.cols, "column index out of range");
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        if merged.is_empty() {
            return;
        }
        let mut vals: Vec<BigInt> = merged.iter().map(|e| e.1.clone()).collect();
        make_primitive(&mut vals);
        self.rows.push(merged.into_iter().zip(vals).map(|((c, _), v)| (c, v)).collect());
    }

    /// Appends a row with rational coefficients, cleared of denominators.
    pub fn push_rational(&mut self, entries: Vec<(usize, Scalar)>) {
        let l = entries.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        let ints =
            entries.into_iter().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.numer() * (&l / x.denom()))).collect();
        self.push_sparse(ints);
    }

    /// Exact rank; small systems use direct elimination.
    pub fn rank(&self) -> usize {
        if self.rows.len() * self.cols <= SMALL_SYSTEM {
            return rref_integer(self.dense_rows(), self.cols).1.len();
        }
        self.exact_rank()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn push_dense(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let entries = row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        self.push_sparse(entries);
    }

    pub fn to_mod(&self, modulus: Modulus) -> ModMatrix {
        let mut out = ModMatrix::zeros(modulus, self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out.set(i, *c, modulus.from_bigint(v));
            }
        }
        out
    }

    fn dense_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = vec![BigInt::zero(); self.cols];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Upper bounds of log2 of the Euclidean row norms, sorted descending.
    fn log_norms(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .rows
            .iter()
            .map(|row| {
                let s: BigInt = row.iter().map(|(_, v)| v * v).sum();
                s.bits() as f64 / 2.0
            })
            .collect();
        out.sort_by(|a, b| b.partial_cmp(a).expect("finite norms"));
        out
    }

    /// Exact rank over ℚ. A modular rank never exceeds the rational rank; once the
    /// product of the primes used exceeds the Hadamard bound of every minor one size
    /// larger than the best modular rank, that rank is exact.
    pub fn exact_rank(&self) -> usize {
        let cap = self.rows.len().min(self.cols);
        if cap == 0 {
            return 0;
        }
        let norms = self.log_norms();
        let mut best = 0;
        let mut acc = 0.0;
        for &p in primes() {
            let rk = self.to_mod(Modulus::new(p)).rank();
            best = best.max(rk);
            acc += (p as f64).log2();
            if best == cap {
                return best;
            }
            let bound: f64 = norms.iter().take(best + 1).sum::<f64>() + 1.0;
            if acc > bound {
                return best;
            }
        }
        rref_integer(self.dense_rows(), self.cols).1.len()
    }

    /// Rank certified from one modular computation when the modular nullity equals the
    /// number of known independent rational kernel vectors. Returns `None` when no prime
    /// among the first few reaches the certificate.
    pub fn rank_with_known_nullity(&self, known: usize) -> Option<usize> {
        for &p in primes().iter().take(3) {
            let rk = self.to_mod(Modulus::new(p)).rank();
            if self.cols - rk == known {
                return Some(rk);
            }
        }
        None
    }

    /// Exact kernel basis (normalized like `Matrix::kernel_basis`).
    pub fn kernel_basis(&self) -> Matrix {
        if self.rows.len() * self.cols > SMALL_SYSTEM {
            if let Some(k) = self.kernel_multimodular(64) {
                return k;
            }
        }
        let (rows, pivots) = rref_integer(self.dense_rows(), self.cols);
        let reduced = Matrix::from_fn(rows.len(), self.cols, |i, j| {
            if i < pivots.len() {
                BigRational::new(rows[i][j].clone(), rows[i][pivots[i]].clone())
            } else {
                Scalar::zero()
            }
        });
        kernel_from_rref(&reduced, &pivots, self.cols)
    }

    /// Multimodular kernel: modular reduced forms with the same pivot pattern are
    /// combined by CRT, entries are recovered by rational reconstruction and the
    /// candidate basis is verified exactly against every row.
    pub fn kernel_multimodular(&self, max_primes: usize) -> Option<Matrix> {
        let cols = self.cols;
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut residues: Vec<BigInt> = Vec::new();
        let mut modulus = BigInt::one();
        let mut count = 0usize;
        for &p in primes().iter().take(max_primes) {
            let m = Modulus::new(p);
            let (rr, pivots) = self.to_mod(m).rref();
            let rank = pivots.len();
            let better = match &best {
                None => true,
                Some((br, bp)) => rank > *br || (rank == *br && pivots < *bp),
            };
            let same = matches!(&best, Some((br, bp)) if *br == rank && *bp == pivots);
            if !same && !better {
                continue;
            }
            let free = free_columns(&pivots, cols);
            let vals: Vec<u64> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, _)| free.iter().map(move |&f| (row, f)))
                .map(|(row, f)| m.neg(rr.get(row, f)))
                .collect();
            if better && !same {
                best = Some((rank, pivots.clone()));
                residues = vals.iter().map(|&v| BigInt::from(v)).collect();
                modulus = BigInt::from(p);
                count = 1;
            } else {
                let pb = BigInt::from(p);
                let ninv = m.inv(m.from_bigint(&modulus)).expect("distinct primes");
                for (x, &v) in residues.iter_mut().zip(&vals) {
                    let xm = m.from_bigint(x);
                    let t = m.mul(m.sub(v, xm), ninv);
                    *x += &modulus * BigInt::from(t);
                }
                modulus *= pb;
                count += 1;
            }
            if !(count.is_power_of_two() || count.is_multiple_of(4)) {
                continue;
            }
            let (_, piv) = best.as_ref().expect("set above");
            if let Some(k) = self.reconstruct_and_verify(piv, &residues, &modulus) {
                return Some(k);
            }
        }
        None
    }

    fn reconstruct_and_verify(&self, pivots: &[usize], residues: &[BigInt], modulus: &BigInt) -> Option<Matrix> {
        let cols = self.cols;
        let free = free_columns(pivots, cols);
        let nf = free.len();
        let mut k = Matrix::zeros(cols, nf);
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, Scalar::one());
        }
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..nf {
                let v = rational_reconstruct(&residues[row * nf + j], modulus)?;
                k.set(pc, j, v);
            }
        }
        for j in 0..nf {
            let col = k.column(j);
            let l = col.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let v: Vec<(usize, BigInt)> = col
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.numer() * (&l / x.denom())))
                .collect();
            let mut dense = vec![BigInt::zero(); cols];
            for (i, x) in &v {
                dense[*i] = x.clone();
            }
            for row in &self.rows {
                let s: BigInt = row.iter().map(|(c, a)| a * &dense[*c]).sum();
                if !s.is_zero() {
                    return None;
                }
            }
        }
        Some(k)
    }
}

fn free_columns(pivots: &[usize], cols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

/// Recovers `r/s` with `|r|, s ≤ sqrt(N/2)` from `a mod N`.
pub fn rational_reconstruct(a: &BigInt, n: &BigInt) -> Option<Scalar> {
    let bound = (n / 2u32).sqrt();
    let (mut r0, mut r1) = (n.clone(), a.mod_floor(n));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Exact rank of a matrix given by primitive integer rows.
pub fn exact_rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let mut sys = IntSystem::new(cols);
    for r in rows {
        sys.push_dense(r.clone());
    }
    sys.exact_rank()
}

/// Multimodular kernel of a rational matrix.
pub fn kernel_basis_multimodular(m: &Matrix) -> Option<Matrix> {
    IntSystem::from_matrix(m).kernel_multimodular(64)
}
