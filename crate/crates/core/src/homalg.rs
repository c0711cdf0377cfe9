//! Hom and Ext¹ spaces, endomorphism analysis, extensions and universal extensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::functors::MorphismPair;
use crate::linalg::modular::{primes, IntSystem, ModMatrix, Modulus};
use crate::linalg::{int, Matrix, Scalar};
use crate::rep::{euler_form, DimVector, KroneckerRep};

/// Basis of `Hom(source, target)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: KroneckerRep,
    pub target: KroneckerRep,
    pub basis: Vec<MorphismPair>,
    pub dim: usize,
}

/// A cocycle for an extension `0 → x → E → y → 0`; `blocks[i]` has shape `x.y × y.x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtCocycle {
    pub y: KroneckerRep,
    pub x: KroneckerRep,
    pub blocks: Vec<Matrix>,
}

/// Ext¹ dimension and a basis of cocycle representatives.
#[derive(Clone, Debug)]
pub struct Ext1 {
    /// Cokernel dimension of the cocycle presentation.
    pub dim: usize,
    /// `dim Hom(y, x) − ⟨dim y, dim x⟩`.
    pub defect_dim: i64,
    pub cocycle_basis: Vec<ExtCocycle>,
}

/// Middle term of an extension with its structure morphisms.
#[derive(Clone, Debug)]
pub struct Extension {
    pub rep: KroneckerRep,
    pub inclusion: MorphismPair,
    pub projection: MorphismPair,
}

/// Three-valued indecomposability verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Indec {
    Yes,
    No,
    Inconclusive,
}

/// Endomorphism algebra summary. The trace-form radical criterion requires
/// characteristic zero, so this only runs on rational representations.
#[derive(Clone, Debug)]
pub struct EndAnalysis {
    pub end_dim: usize,
    pub rad_dim: usize,
    pub is_brick: bool,
    pub geometric_indec: Indec,
    /// A nontrivial idempotent, when one was found.
    pub idempotent: Option<MorphismPair>,
}

/// Verdict of the randomized isomorphism test; `Yes` is always correct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Yes,
    No,
    ProbablyNot,
}

/// Result of Bongartz' universal extension.
#[derive(Clone, Debug)]
pub struct UniversalExtension {
    pub e: KroneckerRep,
    pub inclusion: MorphismPair,
    pub projection: MorphismPair,
    /// `s_i = dim Ext¹(y, x_i)`.
    pub multiplicities: Vec<usize>,
}

fn check_arrows(a: &KroneckerRep, b: &KroneckerRep) -> Result<()> {
    if a.r() != b.r() {
        return Err(Error::ArrowMismatch { left: a.r(), right: b.r() });
    }
    Ok(())
}

/// The dense coefficient matrix of `(f1, f2) ↦ (f2·M_i − N_i·f1)_i`.
///
/// Unknowns: `vec f1` (row-major, `n.x × m.x`) then `vec f2` (`n.y × m.y`). Row
/// `i·(n.y·m.x) + a·m.x + b` is the `(a, b)` entry of the `i`-th component.
pub fn hom_matrix(m: &KroneckerRep, n: &KroneckerRep) -> Matrix {
    let (md, nd) = (m.dim(), n.dim());
    let off = nd.x * md.x;
    let cols = off + nd.y * md.y;
    let block = nd.y * md.x;
    let mut out = Matrix::zeros(m.r() * block, cols);
    for i in 0..m.r() {
        let (mi, ni) = (m.map(i), n.map(i));
        for a in 0..nd.y {
            for b in 0..md.x {
                let row = i * block + a * md.x + b;
                for c in 0..md.y {
                    let v = mi.get(c, b);
                    if !v.is_zero() {
                        out.set(row, off + a * md.y + c, v.clone());
                    }
                }
                for c in 0..nd.x {
                    let v = ni.get(a, c);
                    if !v.is_zero() {
                        let cur = out.get(row, c * md.x + b) - v;
                        out.set(row, c * md.x + b, cur);
                    }
                }
            }
        }
    }
    out
}

/// The Hom system as a sparse integer system (same unknown order as `hom_matrix`).
pub fn hom_system(m: &KroneckerRep, n: &KroneckerRep) -> IntSystem {
    let (md, nd) = (m.dim(), n.dim());
    let off = nd.x * md.x;
    let mut sys = IntSystem::new(off + nd.y * md.y);
    for i in 0..m.r() {
        let (mi, ni) = (m.map(i), n.map(i));
        for a in 0..nd.y {
            for b in 0..md.x {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                for c in 0..md.y {
                    let v = mi.get(c, b);
                    if !v.is_zero() {
                        row.push((off + a * md.y + c, v.clone()));
                    }
                }
                for c in 0..nd.x {
                    let v = ni.get(a, c);
                    if !v.is_zero() {
                        row.push((c * md.x + b, -v.clone()));
                    }
                }
                sys.push_rational(row);
            }
        }
    }
    sys
}

/// Contributions of single unknowns to a `y × r·x` matrix that is linear in them:
/// `terms[u]` lists `(row, col, coefficient)`.
pub(crate) type BlockTerms = Vec<Vec<(usize, usize, Scalar)>>;

/// Terms of `f1 ↦ ψ_N∘(id ⊗ f1)` with `f1: M_1 → N_1` (unknown `c·m.x + b`).
fn hom_terms(m: &KroneckerRep, n: &KroneckerRep) -> BlockTerms {
    let (mx, nd) = (m.dim().x, n.dim());
    let mut terms = vec![Vec::new(); nd.x * mx];
    for c in 0..nd.x {
        for b in 0..mx {
            let t = &mut terms[c * mx + b];
            for i in 0..m.r() {
                for a in 0..nd.y {
                    let v = n.map(i).get(a, c);
                    if !v.is_zero() {
                        t.push((a, i * mx + b, v.clone()));
                    }
                }
            }
        }
    }
    terms
}

/// Modular system `T(u)·K_p = 0`; `None` if ψ is not surjective modulo p.
pub(crate) fn reduced_system_mod(
    psi: &Matrix,
    terms: &BlockTerms,
    out_rows: usize,
    modulus: Modulus,
) -> Option<ModMatrix> {
    let psi_p = ModMatrix::from_matrix(psi, modulus)?;
    let y = psi.nrows();
    if psi_p.rank() != y {
        return None;
    }
    let k = psi_p.kernel_basis();
    let kc = k.ncols();
    let mut s = ModMatrix::zeros(modulus, out_rows * kc, terms.len());
    for (u, t) in terms.iter().enumerate() {
        for (a, q, v) in t {
            let v = modulus.from_rational(v)?;
            for l in 0..kc {
                let kv = k.get(*q, l);
                if kv != 0 {
                    let row = a * kc + l;
                    let cur = s.get(row, u);
                    s.set(row, u, modulus.add(cur, modulus.mul(v, kv)));
                }
            }
        }
    }
    Some(s)
}

/// Exact system `T(u)·K = 0` with `K = kernel_basis(ψ)`; `None` if ψ is not surjective.
pub(crate) fn reduced_system_exact(psi: &Matrix, terms: &BlockTerms, out_rows: usize) -> Result<Option<IntSystem>> {
    let y = psi.nrows();
    if psi.rank() != y {
        return Ok(None);
    }
    let k = psi.kernel_basis();
    let kc = k.ncols();
    if out_rows * kc * terms.len() > EXACT_BUDGET {
        return Err(Error::BudgetExhausted(format!(
            "exact reduced system of size {}x{} exceeds the dense budget",
            out_rows * kc,
            terms.len()
        )));
    }
    let mut dense = vec![vec![Scalar::zero(); terms.len()]; out_rows * kc];
    for (u, t) in terms.iter().enumerate() {
        for (a, q, v) in t {
            for l in 0..kc {
                let kv = k.get(*q, l);
                if !kv.is_zero() {
                    dense[a * kc + l][u] += v * kv;
                }
            }
        }
    }
    let mut sys = IntSystem::new(terms.len());
    for row in dense {
        sys.push_rational(row.into_iter().enumerate().collect());
    }
    Ok(Some(sys))
}

/// Dense entry budget for exact fallbacks.
const EXACT_BUDGET: usize = 3_000_000;

/// Exact nullity of a problem that has a full system and, when ψ is surjective, a
/// reduced one. Modular nullities bound the rational one from above; a match with
/// `known_lower` (the number of independent solutions known in advance) certifies it.
pub(crate) fn certified_nullity(
    full: &dyn Fn() -> IntSystem,
    psi: &Matrix,
    terms: &BlockTerms,
    out_rows: usize,
    known_lower: usize,
) -> Result<usize> {
    let mut full_sys: Option<IntSystem> = None;
    let mut upper = usize::MAX;
    for &p in primes().iter().take(2) {
        let modulus = Modulus::new(p);
        let hp = match reduced_system_mod(psi, terms, out_rows, modulus) {
            Some(s) => s.nullity(),
            None => full_sys.get_or_insert_with(full).to_mod(modulus).nullity(),
        };
        upper = upper.min(hp);
        if upper <= known_lower {
            return Ok(upper);
        }
    }
    match reduced_system_exact(psi, terms, out_rows)? {
        Some(s) => Ok(s.nullity()),
        None => Ok(full_sys.get_or_insert_with(full).nullity()),
    }
}

/// Exact `dim Hom(m, n)`.
pub fn hom_dim(m: &KroneckerRep, n: &KroneckerRep) -> Result<usize> {
    hom_dim_at_least(m, n, 0)
}

/// Exact `dim Hom(m, n)` given that at least `known_lower` independent morphisms exist;
/// the bound only speeds up certification.
pub fn hom_dim_at_least(m: &KroneckerRep, n: &KroneckerRep, known_lower: usize) -> Result<usize> {
    check_arrows(m, n)?;
    // Hom(m, n) ≅ Hom(Dn, Dm); solve whichever side has the smaller system.
    let (md, nd, r) = (m.dim(), n.dim(), m.r());
    if system_cost(nd.swapped(), md.swapped(), r) < system_cost(md, nd, r) {
        return hom_dim_direct(&n.dual(), &m.dual(), known_lower);
    }
    hom_dim_direct(m, n, known_lower)
}

/// Dense size of the reduced system when ψ_m can be surjective, else of the full one.
fn system_cost(md: DimVector, nd: DimVector, r: usize) -> usize {
    if r * md.x >= md.y {
        nd.y * (r * md.x - md.y) * nd.x * md.x
    } else {
        r * nd.y * md.x * (nd.x * md.x + nd.y * md.y)
    }
}

fn hom_dim_direct(m: &KroneckerRep, n: &KroneckerRep, known_lower: usize) -> Result<usize> {
    let (mi, ni) = (m.integerized(), n.integerized());
    let terms = hom_terms(&mi, &ni);
    certified_nullity(&|| hom_system(&mi, &ni), &mi.psi(), &terms, ni.dim().y, known_lower)
}

/// Exact `dim End(m)` (the identity gives the lower bound 1 for nonzero m).
pub fn end_dim(m: &KroneckerRep) -> Result<usize> {
    let lower = usize::from(!m.is_zero_object());
    hom_dim_at_least(m, m, lower)
}

/// A basis of `Hom(m, n)`. When ψ_m is surjective the f1 components are solved from the
/// reduced system and `f2 = ψ_n∘(id ⊗ f1)∘R` for a right inverse R of ψ_m.
pub fn hom_basis(m: &KroneckerRep, n: &KroneckerRep) -> Result<HomBasis> {
    check_arrows(m, n)?;
    let (md, nd) = (m.dim(), n.dim());
    let psi = m.psi();
    let mut basis = Vec::new();
    if let Some(sys) = reduced_system_exact(&psi, &hom_terms(m, n), nd.y)? {
        let k = sys.kernel_basis();
        let rinv = psi
            .solve(&Matrix::identity(md.y))?
            .ok_or_else(|| Error::Internal("surjective ψ without right inverse".into()))?;
        let psi_n = n.psi();
        for j in 0..k.ncols() {
            let f1 = Matrix::from_fn(nd.x, md.x, |c, b| k.get(c * md.x + b, j).clone());
            let f2 = psi_n.checked_mul(&Matrix::kron_eye(m.r(), &f1))?.checked_mul(&rinv)?;
            basis.push(MorphismPair::from_parts(m.clone(), n.clone(), f1, f2));
        }
    } else {
        let k = hom_system(m, n).kernel_basis();
        let off = nd.x * md.x;
        for j in 0..k.ncols() {
            let f1 = Matrix::from_fn(nd.x, md.x, |c, b| k.get(c * md.x + b, j).clone());
            let f2 = Matrix::from_fn(nd.y, md.y, |a, c| k.get(off + a * md.y + c, j).clone());
            basis.push(MorphismPair::from_parts(m.clone(), n.clone(), f1, f2));
        }
    }
    debug_assert!(basis.iter().all(|f| f.check().is_ok()));
    let dim = basis.len();
    Ok(HomBasis { source: m.clone(), target: n.clone(), basis, dim })
}

/// `Σ_j c_j·basis_j`.
pub fn combine(h: &HomBasis, coeffs: &[Scalar]) -> MorphismPair {
    let (sd, td) = (h.source.dim(), h.target.dim());
    let mut f1 = Matrix::zeros(td.x, sd.x);
    let mut f2 = Matrix::zeros(td.y, sd.y);
    for (c, f) in coeffs.iter().zip(&h.basis) {
        if c.is_zero() {
            continue;
        }
        f1 = &f1 + &f.f1.scale(c);
        f2 = &f2 + &f.f2.scale(c);
    }
    MorphismPair::from_parts(h.source.clone(), h.target.clone(), f1, f2)
}

/// Ext¹(y, x) as the cokernel of `(f1, f2) ↦ (f2·y_i − x_i·f1)_i`.
///
/// The cocycle basis consists of unit cocycles at the coordinates that are not pivots of
/// `rref(Dᵀ)`, a complement of the coboundaries.
pub fn ext1(y: &KroneckerRep, x: &KroneckerRep) -> Result<Ext1> {
    check_arrows(y, x)?;
    let (yd, xd) = (y.dim(), x.dim());
    let block = xd.y * yd.x;
    let rows = y.r() * block;
    let hom = hom_dim(y, x)?;
    let cols = xd.x * yd.x + xd.y * yd.y;
    let rank = cols - hom;
    let defect_dim = hom as i64 - euler_form(yd, xd, y.r());
    let pivots = coboundary_pivots(y, x, rank)?;
    let mut is_pivot = vec![false; rows];
    for p in pivots {
        is_pivot[p] = true;
    }
    let cocycle_basis: Vec<ExtCocycle> = (0..rows)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let (i, rest) = (j / block, j % block);
            let (a, b) = (rest / yd.x, rest % yd.x);
            let blocks = (0..y.r())
                .map(|k| {
                    let mut c = Matrix::zeros(xd.y, yd.x);
                    if k == i {
                        c.set(a, b, Scalar::one());
                    }
                    c
                })
                .collect();
            ExtCocycle { y: y.clone(), x: x.clone(), blocks }
        })
        .collect();
    Ok(Ext1 { dim: rows - rank, defect_dim, cocycle_basis })
}

/// `dim Ext¹(y, x) = dim Hom(y, x) − ⟨dim y, dim x⟩`.
pub fn ext1_dim(y: &KroneckerRep, x: &KroneckerRep) -> Result<usize> {
    let hom = hom_dim(y, x)? as i64;
    let e = hom - euler_form(y.dim(), x.dim(), y.r());
    usize::try_from(e).map_err(|_| Error::Internal("negative Ext dimension".into()))
}

/// Pivot rows of the coboundary matrix D, i.e. pivot columns of `rref(Dᵀ)`.
fn coboundary_pivots(y: &KroneckerRep, x: &KroneckerRep, rank: usize) -> Result<Vec<usize>> {
    let d = hom_matrix(y, x);
    if d.nrows() * d.ncols() <= 40_000 {
        let rr = d.transpose().rref();
        if rr.rank != rank {
            return Err(Error::Internal("coboundary rank mismatch".into()));
        }
        return Ok(rr.pivots);
    }
    // Rows independent modulo p are independent over ℚ; with the exact rank known, a
    // modular pivot set of full size is an exact row basis.
    let (yi, xi) = (y.integerized(), x.integerized());
    let dt = hom_matrix(&yi, &xi).transpose();
    for &p in primes().iter().take(8) {
        let modulus = Modulus::new(p);
        let Some(mm) = ModMatrix::from_matrix(&dt, modulus) else {
            continue;
        };
        let (_, piv) = mm.rref();
        if piv.len() == rank {
            return Ok(piv);
        }
    }
    Err(Error::Internal("no prime realized the coboundary rank".into()))
}

impl ExtCocycle {
    pub fn zero(y: &KroneckerRep, x: &KroneckerRep) -> Self {
        ExtCocycle { y: y.clone(), x: x.clone(), blocks: vec![Matrix::zeros(x.dim().y, y.dim().x); y.r()] }
    }

    /// `Σ_j c_j·basis_j`.
    pub fn combination(basis: &[ExtCocycle], coeffs: &[Scalar]) -> Option<Self> {
        let first = basis.first()?;
        let mut out = ExtCocycle::zero(&first.y, &first.x);
        for (c, b) in coeffs.iter().zip(basis) {
            for (o, bl) in out.blocks.iter_mut().zip(&b.blocks) {
                *o = &*o + &bl.scale(c);
            }
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }
}

/// Middle term with maps `[[x_i, C_i], [0, y_i]]`.
pub fn extension_from_cocycle(c: &ExtCocycle) -> Result<Extension> {
    check_arrows(&c.y, &c.x)?;
    let (yd, xd) = (c.y.dim(), c.x.dim());
    if c.blocks.len() != c.y.r() || c.blocks.iter().any(|b| b.shape() != (xd.y, yd.x)) {
        return Err(Error::DimensionMismatch("cocycle block shapes".into()));
    }
    let ed = xd + yd;
    let maps = (0..c.y.r())
        .map(|i| {
            let mut m = Matrix::zeros(ed.y, ed.x);
            m.set_block(0, 0, c.x.map(i));
            m.set_block(0, xd.x, &c.blocks[i]);
            m.set_block(xd.y, xd.x, c.y.map(i));
            m
        })
        .collect();
    let e = KroneckerRep::new(c.y.r(), ed, maps)?;
    let incl1 = Matrix::vconcat(&[&Matrix::identity(xd.x), &Matrix::zeros(yd.x, xd.x)])?;
    let incl2 = Matrix::vconcat(&[&Matrix::identity(xd.y), &Matrix::zeros(yd.y, xd.y)])?;
    let proj1 = Matrix::hconcat(&[&Matrix::zeros(yd.x, xd.x), &Matrix::identity(yd.x)])?;
    let proj2 = Matrix::hconcat(&[&Matrix::zeros(yd.y, xd.y), &Matrix::identity(yd.y)])?;
    let inclusion = MorphismPair::new(c.x.clone(), e.clone(), incl1, incl2)?;
    let projection = MorphismPair::new(e.clone(), c.y.clone(), proj1, proj2)?;
    Ok(Extension { rep: e, inclusion, projection })
}

fn trace(m: &Matrix) -> Scalar {
    (0..m.nrows().min(m.ncols())).fold(Scalar::zero(), |acc, i| acc + m.get(i, i))
}

/// Endomorphism analysis: dimension, trace-form radical, brick and indecomposability.
pub fn end_analysis(m: &KroneckerRep) -> Result<EndAnalysis> {
    let end_dim = end_dim(m)?;
    if end_dim <= 1 {
        return Ok(EndAnalysis {
            end_dim,
            rad_dim: 0,
            is_brick: end_dim == 1,
            geometric_indec: if end_dim == 1 { Indec::Yes } else { Indec::No },
            idempotent: None,
        });
    }
    let h = hom_basis(m, m)?;
    let k = h.dim;
    let gram = Matrix::from_fn(k, k, |i, j| {
        let (a, b) = (&h.basis[i], &h.basis[j]);
        trace(&(&a.f1 * &b.f1)) + trace(&(&a.f2 * &b.f2))
    });
    let rad_dim = k - gram.rank();
    if k - rad_dim == 1 {
        return Ok(EndAnalysis { end_dim: k, rad_dim, is_brick: false, geometric_indec: Indec::Yes, idempotent: None });
    }
    let idempotent = find_idempotent(&h)?;
    Ok(EndAnalysis {
        end_dim: k,
        rad_dim,
        is_brick: false,
        geometric_indec: if idempotent.is_some() { Indec::No } else { Indec::Inconclusive },
        idempotent,
    })
}

fn mat_pow(a: &Matrix, mut e: usize) -> Matrix {
    let mut base = a.clone();
    let mut acc = Matrix::identity(a.nrows());
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// Projection onto `im a` along `ker a` (valid when `V = im a ⊕ ker a`).
fn fitting_projection(a: &Matrix) -> Option<Matrix> {
    let n = a.nrows();
    let im = a.transpose().rref();
    let im_basis = im.reduced.block(0, im.rank, 0, n).transpose();
    let ker = a.kernel_basis();
    let b = Matrix::hconcat(&[&im_basis, &ker]).ok()?;
    let binv = b.inverse()?;
    let mut d = Matrix::zeros(n, n);
    for i in 0..im.rank {
        d.set(i, i, Scalar::one());
    }
    Some(&(&b * &d) * &binv)
}

/// Searches Fitting decompositions of natural candidates: basis elements, random
/// combinations, and their shifts by rational eigenvalues.
fn find_idempotent(h: &HomBasis) -> Result<Option<MorphismPair>> {
    let m = &h.source;
    let n = m.dim().total();
    let id = MorphismPair::identity(m);
    let mut candidates: Vec<MorphismPair> = h.basis.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..4 {
        let coeffs: Vec<Scalar> = (0..h.dim).map(|_| int(rng.gen_range(-3..=3))).collect();
        candidates.push(combine(h, &coeffs));
    }
    for phi in candidates {
        let mut shifted = vec![phi.clone()];
        for lambda in rational_eigenvalues(&phi, h.dim) {
            shifted.push(MorphismPair::from_parts(
                m.clone(),
                m.clone(),
                &phi.f1 - &id.f1.scale(&lambda),
                &phi.f2 - &id.f2.scale(&lambda),
            ));
        }
        for psi in shifted {
            let (p1, p2) = (mat_pow(&psi.f1, n), mat_pow(&psi.f2, n));
            let rk = p1.rank() + p2.rank();
            if rk == 0 || rk == n {
                continue;
            }
            let (Some(e1), Some(e2)) = (fitting_projection(&p1), fitting_projection(&p2)) else {
                continue;
            };
            let e = MorphismPair::from_parts(m.clone(), m.clone(), e1, e2);
            if e.check().is_ok() {
                return Ok(Some(e));
            }
        }
    }
    Ok(None)
}

/// Rational roots of the minimal polynomial of `phi` inside its endomorphism algebra.
fn rational_eigenvalues(phi: &MorphismPair, max_deg: usize) -> Vec<Scalar> {
    let vec_of = |f: &MorphismPair| -> Vec<Scalar> { f.f1.entries().iter().chain(f.f2.entries()).cloned().collect() };
    let id = MorphismPair::identity(&phi.source);
    let mut powers = vec![vec_of(&id)];
    let mut cur = id;
    let mut poly: Option<Vec<Scalar>> = None;
    for deg in 1..=max_deg + 1 {
        cur = cur.then(phi).expect("endomorphisms compose");
        let target = vec_of(&cur);
        let len = target.len();
        let a = Matrix::from_fn(len, deg, |i, j| powers[j][i].clone());
        let b = Matrix::column_vector(target.clone());
        if let Ok(Some(c)) = a.solve(&b) {
            let mut p: Vec<Scalar> = (0..deg).map(|j| -c.get(j, 0).clone()).collect();
            p.push(Scalar::one());
            poly = Some(p);
            break;
        }
        powers.push(target);
    }
    let Some(p) = poly else {
        return Vec::new();
    };
    rational_roots(&p)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let v = n.abs().to_u64()?;
    if v == 0 || v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial given by ascending coefficients.
fn rational_roots(p: &[Scalar]) -> Vec<Scalar> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut coeffs: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut roots = Vec::new();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        if !roots.contains(&Scalar::zero()) {
            roots.push(Scalar::zero());
        }
    }
    if coeffs.len() <= 1 {
        return roots;
    }
    let (Some(ps), Some(qs)) = (divisors(&coeffs[0]), divisors(coeffs.last().expect("nonempty"))) else {
        return roots;
    };
    for pn in &ps {
        for qd in &qs {
            for sign in [1i64, -1] {
                let cand = Scalar::new(pn * sign, qd.clone());
                if roots.contains(&cand) {
                    continue;
                }
                let val = p.iter().rev().fold(Scalar::zero(), |acc, c| acc * &cand + c);
                if val.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

/// Randomized isomorphism test with the default 16 samples.
pub fn is_isomorphic(m: &KroneckerRep, n: &KroneckerRep, seed: u64) -> IsoVerdict {
    is_isomorphic_with(m, n, seed, 16)
}

pub fn is_isomorphic_with(m: &KroneckerRep, n: &KroneckerRep, seed: u64, samples: usize) -> IsoVerdict {
    if m.r() != n.r() || m.dim() != n.dim() {
        return IsoVerdict::No;
    }
    if m.is_zero_object() {
        return IsoVerdict::Yes;
    }
    let (Ok(a), Ok(b)) = (hom_dim(m, n), hom_dim(n, m)) else {
        return IsoVerdict::ProbablyNot;
    };
    if a != b || a == 0 {
        return IsoVerdict::No;
    }
    let Ok(h) = hom_basis(m, n) else {
        return IsoVerdict::ProbablyNot;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let coeffs: Vec<Scalar> = (0..h.dim).map(|_| int(rng.gen_range(-10..=10))).collect();
        if combine(&h, &coeffs).is_isomorphism() {
            return IsoVerdict::Yes;
        }
    }
    IsoVerdict::ProbablyNot
}

/// Bongartz' universal extension `0 → ⊕ x_i^{s_i} → e → y → 0` built from full
/// cocycle bases.
pub fn universal_extension(y: &KroneckerRep, xs: &[KroneckerRep]) -> Result<UniversalExtension> {
    let mut multiplicities = Vec::with_capacity(xs.len());
    let mut sum = KroneckerRep::zero(y.r());
    let mut cocycles: Vec<ExtCocycle> = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let ext = ext1(y, x)?;
        if ext.dim == 0 {
            return Err(Error::Precondition(format!("Ext¹(y, x_{i}) vanishes")));
        }
        multiplicities.push(ext.dim);
        for c in ext.cocycle_basis {
            sum = sum.direct_sum(x)?;
            cocycles.push(c);
        }
    }
    let blocks = (0..y.r())
        .map(|k| {
            let parts: Vec<&Matrix> = cocycles.iter().map(|c| &c.blocks[k]).collect();
            Matrix::vconcat(&parts)
        })
        .collect::<Result<Vec<_>>>()?;
    let stacked = ExtCocycle { y: y.clone(), x: sum, blocks };
    let ext = extension_from_cocycle(&stacked)?;
    let composite = ext.inclusion.then(&ext.projection)?;
    if !composite.is_zero() || ext.rep.dim() != stacked.x.dim() + y.dim() {
        return Err(Error::Internal("universal extension is not exact".into()));
    }
    Ok(UniversalExtension { e: ext.rep, inclusion: ext.inclusion, projection: ext.projection, multiplicities })
}

/// Dimension vector of a universal extension without building it.
pub fn universal_extension_dim(y: DimVector, xs: &[(DimVector, usize)]) -> DimVector {
    xs.iter().fold(y, |acc, (d, s)| acc + d.scale(*s))
}
