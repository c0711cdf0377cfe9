//! Splitting types over lines, line sampling, generic decomposition, jumping lines,
//! uniformity and homogeneity certificates, and Steiner invariants.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canonical::{a_seq, split_k2, SplittingType};
use crate::error::{Error, Result};
use crate::functors::{shift_on_morphism, Adjunction, Direction, MorphismPair};
use crate::homalg::{certified_nullity, combine, end_analysis, hom_basis, hom_dim, BlockTerms, Indec};
use crate::linalg::modular::IntSystem;
use crate::linalg::{int, Matrix, Scalar};
use crate::rep::{tits_form, DimVector, KroneckerRep, SubspaceMap};
use crate::test_reps::{p_test, Sign};

/// Default entry bound for random planes.
pub const DEFAULT_LINE_BOUND: i64 = 10;

/// How a verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    SampledEvidence { n_samples: usize },
    Refuted,
}

/// Concrete evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Subspace { subspace: String, value: String },
    Pair { first: String, first_value: String, second: String, second_value: String },
    Value { description: String },
}

/// One claim with its status and the rule that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub status: Status,
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn new(claim: impl Into<String>, status: Status, rule: impl Into<String>) -> Self {
        Verdict { claim: claim.into(), status, rule: rule.into(), witness: None }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub verdicts: Vec<Verdict>,
    pub splitting: Option<SplittingType>,
    pub support: Vec<usize>,
    pub k_type: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_dim: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CertificateReport {
    pub fn any_refuted(&self) -> bool {
        self.verdicts.iter().any(Verdict::is_refuted)
    }

    /// The verdict for `claim`, if present.
    pub fn verdict(&self, claim: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.claim == claim)
    }

    pub fn merge(&mut self, other: CertificateReport) {
        self.verdicts.extend(other.verdicts);
        self.notes.extend(other.notes);
        if self.splitting.is_none() {
            self.splitting = other.splitting;
            self.support = other.support;
            self.k_type = other.k_type;
        }
        if self.stabilizer_dim.is_none() {
            self.stabilizer_dim = other.stabilizer_dim;
        }
    }
}

fn require_line(v: &SubspaceMap) -> Result<()> {
    if v.d() != 2 {
        return Err(Error::Precondition(format!("a line needs a 2-dimensional subspace, got d = {}", v.d())));
    }
    Ok(())
}

/// Splitting type of `m` restricted to the line `v`.
pub fn splitting_at_line(m: &KroneckerRep, v: &SubspaceMap) -> Result<SplittingType> {
    require_line(v)?;
    split_k2(&m.restrict(v)?)
}

/// Which planes `line_sampler` produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Random,
    Coordinate,
    Mixed,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Strategy::Random),
            "coordinate" => Ok(Strategy::Coordinate),
            "mixed" => Ok(Strategy::Mixed),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

/// All coordinate planes span(γ_i, γ_j), i < j.
pub fn coordinate_planes(r: usize) -> Vec<SubspaceMap> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            out.push(SubspaceMap::coordinate(r, &[i, j]).expect("distinct coordinates"));
        }
    }
    out
}

/// A deterministic list of canonical planes in A_r.
pub fn line_sampler(r: usize, n: usize, seed: u64, strategy: Strategy, bound: i64) -> Result<Vec<SubspaceMap>> {
    if r < 2 {
        return Err(Error::Precondition(format!("lines need r >= 2, got {r}")));
    }
    let mut out = Vec::new();
    if strategy != Strategy::Random {
        out.extend(coordinate_planes(r));
    }
    if strategy != Strategy::Coordinate {
        let mut seen: BTreeSet<String> = out.iter().map(SubspaceMap::to_literal).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut added = 0;
        let mut attempts = 0;
        // Gr_2(A_2) is a point and small bounds give few planes, so collisions are capped.
        while added < n && attempts < 100 * n.max(1) {
            attempts += 1;
            let v = SubspaceMap::random(2, r, bound, &mut rng);
            if seen.insert(v.to_literal()) {
                out.push(v);
                added += 1;
            }
        }
    }
    Ok(out)
}

/// The majority splitting type and the sampled lines that disagree with it.
#[derive(Clone, Debug)]
pub struct GenericDecomposition {
    pub gen: SplittingType,
    pub dissenters: Vec<(SubspaceMap, SplittingType)>,
}

/// Splitting types at every line, grouped into classes in order of first appearance.
fn splitting_classes(m: &KroneckerRep, lines: &[SubspaceMap]) -> Result<Vec<(SplittingType, Vec<usize>)>> {
    let mut classes: Vec<(SplittingType, Vec<usize>)> = Vec::new();
    for (k, v) in lines.iter().enumerate() {
        let st = splitting_at_line(m, v)?;
        match classes.iter_mut().find(|(t, _)| *t == st) {
            Some((_, idx)) => idx.push(k),
            None => classes.push((st, vec![k])),
        }
    }
    Ok(classes)
}

pub fn generic_decomposition(m: &KroneckerRep, lines: &[SubspaceMap]) -> Result<GenericDecomposition> {
    if lines.is_empty() {
        return Err(Error::Precondition("no lines to sample".into()));
    }
    let classes = splitting_classes(m, lines)?;
    let Some(pos) = classes.iter().position(|(_, idx)| 2 * idx.len() > lines.len()) else {
        let summary: Vec<String> = classes
            .iter()
            .map(|(t, idx)| format!("{} lines: {}", idx.len(), serde_json::to_string(t).unwrap_or_default()))
            .collect();
        return Err(Error::Precondition(format!(
            "no strict majority among {} lines ({})",
            lines.len(),
            summary.join("; ")
        )));
    };
    let gen = classes[pos].0.clone();
    let dissenters = classes
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != pos)
        .flat_map(|(_, (t, idx))| idx.iter().map(move |&i| (lines[i].clone(), t.clone())))
        .collect();
    Ok(GenericDecomposition { gen, dissenters })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpingTest {
    pub in_rank_variety: bool,
    pub hom_witness_dim: usize,
}

/// Decides `v ∈ 𝒱(K_r, d)_m` by `Hom(P_1⁻(v), m) ≠ 0` and cross-checks it against
/// injectivity of ψ on `v ⊗ m_1`.
pub fn jumping_test(m: &KroneckerRep, v: &SubspaceMap) -> Result<JumpingTest> {
    let e = p_test(1, v, Sign::Minus)?;
    let h = hom_dim(&e.rep, m)?;
    let (_, injective) = m.rank_at_subspace(v)?;
    if (h > 0) == injective {
        return Err(Error::Internal(format!(
            "Hom criterion ({h}) and rank criterion (injective: {injective}) disagree at {}",
            v.to_literal()
        )));
    }
    Ok(JumpingTest { in_rank_variety: h > 0, hom_witness_dim: h })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTermCheck {
    pub holds: bool,
    /// Predicted multiplicities of P_n(d) and P_{n+1}(d).
    pub predicted: (i64, i64),
    pub hom_minus: usize,
    pub hom_plus: usize,
}

/// Whether `m|_v ∈ add(P_n(d), P_{n+1}(d))`, decided by
/// `Hom(P_{n+1}⁻(v), m) = 0 = Hom(m, P_n⁺(v))`.
pub fn two_term_support_check(m: &KroneckerRep, n: usize, v: &SubspaceMap) -> Result<TwoTermCheck> {
    let d = v.d();
    let a = a_seq(d, n + 2)?;
    let (an, an1, an2) = (a[n] as i64, a[n + 1] as i64, a[n + 2] as i64);
    let (x, y) = (m.dim().x as i64, m.dim().y as i64);
    let predicted = (-an2 * x + an1 * y, an1 * x - an * y);
    let hom_minus = hom_dim(&p_test(n + 1, v, Sign::Minus)?.rep, m)?;
    let hom_plus = if n == 0 { 0 } else { hom_dim(m, &p_test(n, v, Sign::Plus)?.rep)? };
    let holds = hom_minus == 0 && hom_plus == 0;
    if holds && d == 2 {
        let st = splitting_at_line(m, v)?;
        let mut expected = SplittingType::default();
        for (i, c) in [(n, predicted.0), (n + 1, predicted.1)] {
            if c > 0 {
                expected.b.insert(i, c as usize);
            }
        }
        if st != expected {
            return Err(Error::Internal(format!(
                "two-term check holds at {} but the splitting type disagrees",
                v.to_literal()
            )));
        }
    }
    Ok(TwoTermCheck { holds, predicted, hom_minus, hom_plus })
}

/// `q_r(dim m) + Δ_m(d) ≥ 1`, the dimension part of the rep_proj(K_r, d) certificate.
pub fn proj_certificate_inequality(m: &KroneckerRep, d: usize) -> bool {
    tits_form(m.dim(), m.r()) + m.dim().delta(d) >= 1
}

fn set_splitting(report: &mut CertificateReport, st: SplittingType) {
    report.support = st.support();
    report.k_type = report.support.last().copied();
    report.splitting = Some(st);
}

/// Uniformity over sampled lines, with the exact rep_proj(K_r, 2) certificate when it applies.
pub fn uniformity_report(m: &KroneckerRep, lines: &[SubspaceMap]) -> Result<CertificateReport> {
    if lines.is_empty() {
        return Err(Error::Precondition("no lines to sample".into()));
    }
    let (r, dim) = (m.r(), m.dim());
    let mut report = CertificateReport::default();

    let screen = dim.delta(2) >= ((r as i64) - 2) * dim.x.min(2) as i64;
    let mut certified = false;
    if !screen {
        report.verdicts.push(Verdict::new("m ∈ rep_proj(K_r,2)", Status::Refuted, "Thm2.3.1(2)").with_witness(
            Witness::Value {
                description: format!(
                    "Δ_M(2) = {} < (r−2)·min(2, dim M₁) = {}",
                    dim.delta(2),
                    (r as i64 - 2) * dim.x.min(2) as i64
                ),
            },
        ));
    } else if proj_certificate_inequality(m, 2) && end_analysis(m)?.geometric_indec == Indec::Yes {
        certified = true;
        report.verdicts.push(Verdict::new("m ∈ rep_proj(K_r,2)", Status::Certified, "Prop2.3.3"));
        if dim.x > 0 {
            report.verdicts.push(Verdict::new("uniform", Status::Certified, "Prop1.5.5"));
        }
    }

    let classes = splitting_classes(m, lines)?;
    if classes.len() > 1 {
        let (t1, i1) = &classes[0];
        let (t2, i2) = &classes[1];
        let st = |t: &SplittingType| serde_json::to_string(t).unwrap_or_default();
        report.verdicts.push(Verdict::new("uniform", Status::Refuted, "line-splitting").with_witness(Witness::Pair {
            first: lines[i1[0]].to_literal(),
            first_value: st(t1),
            second: lines[i2[0]].to_literal(),
            second_value: st(t2),
        }));
        if let Some((t, _)) = classes.iter().find(|(_, idx)| 2 * idx.len() > lines.len()) {
            set_splitting(&mut report, t.clone());
        }
        return Ok(report);
    }
    let common = classes[0].0.clone();
    let support = common.support();
    if !certified {
        let two_term = match support.as_slice() {
            [n] => Some(*n),
            [n, k] if *k == n + 1 => Some(*n),
            _ => None,
        };
        let mut rule = "line-splitting";
        if let Some(n) = two_term.filter(|_| common.remainder.is_none()) {
            let mut all = true;
            for v in lines {
                all &= two_term_support_check(m, n, v)?.holds;
            }
            if all {
                rule = "Thm4.3.5-line";
            }
        }
        report.verdicts.push(Verdict::new("uniform", Status::SampledEvidence { n_samples: lines.len() }, rule));
    }
    set_splitting(&mut report, common);
    Ok(report)
}

/// Contributions of `(A, B_1)` to `Σ_j A[j][i]·M_j + M_i·B_1` (block i), unknowns ordered
/// `A[j][i]` at `j·r + i`, then `B_1[c][b]` at `r² + c·x + b`.
fn stabilizer_terms(m: &KroneckerRep) -> BlockTerms {
    let (r, x, y) = (m.r(), m.dim().x, m.dim().y);
    let mut terms = vec![Vec::new(); r * r + x * x];
    for j in 0..r {
        for i in 0..r {
            let t = &mut terms[j * r + i];
            for a in 0..y {
                for b in 0..x {
                    let v = m.map(j).get(a, b);
                    if !v.is_zero() {
                        t.push((a, i * x + b, v.clone()));
                    }
                }
            }
        }
    }
    for c in 0..x {
        for b in 0..x {
            let t = &mut terms[r * r + c * x + b];
            for i in 0..r {
                for a in 0..y {
                    let v = m.map(i).get(a, c);
                    if !v.is_zero() {
                        t.push((a, i * x + b, v.clone()));
                    }
                }
            }
        }
    }
    terms
}

/// The full stabilizer system over gl(A_r) × gl(M_1) × gl(M_2).
pub fn stabilizer_system(m: &KroneckerRep) -> IntSystem {
    let (r, x, y) = (m.r(), m.dim().x, m.dim().y);
    let (b1, b2) = (r * r, r * r + x * x);
    let mut sys = IntSystem::new(b2 + y * y);
    for i in 0..r {
        let mi = m.map(i);
        for a in 0..y {
            for b in 0..x {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                for c in 0..y {
                    row.push((b2 + a * y + c, mi.get(c, b).clone()));
                }
                for j in 0..r {
                    row.push((j * r + i, -m.map(j).get(a, b).clone()));
                }
                for c in 0..x {
                    row.push((b1 + c * x + b, -mi.get(a, c).clone()));
                }
                sys.push_rational(row);
            }
        }
    }
    sys
}

/// Dimension of the infinitesimal stabilizer of m under GL(A_r) × GL(M_1) × GL(M_2).
pub fn stabilizer_dim(m: &KroneckerRep) -> Result<usize> {
    let mi = m.integerized();
    // The torus (λ·id, μ·id, (λ+μ)·id) always stabilizes.
    let lower = if mi.dim().total() == 0 { 1 } else { 2 };
    certified_nullity(&|| stabilizer_system(&mi), &mi.psi(), &stabilizer_terms(&mi), mi.dim().y, lower)
}

/// 1-dimensional probe subspaces: γ_i, γ_i − γ_j and γ_i + γ_j.
pub fn probe_points(r: usize) -> Vec<SubspaceMap> {
    let mut out: Vec<SubspaceMap> =
        (0..r).map(|i| SubspaceMap::coordinate(r, &[i]).expect("valid coordinate")).collect();
    for i in 0..r {
        for j in i + 1..r {
            for s in [-1, 1] {
                let mut v = Matrix::zeros(r, 1);
                v.set(i, 0, int(1));
                v.set(j, 0, int(s));
                out.push(SubspaceMap::new(&v).expect("nonzero vector"));
            }
        }
    }
    out
}

/// A pair of subspaces of equal dimension at which `rank ψ_{m,v}` differs.
pub fn rank_variation(m: &KroneckerRep, subspaces: &[SubspaceMap]) -> Result<Option<Witness>> {
    let mut seen: Vec<(usize, usize, &SubspaceMap)> = Vec::new();
    for v in subspaces {
        let (rank, _) = m.rank_at_subspace(v)?;
        if let Some((_, r0, v0)) = seen.iter().find(|(d, r0, _)| *d == v.d() && *r0 != rank) {
            return Ok(Some(Witness::Pair {
                first: v0.to_literal(),
                first_value: format!("rank {r0}"),
                second: v.to_literal(),
                second_value: format!("rank {rank}"),
            }));
        }
        if !seen.iter().any(|(d, _, _)| *d == v.d()) {
            seen.push((v.d(), rank, v));
        }
    }
    Ok(None)
}

/// Homogeneity via the stabilizer dimension (bricks only) and rank variation over the
/// given subspaces and the standard probe points. The stabilizer criterion is only valid
/// over ℚ, which is the only field used here.
pub fn homogeneity_report(m: &KroneckerRep, subspaces: &[SubspaceMap]) -> Result<CertificateReport> {
    let r = m.r();
    let mut report = CertificateReport::default();
    let stab = stabilizer_dim(m)?;
    report.stabilizer_dim = Some(stab);
    let full = r * r + 1;
    let brick = end_analysis(m)?.is_brick;
    if brick {
        let status = if stab == full { Status::Certified } else { Status::Refuted };
        let mut v = Verdict::new("homogeneous", status.clone(), "Prop2.2.3");
        if status == Status::Refuted {
            v = v.with_witness(Witness::Value { description: format!("stabilizer dimension {stab} < r²+1 = {full}") });
        }
        report.verdicts.push(v);
    } else {
        report.notes.push(format!("not a brick: stabilizer dimension {stab} is information only"));
    }
    let mut probes = subspaces.to_vec();
    probes.extend(probe_points(r));
    if let Some(w) = rank_variation(m, &probes)? {
        report.verdicts.push(Verdict::new("homogeneous", Status::Refuted, "rank-variation").with_witness(w));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerInvariants {
    /// Δ_M = dim M_2 − dim M_1.
    pub rank: i64,
    /// dim M_1.
    pub c1: usize,
    /// rep_proj(K_r, 1) membership.
    pub in_rep_proj_1: Verdict,
}

/// Rank and first Chern class of the associated Steiner bundle, with rep_proj(K_r, 1)
/// membership certified by the dimension criterion or sampled at points.
pub fn steiner_invariants(m: &KroneckerRep, subspaces: &[SubspaceMap]) -> Result<SteinerInvariants> {
    let dim = m.dim();
    let claim = "m ∈ rep_proj(K_r,1)";
    let in_rep_proj_1 = if proj_certificate_inequality(m, 1) && end_analysis(m)?.geometric_indec == Indec::Yes {
        Verdict::new(claim, Status::Certified, "Prop2.3.3")
    } else {
        let mut points = probe_points(m.r());
        for v in subspaces {
            for j in 0..v.d() {
                points.push(SubspaceMap::new(&v.cols().select_columns(&[j]))?);
            }
        }
        let mut failed = None;
        for p in &points {
            let (rank, injective) = m.rank_at_subspace(p)?;
            if !injective {
                failed =
                    Some(Witness::Subspace { subspace: p.to_literal(), value: format!("rank {rank} < {}", dim.x) });
                break;
            }
        }
        match failed {
            Some(w) => Verdict::new(claim, Status::Refuted, "rank-at-point").with_witness(w),
            None => Verdict::new(claim, Status::SampledEvidence { n_samples: points.len() }, "rank-at-point"),
        }
    };
    Ok(SteinerInvariants { rank: dim.y as i64 - dim.x as i64, c1: dim.x, in_rep_proj_1 })
}

/// Almost-uniform classification: the rank variety meets the candidates exactly in a
/// finite non-empty set and misses every other probe.
pub fn almost_uniform_verdict(m: &KroneckerRep, candidates: &[SubspaceMap], probes: &[SubspaceMap]) -> Result<Verdict> {
    let mut jumping = Vec::new();
    for v in candidates {
        if jumping_test(m, v)?.in_rank_variety {
            jumping.push(v.to_literal());
        }
    }
    for v in probes {
        if jumping_test(m, v)?.in_rank_variety && !candidates.contains(v) {
            return Ok(Verdict::new("almost uniform", Status::Refuted, "Cor4.4.3").with_witness(Witness::Subspace {
                subspace: v.to_literal(),
                value: "unexpected jumping line".into(),
            }));
        }
    }
    if jumping.is_empty() {
        return Ok(Verdict::new("almost uniform", Status::Refuted, "Cor4.4.3")
            .with_witness(Witness::Value { description: "no jumping line among the candidates".into() }));
    }
    Ok(Verdict::new(
        "almost uniform",
        Status::SampledEvidence { n_samples: candidates.len() + probes.len() },
        "Cor4.4.3",
    )
    .with_witness(Witness::Value { description: format!("jumping lines: {}", jumping.join(" | ")) }))
}

/// Random probe planes avoiding a given set.
pub fn probes_avoiding<R: Rng + ?Sized>(r: usize, n: usize, avoid: &[SubspaceMap], rng: &mut R) -> Vec<SubspaceMap> {
    let mut out: Vec<SubspaceMap> = Vec::new();
    while out.len() < n {
        let v = SubspaceMap::random(2, r, DEFAULT_LINE_BOUND, rng);
        if !avoid.contains(&v) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Outcome of one adjunction check for a pair (X over K_d, M over K_r).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionTrial {
    pub x_dim: DimVector,
    pub m_dim: DimVector,
    /// dim Hom(σ⁻¹ inf X, M).
    pub left_dim: usize,
    /// dim Hom(X, σ res M).
    pub right_dim: usize,
    /// backward∘forward is the identity on a basis and forward∘backward on its image.
    pub round_trip: bool,
    /// τ(v∘f) = σ(res v)∘τ(f) for a random isomorphism v: M → M'.
    pub naturality: bool,
}

impl AdjunctionTrial {
    pub fn passed(&self) -> bool {
        self.left_dim == self.right_dim && self.round_trip && self.naturality
    }
}

fn random_invertible<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> Matrix {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-bound..=bound)));
        if n == 0 || !g.det().is_zero() {
            return g;
        }
    }
}

/// Checks the adjunction between σ⁻¹∘inf and σ∘res at (X, M): dimensions, round trip of
/// the transport on a full basis, and naturality in M.
pub fn adjunction_trial<R: Rng + ?Sized>(x: &KroneckerRep, m: &KroneckerRep, rng: &mut R) -> Result<AdjunctionTrial> {
    let adj = Adjunction::new(x, m)?;
    let left = hom_basis(&adj.left.rep, m)?;
    let right = hom_basis(x, &adj.right.rep)?;
    let mut round_trip = true;
    let mut images = Vec::with_capacity(left.basis.len());
    for f in &left.basis {
        let g = adj.forward(f)?;
        g.check()?;
        round_trip &= adj.backward(&g)? == *f;
        images.push(g);
    }
    // forward is injective on the basis iff the images stay independent.
    if !images.is_empty() {
        let cols: Vec<Matrix> =
            images.iter().map(|g| Matrix::vconcat(&[&vec_matrix(&g.f1), &vec_matrix(&g.f2)])).collect::<Result<_>>()?;
        let refs: Vec<&Matrix> = cols.iter().collect();
        round_trip &= Matrix::hconcat(&refs)?.rank() == images.len();
    }
    for g in &right.basis {
        round_trip &= adj.forward(&adj.backward(g)?)? == *g;
    }

    let md = m.dim();
    let g1 = random_invertible(md.x, 3, rng);
    let g2 = random_invertible(md.y, 3, rng);
    let g1_inv = g1.inverse().ok_or(Error::Singular)?;
    let maps = m.maps().iter().map(|a| g2.checked_mul(a)?.checked_mul(&g1_inv)).collect::<Result<Vec<_>>>()?;
    let m2 = KroneckerRep::new(m.r(), md, maps)?;
    let v = MorphismPair::new(m.clone(), m2.clone(), g1, g2)?;
    let adj2 = Adjunction::new(x, &m2)?;
    let coeffs: Vec<Scalar> = (0..left.dim).map(|_| int(rng.gen_range(-3..=3))).collect();
    let f = combine(&left, &coeffs);
    let lhs = adj2.forward(&f.then(&v)?)?;
    let d = x.r();
    let res_v = MorphismPair::new(
        m.restrict(&SubspaceMap::standard(d, m.r()))?,
        m2.restrict(&SubspaceMap::standard(d, m.r()))?,
        v.f1.clone(),
        v.f2.clone(),
    )?;
    let sigma_v = shift_on_morphism(&res_v, Direction::Plus, &adj.right, &adj2.right)?;
    let rhs = adj.forward(&f)?.then(&sigma_v)?;
    Ok(AdjunctionTrial {
        x_dim: x.dim(),
        m_dim: md,
        left_dim: left.dim,
        right_dim: right.dim,
        round_trip,
        naturality: lhs.f1 == rhs.f1 && lhs.f2 == rhs.f2,
    })
}

fn vec_matrix(a: &Matrix) -> Matrix {
    Matrix::column_vector(a.entries().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{i1, p0, p1};
    use std::collections::BTreeMap;

    fn st(pairs: &[(usize, usize)]) -> SplittingType {
        SplittingType { b: pairs.iter().copied().collect::<BTreeMap<_, _>>(), remainder: None }
    }

    #[test]
    fn splitting_examples() {
        let lines = line_sampler(3, 5, 1, Strategy::Mixed, 10).unwrap();
        for v in &lines {
            assert_eq!(splitting_at_line(&p1(3), v).unwrap(), st(&[(0, 1), (1, 1)]));
        }
        let v = SubspaceMap::coordinate(3, &[0, 1]).unwrap();
        let e = p_test(1, &v, Sign::Minus).unwrap().rep;
        assert_eq!(splitting_at_line(&e, &v).unwrap(), st(&[(0, 2), (2, 1)]));
        let sum = e.direct_sum(&p1(3)).unwrap();
        assert_eq!(splitting_at_line(&sum, &v).unwrap(), st(&[(0, 3), (1, 1), (2, 1)]));
        assert!(splitting_at_line(&p1(3), &SubspaceMap::coordinate(3, &[0]).unwrap()).is_err());
    }

    #[test]
    fn sampler_examples() {
        assert_eq!(line_sampler(3, 0, 0, Strategy::Coordinate, 10).unwrap().len(), 3);
        let a = line_sampler(4, 20, 5, Strategy::Random, 10).unwrap();
        assert_eq!(a, line_sampler(4, 20, 5, Strategy::Random, 10).unwrap());
        let set: BTreeSet<String> = a.iter().map(SubspaceMap::to_literal).collect();
        assert_eq!(set.len(), 20);
        assert_eq!(line_sampler(4, 20, 5, Strategy::Mixed, 10).unwrap().len(), 26);
        assert!(line_sampler(1, 3, 0, Strategy::Random, 10).is_err());
    }

    #[test]
    fn generic_decomposition_examples() {
        let v = SubspaceMap::coordinate(3, &[0, 1]).unwrap();
        let e = p_test(1, &v, Sign::Minus).unwrap().rep;
        let lines = line_sampler(3, 6, 3, Strategy::Mixed, 10).unwrap();
        let g = generic_decomposition(&e, &lines).unwrap();
        assert_eq!(g.gen, st(&[(0, 1), (1, 2)]));
        assert_eq!(g.dissenters, vec![(v, st(&[(0, 2), (2, 1)]))]);
        let g = generic_decomposition(&p0(3).power(3), &lines).unwrap();
        assert_eq!(g.gen, st(&[(0, 3)]));
        assert!(g.dissenters.is_empty());
    }

    #[test]
    fn jumping_examples() {
        let lines = line_sampler(3, 5, 2, Strategy::Mixed, 10).unwrap();
        for v in &lines {
            assert!(!jumping_test(&p1(3), v).unwrap().in_rank_variety);
        }
        let v = SubspaceMap::coordinate(3, &[0, 1]).unwrap();
        let e = p_test(1, &v, Sign::Minus).unwrap().rep;
        let j = jumping_test(&e, &v).unwrap();
        assert!(j.in_rank_variety && j.hom_witness_dim >= 1);
        let u = SubspaceMap::coordinate(3, &[1, 2]).unwrap();
        assert!(!jumping_test(&e, &u).unwrap().in_rank_variety);
        let inf = p1(2).inflate(3).unwrap();
        assert!(jumping_test(&inf, &u).unwrap().in_rank_variety);
    }

    #[test]
    fn two_term_examples() {
        let v = SubspaceMap::coordinate(3, &[0, 1]).unwrap();
        let c = two_term_support_check(&p1(3), 0, &v).unwrap();
        assert!(c.holds);
        assert_eq!(c.predicted, (1, 1));
        let e = p_test(1, &v, Sign::Minus).unwrap().rep;
        assert!(!two_term_support_check(&e, 0, &v).unwrap().holds);
        let m = KroneckerRep::zero_maps(3, DimVector::new(10, 18));
        assert_eq!(two_term_support_check(&m, 1, &v).unwrap().predicted, (6, 2));
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer_dim(&p1(3)).unwrap(), 10);
        assert_eq!(stabilizer_dim(&p0(3)).unwrap(), 10);
        assert_eq!(stabilizer_dim(&i1(3)).unwrap(), 10);
        for m in [p1(2), p1(3), i1(2), p1(3).direct_sum(&p0(3)).unwrap()] {
            assert_eq!(stabilizer_dim(&m).unwrap(), stabilizer_system(&m.integerized()).nullity());
        }
    }

    #[test]
    fn homogeneity_examples() {
        let h = homogeneity_report(&p1(3), &coordinate_planes(3)).unwrap();
        assert_eq!(h.stabilizer_dim, Some(10));
        assert_eq!(h.verdict("homogeneous").unwrap().status, Status::Certified);
        assert!(!h.any_refuted());
    }

    #[test]
    fn uniformity_examples() {
        let lines = line_sampler(3, 4, 0, Strategy::Mixed, 10).unwrap();
        let u = uniformity_report(&p0(3).power(2), &lines).unwrap();
        assert_eq!(u.support, vec![0]);
        assert_eq!(u.k_type, Some(0));
        assert!(matches!(u.verdict("uniform").unwrap().status, Status::SampledEvidence { .. }));
        let u = uniformity_report(&p1(3), &lines).unwrap();
        assert_eq!(u.verdict("uniform").unwrap().rule, "Prop1.5.5");
        assert_eq!(u.support, vec![0, 1]);
    }

    #[test]
    fn steiner_examples() {
        let s = steiner_invariants(&p1(4), &[]).unwrap();
        assert_eq!((s.rank, s.c1), (3, 1));
        assert_eq!(s.in_rep_proj_1.status, Status::Certified);
        let v = SubspaceMap::coordinate(3, &[0, 1]).unwrap();
        let e = p_test(1, &v, Sign::Minus).unwrap().rep;
        let s = steiner_invariants(&e, &[v]).unwrap();
        assert_eq!((s.rank, s.c1), (3, 2));
        let s = steiner_invariants(&p0(3), &[]).unwrap();
        assert_eq!((s.rank, s.c1), (1, 0));
    }

    #[test]
    fn adjunction_trials_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5 {
            let x = KroneckerRep::random(2, DimVector::new(rng.gen_range(0..=2), rng.gen_range(0..=3)), 2, &mut rng);
            let m = KroneckerRep::random(3, DimVector::new(rng.gen_range(0..=2), rng.gen_range(0..=3)), 2, &mut rng);
            let t = adjunction_trial(&x, &m, &mut rng).unwrap();
            assert!(t.passed(), "{t:?}");
        }
        let m = crate::functors::shift_minus(&p1(2).inflate(3).unwrap()).rep;
        let t = adjunction_trial(&p1(2), &m, &mut rng).unwrap();
        assert!(t.passed() && t.left_dim > 0, "{t:?}");
    }
}
