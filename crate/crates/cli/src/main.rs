use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use kronrep::analysis::{
    adjunction_trial, generic_decomposition, jumping_test, line_sampler, splitting_at_line, stabilizer_dim,
    steiner_invariants, Strategy, DEFAULT_LINE_BOUND,
};
use kronrep::constructions::{
    chen_brick, default_lines, full_report, prescribed_jumping, subrep_bruteforce, support_union_extension,
    uniform_candidate_sampler, ConstructionResult, FpRep, SamplerParams,
};
use kronrep::homalg::end_analysis;
use kronrep::rep::io::{RepFile, SubspaceFile};
use kronrep::rep::{euler_form, tits_form, DimVector, KroneckerRep, SubspaceMap};

#[derive(Parser, Debug)]
#[command(name = "kronrep", version, about = "Representations of generalized Kronecker quivers")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension data, endomorphism algebra and stabilizer dimension.
    Inspect(RepArg),
    /// Restriction to a subspace of the arrow space.
    Restrict(RepLine),
    /// Splitting type of the restriction to a plane.
    Split(RepLine),
    /// Generic splitting type over sampled planes.
    Decompose(RepSample),
    /// Whether a plane lies in the rank variety.
    Jump(RepLine),
    /// Uniformity, homogeneity and Steiner certificates.
    Certify(RepSample),
    /// Explicit constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// Checks the adjunction between σ⁻¹∘inf and σ∘res on random pairs.
    AdjointCheck(AdjointArgs),
    /// Brute-force subrepresentation search over F_p.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
struct RepArg {
    #[arg(long)]
    rep: PathBuf,
}

#[derive(Args, Debug)]
struct RepLine {
    #[arg(long)]
    rep: PathBuf,
    /// Subspace literal: columns separated by ';', entries by ','.
    #[arg(long)]
    line: String,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Number of sampled planes.
    #[arg(long, default_value_t = 20)]
    lines: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "mixed")]
    strategy: Strategy,
    /// Entry bound for random planes.
    #[arg(long, default_value_t = DEFAULT_LINE_BOUND)]
    bound: i64,
}

#[derive(Args, Debug)]
struct RepSample {
    #[arg(long)]
    rep: PathBuf,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Chen bricks for r = 3.
    Chen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Random non-homogeneous bricks with two-term splitting.
    Sampler(SamplerArgs),
    /// Bricks whose rank variety is a prescribed finite set of planes.
    Ex {
        #[arg(long)]
        r: usize,
        /// JSON list of planes, as literals or subspace objects.
        #[arg(long)]
        planes: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extension of a sampler output with support {0, 1, n, n+1}.
    SupportUnion {
        #[command(flatten)]
        sampler: SamplerArgs,
        /// Draws of the second term.
        #[arg(long, default_value_t = 16)]
        extension_budget: usize,
    },
}

#[derive(Args, Debug)]
struct SamplerArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    c: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random planes checked in addition to the coordinate planes.
    #[arg(long, default_value_t = 20)]
    lines: usize,
    /// Entry bound B for random matrices.
    #[arg(long, default_value_t = 5)]
    bound: i64,
    /// Maximal number of draws.
    #[arg(long, default_value_t = 32)]
    budget: usize,
}

#[derive(Args, Debug)]
struct AdjointArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    trials: usize,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Integral representation, reduced modulo p.
    #[arg(long)]
    rep: PathBuf,
    #[arg(long, default_value_t = 2)]
    p: u8,
    /// Target dimension vector "x,y".
    #[arg(long)]
    e: String,
}

/// Command output plus whether a certificate came out refuted.
struct Outcome {
    seed: Option<u64>,
    result: Value,
    refuted: bool,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome { seed: None, result, refuted: false }
    }
}

/// Parsed input files, echoed into the report.
type Inputs = serde_json::Map<String, Value>;

fn read_rep(path: &PathBuf, inputs: &mut Inputs) -> anyhow::Result<KroneckerRep> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: RepFile =
        serde_json::from_str(&text).with_context(|| format!("{}: malformed representation file", path.display()))?;
    let rep = KroneckerRep::try_from(&file).with_context(|| format!("{}: invalid representation", path.display()))?;
    inputs.insert(path.display().to_string(), serde_json::to_value(&file)?);
    Ok(rep)
}

fn parse_line(s: &str, r: usize) -> anyhow::Result<SubspaceMap> {
    SubspaceMap::from_literal(s, r).with_context(|| format!("invalid subspace literal {s:?}"))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PlaneEntry {
    Literal(String),
    File(SubspaceFile),
}

fn read_planes(path: &PathBuf, r: usize, inputs: &mut Inputs) -> anyhow::Result<Vec<SubspaceMap>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let entries: Vec<PlaneEntry> =
        serde_json::from_str(&text).with_context(|| format!("{}: expected a JSON list of planes", path.display()))?;
    let planes = entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            match e {
                PlaneEntry::Literal(s) => parse_line(s, r),
                PlaneEntry::File(f) => f.to_subspace(r).map_err(anyhow::Error::from),
            }
            .with_context(|| format!("{}: plane {i}", path.display()))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let literals: Vec<String> = planes.iter().map(SubspaceMap::to_literal).collect();
    inputs.insert(path.display().to_string(), json!(literals));
    Ok(planes)
}

fn parse_dim(s: &str) -> anyhow::Result<DimVector> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        bail!("dimension vector must look like \"x,y\", got {s:?}");
    }
    Ok(DimVector::new(parts[0].parse().context("dimension vector x")?, parts[1].parse().context("dimension vector y")?))
}

fn sampled_lines(r: usize, s: &Sampling) -> anyhow::Result<Vec<SubspaceMap>> {
    Ok(line_sampler(r, s.lines, s.seed, s.strategy, s.bound)?)
}

fn construction(c: ConstructionResult, seed: Option<u64>) -> anyhow::Result<Outcome> {
    let refuted = !c.all_intended_verified();
    Ok(Outcome { seed, result: serde_json::to_value(&c)?, refuted })
}

fn sampler_params(a: &SamplerArgs) -> SamplerParams {
    SamplerParams { bound: a.bound, budget: a.budget, ..SamplerParams::new(a.r, a.n, a.s, a.c) }
}

fn run(command: &Command, inputs: &mut Inputs) -> anyhow::Result<Outcome> {
    match command {
        Command::Inspect(a) => {
            let m = read_rep(&a.rep, inputs)?;
            let end = end_analysis(&m)?;
            let dim = m.dim();
            Ok(Outcome::ok(json!({
                "r": m.r(),
                "dim": dim,
                "tits_form": tits_form(dim, m.r()),
                "delta_2": dim.delta(2),
                "psi_rank": m.psi().rank(),
                "end_dim": end.end_dim,
                "rad_dim": end.rad_dim,
                "is_brick": end.is_brick,
                "geometric_indec": end.geometric_indec,
                "stabilizer_dim": stabilizer_dim(&m)?,
                "homogeneous_bound": m.r() * m.r() + 1,
            })))
        }
        Command::Restrict(a) => {
            let m = read_rep(&a.rep, inputs)?;
            let v = parse_line(&a.line, m.r())?;
            Ok(Outcome::ok(json!({
                "line": v.to_literal(),
                "rep": RepFile::from(&m.restrict(&v)?),
            })))
        }
        Command::Split(a) => {
            let m = read_rep(&a.rep, inputs)?;
            let v = parse_line(&a.line, m.r())?;
            Ok(Outcome::ok(json!({
                "line": v.to_literal(),
                "splitting": splitting_at_line(&m, &v)?,
            })))
        }
        Command::Decompose(a) => {
            let m = read_rep(&a.rep, inputs)?;
            let lines = sampled_lines(m.r(), &a.sampling)?;
            let g = generic_decomposition(&m, &lines)?;
            let dissenters: Vec<Value> =
                g.dissenters.iter().map(|(v, st)| json!({ "line": v.to_literal(), "splitting": st })).collect();
            Ok(Outcome {
                seed: Some(a.sampling.seed),
                result: json!({ "lines": lines.len(), "generic": g.gen, "dissenters": dissenters }),
                refuted: false,
            })
        }
        Command::Jump(a) => {
            let m = read_rep(&a.rep, inputs)?;
            let v = parse_line(&a.line, m.r())?;
            Ok(Outcome::ok(json!({
                "line": v.to_literal(),
                "jumping": jumping_test(&m, &v)?,
            })))
        }
        Command::Certify(a) => {
            let m = read_rep(&a.rep, inputs)?;
            let lines = sampled_lines(m.r(), &a.sampling)?;
            let report = full_report(&m, &lines)?;
            let steiner = steiner_invariants(&m, &lines)?;
            Ok(Outcome {
                seed: Some(a.sampling.seed),
                refuted: report.any_refuted(),
                result: json!({ "report": report, "steiner": steiner }),
            })
        }
        Command::Construct(c) => match c {
            Construct::Chen { m, n } => construction(chen_brick(*m, *n)?, None),
            Construct::Sampler(a) => {
                let lines = default_lines(a.r, a.lines, a.seed);
                construction(uniform_candidate_sampler(sampler_params(a), a.seed, &lines)?, Some(a.seed))
            }
            Construct::Ex { r, planes, seed } => {
                let planes = read_planes(planes, *r, inputs)?;
                construction(prescribed_jumping(*r, &planes, *seed)?, Some(*seed))
            }
            Construct::SupportUnion { sampler, extension_budget } => {
                let lines = default_lines(sampler.r, sampler.lines, sampler.seed);
                let base = uniform_candidate_sampler(sampler_params(sampler), sampler.seed, &lines)?;
                let res = support_union_extension(&base, sampler.n, sampler.seed, &lines, *extension_budget)?;
                construction(res, Some(sampler.seed))
            }
        },
        Command::AdjointCheck(a) => {
            if a.d == 0 || a.d > a.r {
                bail!("need 1 <= d <= r, got d = {}, r = {}", a.d, a.r);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let mut trials = Vec::with_capacity(a.trials);
            for _ in 0..a.trials {
                let xd = DimVector::new(rng.gen_range(0..=3), rng.gen_range(0..=5));
                let md = DimVector::new(rng.gen_range(0..=3), rng.gen_range(0..=5));
                let x = KroneckerRep::random(a.d, xd, 2, &mut rng);
                let m = KroneckerRep::random(a.r, md, 2, &mut rng);
                trials.push(adjunction_trial(&x, &m, &mut rng)?);
            }
            let passed = trials.iter().filter(|t| t.passed()).count();
            Ok(Outcome {
                seed: Some(a.seed),
                refuted: passed != trials.len(),
                result: json!({ "trials": trials.len(), "passed": passed, "details": trials }),
            })
        }
        Command::Oracle(a) => {
            let m = read_rep(&a.rep, inputs)?;
            let e = parse_dim(&a.e)?;
            let fp = FpRep::from_rep(&m, a.p)?;
            let search = subrep_bruteforce(&fp, e)?;
            let d = m.dim();
            let complement = DimVector::new(d.x.saturating_sub(e.x), d.y.saturating_sub(e.y));
            Ok(Outcome::ok(json!({
                "p": a.p,
                "e": e,
                "euler_e_complement": euler_form(e, complement, m.r()),
                "search": search,
            })))
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut inputs = Inputs::new();
    let outcome = match run(&cli.command, &mut inputs) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let report = json!({
        "invocation": { "args": &argv[1..], "seed": outcome.seed, "inputs": inputs },
        "result": outcome.result,
    });
    let text = serde_json::to_string_pretty(&report).expect("JSON values serialize") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if outcome.refuted {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
