//! `khd` — construct k-Hadamard operators, certify them, and run the
//! uncertainty-inequality checkers from the `khadamard` library.
//!
//! Exit codes: 0 = everything passed, 1 = an inequality check reported a
//! violation, 2 = bad input or configuration.

use clap::{Parser, Subcommand, ValueEnum};
use khadamard::construct::{
    certify_k_hadamard, fourier_matrix, hadamard_code_matrix, paley_hadamard, pg2_incidence,
    scaled_random_orthogonal, sylvester_hadamard, FiniteAbelianGroup, KHadamardCertificate,
};
use khadamard::continuous::{
    family_fab, family_gc, heisenberg_q_check, moment_up_check, moment_up_corollary_check,
    norm_up_grid_check, support_measure_check, variance_ratio_bound_check,
    SUPPORT_MEASURE_THRESHOLD,
};
use khadamard::finite::{
    approx_support_l1_check, approx_support_l2_check, extremal_search, hausdorff_young_check,
    norm_up_check, norm_up_midrange_check, p_geq_2_counterexample, primary_up_check,
    supp1_vs_supp2_check, support_up_check, SearchObjective,
};
use khadamard::grid::{ft_grid, lct_apply, GridFunction, LctParams};
use khadamard::group::{self, FiniteGroup, Irrep, IrrepCatalog};
use khadamard::nonabelian::{kuperberg_check, meshulam_check, n2_hadamard_check};
use khadamard::numerics::{cvector, CMatrix};
use khadamard::{CVector, Error, InequalityReport, NormIndex};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "khd", version, about = "k-Hadamard operators and uncertainty checks")]
struct Cli {
    /// Relative tolerance applied to inequality ratios.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for anything randomized; recorded in every output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one of the named operator constructions and print the matrix.
    Construct {
        /// fourier | sylvester | paley | code | pg2 | random-orthogonal
        name: String,
        #[command(flatten)]
        op: OpArgs,
    },
    /// Certify the k-Hadamard property of an operator.
    Certify {
        #[command(flatten)]
        op: OpArgs,
    },
    /// Run one named inequality check.
    Check {
        name: String,
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run a named check over a parameter grid, one row per grid point.
    Sweep {
        name: String,
        #[command(flatten)]
        op: OpArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Search for vectors that make an uncertainty inequality tight.
    Search {
        #[command(flatten)]
        op: OpArgs,
        /// support | l1-ratio | approx:EPS,ETA
        #[arg(long, default_value = "support")]
        objective: String,
        #[arg(long, default_value_t = 2000)]
        budget: usize,
    },
    /// Run a standard battery of certifications and checks.
    Report,
}

/// How to obtain the operator (finite checks) or its parameters.
#[derive(clap::Args)]
struct OpArgs {
    /// Named construction when the subcommand itself doesn't take one.
    #[arg(long)]
    construct: Option<String>,
    /// Abelian group as comma-separated cyclic factors, e.g. 2,2,3.
    #[arg(long)]
    group: Option<String>,
    /// Size parameter n (cyclic group order, matrix size, code length).
    #[arg(long)]
    n: Option<usize>,
    /// Tensor power for the Sylvester construction.
    #[arg(long)]
    m: Option<u32>,
    /// Prime parameter for the Paley and projective-plane constructions.
    #[arg(long)]
    prime: Option<u64>,
    /// Load the operator from a JSON file {"rows","cols","data":[[re,im],..]}.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Built-in non-abelian group name: z<n>, z<a>x<b>, d<n>, q8, s3.
    #[arg(long)]
    group_name: Option<String>,
    /// Load a group from JSON {"order","cayley","labels"?,"irreps"?}.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ParamArgs {
    /// Vector spec: delta:I | ones | indicator:I,J,.. | subgroup:G | random[:SEED] | file:PATH
    #[arg(long)]
    vector: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    s: Option<f64>,
    /// Continuous family: fab (with --a, --b) or gc (with --c).
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<String>,
    /// Load a sampled function from JSON {"x0","dx","samples":[[re,im],..]}.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Linear canonical transform parameters a,b,c,d (det = 1, b ≠ 0).
    #[arg(long)]
    lct: Option<String>,
    /// Half-width of the sampling interval for synthesized functions.
    #[arg(long, default_value_t = 8.0)]
    domain_halfwidth: f64,
    #[arg(long, default_value_t = 4096)]
    samples: usize,
    /// Threshold for essential-support measures, relative to the sup norm.
    #[arg(long)]
    threshold: Option<f64>,
    /// Trial count for randomized checks and sweeps.
    #[arg(long)]
    count: Option<usize>,
    /// Comma-separated list of sizes for sweeps, e.g. 4,16,64.
    #[arg(long)]
    n_list: Option<String>,
}

#[derive(Serialize)]
struct Output {
    command: String,
    seed: u64,
    tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<KHadamardCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vector: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    reports: Vec<InequalityReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    rows: Vec<SweepRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct SweepRow {
    params: Vec<(String, f64)>,
    lhs: f64,
    rhs: f64,
    ratio: f64,
    pass: bool,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct GroupFile {
    order: usize,
    cayley: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    irreps: Option<Vec<IrrepFile>>,
}

#[derive(Deserialize)]
struct IrrepFile {
    dim: usize,
    /// One entry per group element, row-major dim×dim complex matrices.
    matrices: Vec<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
struct GridFile {
    x0: f64,
    dx: f64,
    samples: Vec<[f64; 2]>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let violated = !output.reports.iter().all(|r| r.pass)
                || !output.rows.iter().all(|r| r.pass);
            if let Err(e) = emit(&cli, &output) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, String> {
    let mut out = Output {
        command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
        seed: cli.seed,
        tol: cli.tol,
        certificate: None,
        matrix: None,
        vector: None,
        reports: Vec::new(),
        rows: Vec::new(),
        warnings: Vec::new(),
    };
    match &cli.cmd {
        Cmd::Construct { name, op } => {
            let a = build_named(name, op, cli.seed)?;
            out.matrix = Some(matrix_to_file(&a));
        }
        Cmd::Certify { op } => {
            let a = load_operator(op, cli.seed)?;
            out.certificate = Some(certify_k_hadamard(&a, cli.tol).map_err(estr)?);
        }
        Cmd::Check { name, op, params } => {
            run_check(name, op, params, cli, &mut out)?;
        }
        Cmd::Sweep { name, op, params } => {
            run_sweep(name, op, params, cli, &mut out)?;
        }
        Cmd::Search { op, objective, budget } => {
            let a = load_operator(op, cli.seed)?;
            let cert = certify_k_hadamard(&a, cli.tol).map_err(estr)?;
            let obj = parse_objective(objective)?;
            let group = abelian_group(op)?;
            let (v, report) =
                extremal_search(&a, &cert, obj, *budget, group.as_ref(), cli.seed).map_err(estr)?;
            out.vector = Some(v.iter().map(|z| [z.re, z.im]).collect());
            out.certificate = Some(cert);
            out.reports.push(report);
        }
        Cmd::Report => run_battery(cli, &mut out)?,
    }
    Ok(out)
}

fn estr(e: Error) -> String {
    e.to_string()
}

// ---------------------------------------------------------------- operators

fn build_named(name: &str, op: &OpArgs, seed: u64) -> Result<CMatrix, String> {
    match name {
        "fourier" => Ok(fourier_matrix(&require_abelian(op)?)),
        "sylvester" => {
            let m = op.m.ok_or("sylvester needs --m")?;
            sylvester_hadamard(m).map_err(estr)
        }
        "paley" => {
            let q = op.prime.ok_or("paley needs --prime")?;
            paley_hadamard(q).map_err(estr)
        }
        "code" => {
            let n = op.n.ok_or("code needs --n")? as u32;
            hadamard_code_matrix(n).map_err(estr)
        }
        "pg2" => {
            let q = op.prime.ok_or("pg2 needs --prime")?;
            pg2_incidence(q).map_err(estr)
        }
        "random-orthogonal" => {
            let n = op.n.ok_or("random-orthogonal needs --n")?;
            scaled_random_orthogonal(n, seed).map_err(estr)
        }
        other => Err(format!(
            "unknown construction '{other}'; valid: fourier, sylvester, paley, code, pg2, random-orthogonal"
        )),
    }
}

fn require_abelian(op: &OpArgs) -> Result<FiniteAbelianGroup, String> {
    abelian_group(op)?.ok_or_else(|| "an abelian group is required; pass --group or --n".into())
}

fn abelian_group(op: &OpArgs) -> Result<Option<FiniteAbelianGroup>, String> {
    if let Some(spec) = &op.group {
        let factors: Vec<usize> = spec
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad group factor '{t}': {e}")))
            .collect::<Result<_, _>>()?;
        return Ok(Some(FiniteAbelianGroup::new(factors).map_err(estr)?));
    }
    if let Some(n) = op.n {
        return Ok(Some(FiniteAbelianGroup::cyclic(n).map_err(estr)?));
    }
    Ok(None)
}

fn load_operator(op: &OpArgs, seed: u64) -> Result<CMatrix, String> {
    if let Some(path) = &op.matrix {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mf: MatrixFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if mf.data.len() != mf.rows * mf.cols {
            return Err(format!(
                "matrix file has {} entries, expected rows*cols = {}",
                mf.data.len(),
                mf.rows * mf.cols
            ));
        }
        return Ok(CMatrix::from_fn(mf.rows, mf.cols, |i, j| {
            let [re, im] = mf.data[i * mf.cols + j];
            Complex64::new(re, im)
        }));
    }
    if let Some(name) = &op.construct {
        return build_named(name, op, seed);
    }
    if op.group.is_some() || op.n.is_some() {
        return Ok(fourier_matrix(&require_abelian(op)?));
    }
    Err("no operator given; pass --construct, --matrix, --group, or --n".into())
}

fn load_group(op: &OpArgs) -> Result<(FiniteGroup, Option<IrrepCatalog>), String> {
    if let Some(name) = &op.group_name {
        let (g, cat) = group::builtin(name).map_err(estr)?;
        return Ok((g, Some(cat)));
    }
    if let Some(path) = &op.group_file {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let gf: GroupFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if gf.cayley.len() != gf.order {
            return Err("cayley table size does not match the declared order".into());
        }
        let g = FiniteGroup::new(gf.cayley, gf.labels).map_err(estr)?;
        let cat = match gf.irreps {
            Some(reps) => {
                let reps = reps
                    .into_iter()
                    .map(|r| {
                        let matrices = r
                            .matrices
                            .iter()
                            .map(|flat| {
                                CMatrix::from_fn(r.dim, r.dim, |i, j| {
                                    let [re, im] = flat[i * r.dim + j];
                                    Complex64::new(re, im)
                                })
                            })
                            .collect();
                        Irrep { dim: r.dim, matrices }
                    })
                    .collect();
                let cat = IrrepCatalog { reps };
                cat.validate(&g).map_err(estr)?;
                Some(cat)
            }
            None => None,
        };
        return Ok((g, cat));
    }
    Err("a group is required; pass --group-name or --group-file".into())
}

// ------------------------------------------------------------------ vectors

fn parse_vector(
    spec: &str,
    n: usize,
    group: Option<&FiniteAbelianGroup>,
    default_seed: u64,
) -> Result<CVector, String> {
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    let one = Complex64::new(1.0, 0.0);
    match head {
        "delta" => {
            let i: usize = rest.ok_or("delta needs an index, e.g. delta:0")?
                .parse()
                .map_err(|e| format!("bad delta index: {e}"))?;
            if i >= n {
                return Err(format!("delta index {i} out of range for size {n}"));
            }
            let mut v = CVector::zeros(n);
            v[i] = one;
            Ok(v)
        }
        "ones" => Ok(CVector::from_element(n, one)),
        "indicator" => {
            let idx: Vec<usize> = rest
                .ok_or("indicator needs indices, e.g. indicator:0,3")?
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let mut v = CVector::zeros(n);
            for i in idx {
                if i >= n {
                    return Err(format!("indicator index {i} out of range for size {n}"));
                }
                v[i] = one;
            }
            Ok(v)
        }
        "subgroup" => {
            let g = group.ok_or("subgroup: vectors need an abelian group (--group or --n)")?;
            let gens: Vec<usize> = rest
                .ok_or("subgroup needs generators, e.g. subgroup:2")?
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            Ok(g.indicator(&g.subgroup_generated(&gens)))
        }
        "random" => {
            let seed = match rest {
                Some(r) => r.parse::<u64>().map_err(|e| format!("bad seed: {e}"))?,
                None => default_seed,
            };
            Ok(random_vector(&mut ChaCha8Rng::seed_from_u64(seed), n))
        }
        "file" => {
            let path = rest.ok_or("file needs a path, e.g. file:v.json")?;
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let entries: Vec<[f64; 2]> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            if entries.len() != n {
                return Err(format!("vector file has {} entries, expected {n}", entries.len()));
            }
            Ok(cvector(
                &entries.iter().map(|&[re, im]| (re, im)).collect::<Vec<_>>(),
            ))
        }
        other => Err(format!(
            "unknown vector spec '{other}'; valid: delta:I, ones, indicator:.., subgroup:.., random[:SEED], file:PATH"
        )),
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn parse_norm(spec: &Option<String>, default: f64) -> Result<NormIndex, String> {
    match spec.as_deref() {
        None => NormIndex::new(default).map_err(estr),
        Some("inf") | Some("infinity") | Some("oo") => Ok(NormIndex::Infinity),
        Some(t) => {
            let v: f64 = t.parse().map_err(|e| format!("bad norm index '{t}': {e}"))?;
            NormIndex::new(v).map_err(estr)
        }
    }
}

fn norm_value(p: NormIndex) -> f64 {
    match p {
        NormIndex::Finite(v) => v,
        NormIndex::Infinity => f64::INFINITY,
    }
}

fn parse_objective(spec: &str) -> Result<SearchObjective, String> {
    if spec == "support" {
        return Ok(SearchObjective::SupportProduct);
    }
    if spec == "l1-ratio" {
        return Ok(SearchObjective::L1RatioProduct);
    }
    if let Some(rest) = spec.strip_prefix("approx:") {
        let (e, h) = rest
            .split_once(',')
            .ok_or("approx objective needs approx:EPS,ETA")?;
        return Ok(SearchObjective::ApproxSupport {
            eps: e.trim().parse().map_err(|e| format!("bad eps: {e}"))?,
            eta: h.trim().parse().map_err(|e| format!("bad eta: {e}"))?,
        });
    }
    Err(format!("unknown objective '{spec}'; valid: support, l1-ratio, approx:EPS,ETA"))
}

// --------------------------------------------------------------- continuous

/// The function under test plus its transform side, normalized so the checks
/// receive (f, Af·√|b| in the LCT case) and the effective k.
fn load_function(params: &ParamArgs) -> Result<(GridFunction, GridFunction, f64, f64), String> {
    let f = if let Some(path) = &params.grid {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let gf: GridFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        GridFunction::new(
            gf.x0,
            gf.dx,
            gf.samples.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
        )
        .map_err(estr)?
    } else if let Some(fam) = &params.family {
        match fam.as_str() {
            "fab" => {
                let a = params.a.ok_or("family fab needs --a")?;
                let b = params
                    .b
                    .unwrap_or_else(|| (a * a - 1.0).max(0.0).sqrt());
                family_fab(a, b).map_err(estr)?.0
            }
            "gc" => {
                let c: f64 = params
                    .c
                    .as_deref()
                    .ok_or("family gc needs --c")?
                    .parse()
                    .map_err(|e| format!("bad --c: {e}"))?;
                family_gc(c).map_err(estr)?.0
            }
            other => return Err(format!("unknown family '{other}'; valid: fab, gc")),
        }
    } else {
        GridFunction::on_interval(params.samples, params.domain_halfwidth, |x| {
            Complex64::new((-PI * x * x).exp(), 0.0)
        })
        .map_err(estr)?
    };

    if let Some(spec) = &params.lct {
        let vals: Vec<f64> = spec
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad --lct entry '{t}': {e}")))
            .collect::<Result<_, _>>()?;
        if vals.len() != 4 {
            return Err("--lct needs four entries a,b,c,d".into());
        }
        let m = LctParams::new(vals[0], vals[1], vals[2], vals[3]).map_err(estr)?;
        let scale = m.b.abs();
        let af = lct_apply(m, &f)
            .map_err(estr)?
            .scale(Complex64::new(scale.sqrt(), 0.0));
        Ok((f, af, scale, scale))
    } else {
        let af = ft_grid(&f).map_err(estr)?;
        Ok((f, af, 1.0, 1.0))
    }
}

// ------------------------------------------------------------------- checks

const CHECK_NAMES: &str = "primary, support (alias donoho-stark), approx-l1, approx-l2, \
supp1-vs-supp2, norm, hausdorff-young, midrange, counterexample, meshulam, kuperberg, \
n2-hadamard, heisenberg-q, variance-ratio, moment, moment-corollary, norm-grid, \
support-measure, family-fab, family-gc";

fn run_check(
    name: &str,
    op: &OpArgs,
    params: &ParamArgs,
    cli: &Cli,
    out: &mut Output,
) -> Result<(), String> {
    let tol = cli.tol;
    match name {
        "primary" | "support" | "donoho-stark" | "approx-l1" | "approx-l2" | "norm"
        | "hausdorff-young" | "midrange" => {
            let a = load_operator(op, cli.seed)?;
            let cert = certify_k_hadamard(&a, tol).map_err(estr)?;
            let group = abelian_group(op)?;
            let spec = params.vector.as_deref().unwrap_or("random");
            let v = parse_vector(spec, a.ncols(), group.as_ref(), cli.seed)?;
            let report = match name {
                "primary" => primary_up_check(&a, &cert, &v, tol),
                "support" | "donoho-stark" => support_up_check(&a, &cert, &v, tol),
                "approx-l1" => approx_support_l1_check(
                    &a,
                    &cert,
                    &v,
                    params.eps.unwrap_or(0.0),
                    params.eta.unwrap_or(0.0),
                    tol,
                ),
                "approx-l2" => approx_support_l2_check(
                    &a,
                    &cert,
                    &v,
                    params.eps.unwrap_or(0.0),
                    params.eta.unwrap_or(0.0),
                    tol,
                ),
                "norm" => norm_up_check(&a, &cert, &v, parse_norm(&params.q, 2.0)?, tol),
                "hausdorff-young" => {
                    let p = norm_value(parse_norm(&params.p, 1.5)?);
                    hausdorff_young_check(&a, &cert, &v, p, tol)
                }
                "midrange" => {
                    let p = norm_value(parse_norm(&params.p, 1.5)?);
                    let q = norm_value(parse_norm(&params.q, p)?);
                    norm_up_midrange_check(&a, &cert, &v, p, q, tol)
                }
                _ => unreachable!(),
            }
            .map_err(estr)?;
            out.certificate = Some(cert);
            out.reports.push(report);
        }
        "supp1-vs-supp2" => {
            let n = op.n.unwrap_or(16);
            let group = abelian_group(op)?;
            let spec = params.vector.as_deref().unwrap_or("random");
            let v = parse_vector(spec, n, group.as_ref(), cli.seed)?;
            let eps = params.eps.unwrap_or(0.25);
            out.reports
                .push(supp1_vs_supp2_check(&v, eps, tol).map_err(estr)?);
        }
        "counterexample" => {
            let g = require_abelian(op)?;
            let p = parse_norm(&params.p, 2.0)?;
            let q = parse_norm(&params.q, f64::INFINITY)?;
            let (v, report) = p_geq_2_counterexample(&g, p, q).map_err(estr)?;
            out.vector = Some(v.iter().map(|z| [z.re, z.im]).collect());
            out.reports.push(report);
        }
        "meshulam" | "kuperberg" => {
            let (g, _) = load_group(op)?;
            let spec = params.vector.as_deref().unwrap_or("random");
            let v = parse_vector(spec, g.order(), None, cli.seed)?;
            let report = if name == "meshulam" {
                meshulam_check(&g, &v, tol)
            } else {
                kuperberg_check(&g, &v, tol)
            }
            .map_err(estr)?;
            out.reports.push(report);
        }
        "n2-hadamard" => {
            let (g, cat) = load_group(op)?;
            let cat = cat.ok_or("n2-hadamard needs irreducible representations for the group")?;
            let trials = params.count.unwrap_or(100);
            out.reports
                .push(n2_hadamard_check(&g, &cat, trials, cli.seed).map_err(estr)?);
        }
        "heisenberg-q" => {
            let (f, af, k, _) = load_function(params)?;
            let q = parse_norm(&params.q, 2.0)?;
            out.reports
                .push(heisenberg_q_check(&f, &af, k, q, tol).map_err(estr)?);
        }
        "variance-ratio" => {
            let (f, _, _, _) = load_function(params)?;
            let q = parse_norm(&params.q, 2.0)?;
            out.reports
                .push(variance_ratio_bound_check(&f, q, tol).map_err(estr)?);
        }
        "moment" => {
            let (f, af, k, _) = load_function(params)?;
            let r = params.r.unwrap_or(2.0);
            let s = params.s.unwrap_or(r);
            let q = parse_norm(&params.q, 2.0)?;
            out.reports
                .push(moment_up_check(&f, &af, k, r, s, q, tol).map_err(estr)?);
        }
        "moment-corollary" => {
            let (f, af, k, _) = load_function(params)?;
            let r = params.r.unwrap_or(2.0);
            let q = parse_norm(&params.q, 2.0)?;
            out.reports
                .push(moment_up_corollary_check(&f, &af, k, r, q, tol).map_err(estr)?);
        }
        "norm-grid" => {
            let (f, af, k, _) = load_function(params)?;
            let q = parse_norm(&params.q, 2.0)?;
            out.reports
                .push(norm_up_grid_check(&f, &af, k, q, tol).map_err(estr)?);
        }
        "support-measure" => {
            let (f, af, _, scale) = load_function(params)?;
            let threshold = params.threshold.unwrap_or(SUPPORT_MEASURE_THRESHOLD);
            out.reports
                .push(support_measure_check(&f, &af, scale, threshold, tol).map_err(estr)?);
        }
        "family-fab" => {
            let a = params.a.ok_or("family-fab needs --a")?;
            let b = params.b.unwrap_or_else(|| (a * a - 1.0).max(0.0).sqrt());
            out.reports.push(family_fab(a, b).map_err(estr)?.1);
        }
        "family-gc" => {
            let c: f64 = params
                .c
                .as_deref()
                .ok_or("family-gc needs --c")?
                .parse()
                .map_err(|e| format!("bad --c: {e}"))?;
            out.reports.push(family_gc(c).map_err(estr)?.1);
        }
        other => {
            return Err(format!("unknown check '{other}'; valid: {CHECK_NAMES}"));
        }
    }
    Ok(())
}

// ------------------------------------------------------------------- sweeps

/// Parse "start:stop:step" (inclusive) or a comma-separated list.
fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    if spec.contains(':') {
        let parts: Vec<f64> = spec
            .split(':')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad grid '{spec}': {e}")))
            .collect::<Result<_, _>>()?;
        if parts.len() != 3 || parts[2] <= 0.0 || parts[1] < parts[0] {
            return Err(format!("grid '{spec}' must be start:stop:step with step > 0"));
        }
        let (start, stop, step) = (parts[0], parts[1], parts[2]);
        let count = ((stop - start) / step).round() as usize;
        let mut grid: Vec<f64> = (0..=count)
            .map(|i| start + step * i as f64)
            .filter(|&v| v <= stop + 1e-12)
            .collect();
        if grid.is_empty() {
            grid.push(start);
        }
        Ok(grid)
    } else {
        spec.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad grid '{spec}': {e}")))
            .collect()
    }
}

fn push_row(out: &mut Output, params: Vec<(String, f64)>, r: &InequalityReport) {
    out.rows.push(SweepRow {
        params,
        lhs: r.lhs,
        rhs: r.rhs,
        ratio: r.ratio,
        pass: r.pass,
    });
}

fn run_sweep(
    name: &str,
    op: &OpArgs,
    params: &ParamArgs,
    cli: &Cli,
    out: &mut Output,
) -> Result<(), String> {
    let tol = cli.tol;
    match name {
        "counterexample" => {
            let sizes: Vec<usize> = match &params.n_list {
                Some(spec) => parse_grid(spec)?.iter().map(|&v| v as usize).collect(),
                None => (2..=10).map(|e| 1usize << e).collect(),
            };
            if sizes.is_empty() {
                return Err("empty size grid".into());
            }
            let p = parse_norm(&params.p, 2.0)?;
            let q = parse_norm(&params.q, f64::INFINITY)?;
            for n in sizes {
                let g = FiniteAbelianGroup::cyclic(n).map_err(estr)?;
                let (_, r) = p_geq_2_counterexample(&g, p, q).map_err(estr)?;
                push_row(out, vec![("n".into(), n as f64)], &r);
            }
        }
        "heisenberg-q" => {
            let grid = parse_grid(params.q.as_deref().ok_or("sweep heisenberg-q needs --q")?)?;
            let (f, af, k, _) = load_function(params)?;
            for qv in grid {
                let q = NormIndex::new(qv).map_err(estr)?;
                let r = heisenberg_q_check(&f, &af, k, q, tol).map_err(estr)?;
                push_row(out, vec![("q".into(), qv)], &r);
            }
        }
        "norm" => {
            let grid = parse_grid(params.q.as_deref().ok_or("sweep norm needs --q")?)?;
            let a = load_operator(op, cli.seed)?;
            let cert = certify_k_hadamard(&a, tol).map_err(estr)?;
            let group = abelian_group(op)?;
            let spec = params.vector.as_deref().unwrap_or("random");
            let v = parse_vector(spec, a.ncols(), group.as_ref(), cli.seed)?;
            for qv in grid {
                let q = NormIndex::new(qv).map_err(estr)?;
                let r = norm_up_check(&a, &cert, &v, q, tol).map_err(estr)?;
                push_row(out, vec![("q".into(), qv)], &r);
            }
        }
        "family-gc" => {
            let grid = parse_grid(params.c.as_deref().unwrap_or("1:20:1"))?;
            for c in grid {
                let (_, r) = family_gc(c).map_err(estr)?;
                push_row(out, vec![("c".into(), c)], &r);
            }
        }
        "family-fab" => {
            let grid = parse_grid(params.a.map(|a| a.to_string()).as_deref().unwrap_or("1.05:5:0.5"))?;
            for a in grid {
                let b = (a * a - 1.0).max(1e-6).sqrt();
                let (_, r) = family_fab(a, b).map_err(estr)?;
                push_row(out, vec![("a".into(), a), ("b".into(), b)], &r);
            }
        }
        "supp1-vs-supp2" => {
            let count = params.count.unwrap_or(10_000);
            if count == 0 {
                return Err("empty trial grid".into());
            }
            let n = op.n.unwrap_or(16);
            let eps = params.eps.unwrap_or(0.25);
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut failures = 0usize;
            let mut worst: Option<InequalityReport> = None;
            for trial in 0..count {
                let v = random_vector(&mut rng, n);
                let r = supp1_vs_supp2_check(&v, eps, tol).map_err(estr)?;
                if !r.pass {
                    failures += 1;
                }
                let tighter = worst.as_ref().map_or(true, |w| r.ratio < w.ratio);
                if tighter {
                    push_row(out, vec![("trial".into(), trial as f64)], &r);
                    worst = Some(r);
                }
            }
            if failures > 0 {
                out.warnings.push(format!("{failures}/{count} trials failed"));
            }
        }
        other => {
            return Err(format!(
                "unknown sweep '{other}'; valid: counterexample, heisenberg-q, norm, family-gc, family-fab, supp1-vs-supp2"
            ));
        }
    }
    if out.rows.is_empty() {
        return Err("sweep produced no rows".into());
    }
    Ok(())
}

// ------------------------------------------------------------------ battery

fn run_battery(cli: &Cli, out: &mut Output) -> Result<(), String> {
    let tol = cli.tol;
    let g12 = FiniteAbelianGroup::cyclic(12).map_err(estr)?;
    let a = fourier_matrix(&g12);
    let cert = certify_k_hadamard(&a, tol).map_err(estr)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let v = random_vector(&mut rng, 12);
    out.reports.push(primary_up_check(&a, &cert, &v, tol).map_err(estr)?);
    out.reports.push(support_up_check(&a, &cert, &v, tol).map_err(estr)?);
    out.reports
        .push(norm_up_check(&a, &cert, &v, NormIndex::new(3.0).map_err(estr)?, tol).map_err(estr)?);
    out.reports
        .push(hausdorff_young_check(&a, &cert, &v, 1.5, tol).map_err(estr)?);
    let (_, r) = p_geq_2_counterexample(&g12, NormIndex::two(), NormIndex::Infinity).map_err(estr)?;
    out.reports.push(r);

    let (s3, cat) = group::symmetric_s3().map_err(estr)?;
    let f = random_vector(&mut rng, 6);
    out.reports.push(meshulam_check(&s3, &f, tol).map_err(estr)?);
    out.reports.push(kuperberg_check(&s3, &f, tol).map_err(estr)?);
    out.reports
        .push(n2_hadamard_check(&s3, &cat, 25, cli.seed).map_err(estr)?);

    let gauss = GridFunction::on_interval(2048, 8.0, |x| Complex64::new((-PI * x * x).exp(), 0.0))
        .map_err(estr)?;
    let ghat = ft_grid(&gauss).map_err(estr)?;
    out.reports
        .push(heisenberg_q_check(&gauss, &ghat, 1.0, NormIndex::two(), tol).map_err(estr)?);
    out.reports
        .push(norm_up_grid_check(&gauss, &ghat, 1.0, NormIndex::two(), 1e-6).map_err(estr)?);
    out.reports.push(family_gc(2.0).map_err(estr)?.1);
    out.certificate = Some(cert);
    Ok(())
}

// ------------------------------------------------------------------- output

/// 12 significant digits, stable across runs.
fn fmt12(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        format!("{x}")
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), String> {
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(out).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Csv => to_csv(out),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_csv(out: &Output) -> String {
    let mut s = String::new();
    if let Some(cert) = &out.certificate {
        s.push_str("k,entry_bound,entry_bound_ok,unitary_defect,is_unitary_scaled,singular\n");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            fmt12(cert.k),
            fmt12(cert.entry_bound),
            cert.entry_bound_ok,
            fmt12(cert.unitary_defect),
            cert.is_unitary_scaled,
            cert.singular
        );
    }
    if !out.reports.is_empty() {
        s.push_str("theorem_id,lhs,rhs,ratio,pass,tol,context\n");
        for r in &out.reports {
            let ctx = r
                .context
                .iter()
                .map(|(k, v)| format!("{k}={}", fmt12(*v)))
                .collect::<Vec<_>>()
                .join(";");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                r.theorem_id,
                fmt12(r.lhs),
                fmt12(r.rhs),
                fmt12(r.ratio),
                r.pass,
                fmt12(r.tol),
                ctx
            );
        }
    }
    if !out.rows.is_empty() {
        let header: Vec<String> = out.rows[0].params.iter().map(|(k, _)| k.clone()).collect();
        let _ = writeln!(s, "{},lhs,rhs,ratio,pass", header.join(","));
        for row in &out.rows {
            let ps = row
                .params
                .iter()
                .map(|(_, v)| fmt12(*v))
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                ps,
                fmt12(row.lhs),
                fmt12(row.rhs),
                fmt12(row.ratio),
                row.pass
            );
        }
    }
    s
}

fn matrix_to_file(a: &CMatrix) -> MatrixFile {
    MatrixFile {
        rows: a.nrows(),
        cols: a.ncols(),
        data: (0..a.nrows())
            .flat_map(|i| (0..a.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| [a[(i, j)].re, a[(i, j)].im])
            .collect(),
    }
}
