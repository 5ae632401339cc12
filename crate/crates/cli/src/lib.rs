//! Command-line front end: input parsing, orchestration and report rendering.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsl_core::lattice::is_prime;
use hsl_core::{hsl_exact_dim1, AffineSemigroup, GammaCertificate, HslReport, IntVector, TopCohomology};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const DEFAULT_BUDGET: usize = 10_000;
pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
    #[error("the cone contains a line, so the semigroup is not pointed")]
    NotPointed,
    #[error("{0}")]
    Budget(String),
    #[error("{0} window classes exceed the theoretical bound")]
    Violations(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Usage(_) => 1,
            CliError::NotPointed => 2,
            CliError::Budget(_) => 3,
            CliError::Violations(_) => 4,
        }
    }
}

impl From<hsl_core::Error> for CliError {
    fn from(e: hsl_core::Error) -> Self {
        match e {
            hsl_core::Error::NotPointed => CliError::NotPointed,
            hsl_core::Error::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hsl", version, about = "Frobenius nilpotence bounds for top local cohomology of affine semigroup rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice, cone, gamma certificate, facet invariants and bounds.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Primes to report bounds for (default 2, 3, 5, 7, 11, 13).
        #[arg(long = "prime", value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// The bound for one prime, or "no guarantee" when p ≤ N_Q.
    Bound {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: u64,
    },
    /// Measure Frobenius nilpotency over a window and check the bound.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prime: u64,
        /// Window radius L: degrees in [-L, L]^n.
        #[arg(long, default_value_t = 10)]
        window: u32,
        /// Largest Frobenius power (default: bound + 2, or 10).
        #[arg(long)]
        emax: Option<u32>,
        /// Grading cap for witness search (default: 10·m_Q).
        #[arg(long)]
        cap: Option<BigInt>,
    },
    /// Exact nilpotency order for rank-one semigroups.
    Dim1 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// JSON document with a "generators" array of integer arrays.
    #[arg(long)]
    pub input: PathBuf,
    /// Candidates examined by the gamma search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Use this gamma (ambient coordinates, comma separated) instead of searching.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub gamma: Option<Vec<BigInt>>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSpec {
    pub generators: Vec<IntVector>,
    pub labels: Option<Vec<String>>,
}

fn parse_integer(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

/// Parses an input document. Returns the spec and warnings for ignored fields.
pub fn parse_input(text: &str) -> Result<(InputSpec, Vec<String>), CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
    let Value::Object(map) = doc else {
        return Err(CliError::Input("input must be a JSON object".into()));
    };
    let mut warnings = Vec::new();
    for key in map.keys() {
        if key != "generators" && key != "labels" {
            warnings.push(format!("ignoring unknown field `{key}`"));
        }
    }
    let rows = map
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Input("missing `generators` array".into()))?;
    if rows.is_empty() {
        return Err(CliError::Input("`generators` is empty".into()));
    }
    let mut generators = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| CliError::Input(format!("generator {i} is not an array")))?;
        let entries: Option<Vec<BigInt>> = entries.iter().map(parse_integer).collect();
        let entries = entries.ok_or_else(|| CliError::Input(format!("generator {i} has a non-integer entry")))?;
        generators.push(IntVector::new(entries));
    }
    let dim = generators[0].len();
    if dim == 0 {
        return Err(CliError::Input("generators must have at least one coordinate".into()));
    }
    if let Some((i, g)) = generators.iter().enumerate().find(|(_, g)| g.len() != dim) {
        return Err(CliError::Input(format!("generator {i} has {} coordinates, expected {dim}", g.len())));
    }
    let labels = match map.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => {
            let labels: Option<Vec<String>> = items.iter().map(|v| v.as_str().map(str::to_owned)).collect();
            let labels = labels.ok_or_else(|| CliError::Input("`labels` must be strings".into()))?;
            if labels.len() != generators.len() {
                return Err(CliError::Input("`labels` must have one entry per generator".into()));
            }
            Some(labels)
        }
        Some(_) => return Err(CliError::Input("`labels` must be an array".into())),
    };
    Ok((InputSpec { generators, labels }, warnings))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSummary {
    /// In lattice coordinates.
    pub gamma: IntVector,
    pub gamma_ambient: IntVector,
    #[serde(with = "hsl_core::serde_int::vec")]
    pub facet_values: Vec<BigInt>,
    #[serde(with = "hsl_core::serde_int")]
    pub m_q: BigInt,
    /// Smallest facet value; informational, not a certified bound base.
    #[serde(with = "hsl_core::serde_int")]
    pub min_facet_value_uncertified: BigInt,
    pub residues_checked: usize,
    /// "search" or "given".
    pub source: String,
    pub candidates_examined: Option<usize>,
    /// The search proved `m_q` minimal.
    pub minimal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetSummary {
    pub index: usize,
    pub form: IntVector,
    pub generator_indices: Vec<usize>,
    #[serde(with = "hsl_core::serde_int::vec")]
    pub invariant_factors: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub prime: u64,
    /// Absent when `p ≤ N_Q`.
    pub bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub ambient_dimension: usize,
    pub rank: usize,
    /// Rows span the group generated by the input, in ambient coordinates.
    pub lattice_basis: Vec<IntVector>,
    /// Nonzero input generators in lattice coordinates.
    pub generators: Vec<IntVector>,
    pub labels: Option<Vec<String>>,
    pub support_forms: Vec<IntVector>,
    pub pointed: bool,
    /// Indices into `generators`, one per extreme ray.
    pub extreme_rays: Vec<usize>,
    /// The semigroup equals its saturation; then `m_q = 0` and every bound is 0.
    pub saturated: bool,
    pub gamma: GammaSummary,
    pub facets: Vec<FacetSummary>,
    #[serde(with = "hsl_core::serde_int")]
    pub n_q: BigInt,
    pub bounds: Vec<BoundEntry>,
    pub verification: Option<HslReport>,
}

struct Context {
    semigroup: AffineSemigroup,
    certificate: GammaCertificate,
    summary: GammaSummary,
    labels: Option<Vec<String>>,
}

fn load(common: &Common, warn: &mut dyn Write) -> Result<Context, CliError> {
    let (spec, labels) = read_spec(&common.input, warn)?;
    let semigroup = AffineSemigroup::build(spec)?;
    let (certificate, source, examined, minimal) = match &common.gamma {
        Some(entries) => {
            let ambient = IntVector::new(entries.clone());
            if ambient.len() != semigroup.ambient_dim() {
                return Err(CliError::Usage(format!(
                    "--gamma has {} coordinates, expected {}",
                    ambient.len(),
                    semigroup.ambient_dim()
                )));
            }
            let local = semigroup
                .to_lattice(&ambient)
                .ok_or_else(|| CliError::Usage(format!("--gamma {ambient} is not in the group of the semigroup")))?;
            let cert = semigroup
                .verify_gamma(&local)
                .ok_or_else(|| CliError::Usage(format!("--gamma {ambient} fails verification")))?;
            (cert, "given", None, None)
        }
        None => {
            let found = semigroup.find_gamma(common.budget)?;
            (found.certificate, "search", Some(found.candidates_examined), Some(found.complete))
        }
    };
    let summary = GammaSummary {
        gamma: certificate.gamma.clone(),
        gamma_ambient: semigroup.to_ambient(&certificate.gamma),
        facet_values: certificate.facet_values.clone(),
        m_q: certificate.m_q.clone(),
        min_facet_value_uncertified: certificate.min_facet_value(),
        residues_checked: certificate.residue_witnesses.len(),
        source: source.into(),
        candidates_examined: examined,
        minimal,
    };
    Ok(Context { semigroup, certificate, summary, labels })
}

fn read_spec(path: &PathBuf, warn: &mut dyn Write) -> Result<(Vec<IntVector>, Option<Vec<String>>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let (spec, warnings) = parse_input(&text)?;
    for w in warnings {
        let _ = writeln!(warn, "warning: {w}");
    }
    Ok((spec.generators, spec.labels))
}

fn check_prime(p: u64) -> Result<(), CliError> {
    if is_prime(&BigInt::from(p)) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{p} is not prime")))
    }
}

fn analysis(ctx: &Context, primes: &[u64], verification: Option<HslReport>) -> AnalysisReport {
    let s = &ctx.semigroup;
    let h = TopCohomology::new(s, &ctx.certificate);
    let facets = h
        .facets()
        .iter()
        .map(|f| FacetSummary {
            index: f.index,
            form: f.form.clone(),
            generator_indices: f.generator_indices.clone(),
            invariant_factors: f.invariant_factors.clone(),
        })
        .collect();
    let saturated = if ctx.certificate.gamma.is_zero() {
        true
    } else {
        s.verify_gamma(&IntVector::zeros(s.rank())).is_some()
    };
    AnalysisReport {
        ambient_dimension: s.ambient_dim(),
        rank: s.rank(),
        lattice_basis: s.lattice_basis().to_vec(),
        generators: s.generators().to_vec(),
        labels: ctx.labels.as_ref().map(|l| s.source_indices().iter().map(|&i| l[i].clone()).collect()),
        support_forms: s.cone().support_forms().to_vec(),
        pointed: s.cone().is_pointed(),
        extreme_rays: s.cone().extreme_ray_reps().to_vec(),
        saturated,
        gamma: ctx.summary.clone(),
        facets,
        n_q: h.n_q().clone(),
        bounds: primes.iter().map(|&p| BoundEntry { prime: p, bound: h.theoretical_bound(p) }).collect(),
        verification,
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn vector_of(values: &[BigInt]) -> String {
    IntVector::new(values.to_vec()).to_string()
}

/// Human-readable rendering of an [`AnalysisReport`].
pub fn render_table(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let g = &r.gamma;
    let _ = writeln!(out, "{:<18}{} (ambient dimension {})", "rank", r.rank, r.ambient_dimension);
    let _ = writeln!(out, "{:<18}{}", "lattice basis", join(&r.lattice_basis));
    let _ = writeln!(out, "{:<18}{}", "generators", join(&r.generators));
    let _ = writeln!(out, "{:<18}{}", "pointed", if r.pointed { "yes" } else { "no" });
    let _ = writeln!(out, "{:<18}{}", "support forms", join(&r.support_forms));
    let _ = writeln!(out, "{:<18}{}", "saturated", if r.saturated { "yes (all bounds are 0)" } else { "no" });
    let _ = writeln!(out, "{:<18}{} ({}, ambient {})", "gamma", g.gamma, g.source, g.gamma_ambient);
    let _ = writeln!(out, "{:<18}{}", "facet values", vector_of(&g.facet_values));
    let _ = writeln!(out, "{:<18}{}", "m_Q", g.m_q);
    let _ = writeln!(out, "{:<18}{} (uncertified)", "min facet value", g.min_facet_value_uncertified);
    for f in &r.facets {
        let _ = writeln!(
            out,
            "{:<18}form {}, generators [{}], invariant factors [{}]",
            format!("facet {}", f.index),
            f.form,
            join(&f.generator_indices),
            join(&f.invariant_factors)
        );
    }
    let _ = writeln!(out, "{:<18}{}", "N_Q", r.n_q);
    for b in &r.bounds {
        let value = b.bound.map_or_else(|| "no guarantee: p ≤ N_Q".to_string(), |e| e.to_string());
        let _ = writeln!(out, "{:<18}{}", format!("bound p={}", b.prime), value);
    }
    if let Some(v) = &r.verification {
        out.push_str(&render_verification(v));
    }
    out
}

fn render_verification(v: &HslReport) -> String {
    let mut out = String::new();
    let bound = v.theoretical_bound.map_or_else(|| "none (p ≤ N_Q)".to_string(), |b| b.to_string());
    let _ = writeln!(out, "{:<18}p={} window={} e_max={} cap={}", "verification", v.prime, v.window, v.e_max, v.cap);
    let _ = writeln!(out, "{:<18}{}", "theoretical bound", bound);
    let _ = writeln!(out, "{:<18}{}", "empirical max", v.empirical_max);
    let _ = writeln!(out, "{:<18}{}", "classes", v.classes);
    for (name, s) in [("neg interior", &v.neg_interior), ("neg boundary", &v.neg_boundary), ("outside neg", &v.outside_neg)] {
        let _ = writeln!(
            out,
            "{:<18}{} classes: {} zero, {} nilpotent (max order {}), {} not nilpotent, {} undetermined",
            name, s.classes, s.zero, s.nilpotent, s.max_order, s.not_nilpotent, s.undetermined
        );
    }
    let _ = writeln!(out, "{:<18}{}", "violations", v.violations.len());
    let _ = writeln!(out, "{:<18}{}", "inexact orders", v.inexact_orders.len());
    let _ = writeln!(out, "{:<18}{}", "scaling failures", v.scaling_failures.len());
    if v.theoretical_bound.is_none() {
        let _ = writeln!(out, "{:<18}{}", "small char. flags", v.small_characteristic.len());
    }
    out
}

fn emit(out: &mut dyn Write, format: Format, report: &AnalysisReport) -> Result<(), CliError> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Table => render_table(report),
    };
    out.write_all(text.as_bytes()).map_err(|e| CliError::Input(format!("write failed: {e}")))
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { common, primes } => {
            primes.iter().try_for_each(|&p| check_prime(p))?;
            let primes = if primes.is_empty() { DEFAULT_PRIMES.to_vec() } else { primes };
            let ctx = load(&common, err)?;
            emit(out, common.format.unwrap_or(Format::Json), &analysis(&ctx, &primes, None))
        }
        Command::Bound { common, prime } => {
            check_prime(prime)?;
            let ctx = load(&common, err)?;
            let report = analysis(&ctx, &[prime], None);
            match common.format.unwrap_or(Format::Table) {
                Format::Json => emit(out, Format::Json, &report),
                Format::Table => {
                    let line = report.bounds[0]
                        .bound
                        .map_or_else(|| format!("no guarantee: p ≤ N_Q (N_Q = {})", report.n_q), |b| b.to_string());
                    writeln!(out, "{line}").map_err(|e| CliError::Input(format!("write failed: {e}")))
                }
            }
        }
        Command::Verify { common, prime, window, emax, cap } => {
            check_prime(prime)?;
            if cap.as_ref().is_some_and(|c| c < &BigInt::from(0)) {
                return Err(CliError::Usage("--cap must be nonnegative".into()));
            }
            let ctx = load(&common, err)?;
            let h = TopCohomology::new(&ctx.semigroup, &ctx.certificate);
            let e_max = emax.unwrap_or_else(|| h.default_e_max(prime));
            let cap = cap.unwrap_or_else(|| h.default_cap());
            let verification = h.empirical_hsl(prime, window, e_max, &cap);
            let violations = verification.violations.len();
            emit(out, common.format.unwrap_or(Format::Json), &analysis(&ctx, &[prime], Some(verification)))?;
            if violations > 0 {
                return Err(CliError::Violations(violations));
            }
            Ok(())
        }
        Command::Dim1 { input, prime, format } => {
            check_prime(prime)?;
            let (spec, _) = read_spec(&input, err)?;
            let s = AffineSemigroup::build(spec)?;
            if s.rank() != 1 {
                return Err(CliError::Usage(format!("dim1 needs a rank-one semigroup, got rank {}", s.rank())));
            }
            let e = hsl_exact_dim1(&s, prime)?;
            let text = match format {
                Format::Json => format!("{{\n  \"prime\": {prime},\n  \"hsl\": {e}\n}}\n"),
                Format::Table => format!("{e}\n"),
            };
            out.write_all(text.as_bytes()).map_err(|e| CliError::Input(format!("write failed: {e}")))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
