//! `severi-lab`: command-line access to the exact computations in
//! `severi-core`.
//!
//! Standard output carries data only. Exit codes: 0 on success, 1 on a
//! domain error (reported on standard output as `{"error": ..., "message": ...}`),
//! 2 on a usage error (message on standard error). Malformed inputs such as
//! unparsable polynomials or JSON files count as usage errors.

pub mod emit;

use clap::{Args, Parser, Subcommand, ValueEnum};
use emit::{emit, to_value, Format};
use serde_json::{json, Value};
use severi_core::defmap::{self, DeformationMap, DeformationMapSpec, Realization};
use severi_core::exec::Exec;
use severi_core::germ::{self, GermError};
use severi_core::hyperelliptic::{self as family, Family, FamilyError, FamilySpec};
use severi_core::rational::{parse_q, parse_q_list, Q};
use severi_core::strata::{self, StrataError, StrataQuery, SurfaceSpec};
use severi_core::tropical::{self, TropicalCurve, TropicalError};
use severi_core::BivariatePoly;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "severi-lab", version, about = "Exact invariants of singular curves and tropical Severi degrees")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Log to standard error; repeat for more detail.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    /// Run scans and enumerations on a single thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of a plane curve germ at the origin.
    #[command(subcommand)]
    Germ(GermCommand),
    /// Fibers of hyperelliptic families y^2 = p(x).
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Expected dimensions of Severi-type strata.
    #[command(subcommand)]
    Strata(StrataCommand),
    /// Rank model of the global-to-local deformation map.
    #[command(subcommand)]
    Defmap(DefmapCommand),
    /// Tropical Severi degrees and edge contractions.
    #[command(subcommand)]
    Tropical(TropicalCommand),
}

#[derive(Debug, Subcommand)]
pub enum GermCommand {
    /// Multiplicity, Milnor, Tjurina and δ-invariants, branches, ADE label.
    Analyze {
        /// Polynomial in x and y, e.g. "y^2 - x^3".
        polynomial: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// Classify fibers along a path of parameter values.
    Scan(ScanArgs),
    /// Discriminant stratum of y^2 = x^3 + a x + b.
    Stratify {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Family file {"coeffs": [...]}, coefficient of x^i at index i.
    #[arg(long, required_unless_present = "discriminant", conflicts_with = "discriminant")]
    pub spec: Option<PathBuf>,
    /// Scan the discriminant curve (a, b) = (-3t^2, 2t^3) instead.
    #[arg(long)]
    pub discriminant: bool,
    /// Comma-separated rationals, e.g. 1,1/2,0.
    #[arg(long, allow_hyphen_values = true)]
    pub samples: String,
}

#[derive(Debug, Subcommand)]
pub enum StrataCommand {
    /// dim |L|, p_a, expected dimension and cusp bounds.
    Expdim(ExpdimArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SurfaceKind {
    P2,
    K3,
    Hirzebruch,
}

#[derive(Debug, Args)]
pub struct ExpdimArgs {
    #[arg(long, value_enum)]
    pub surface: SurfaceKind,
    /// Degree, for p2.
    #[arg(long)]
    pub d: Option<i64>,
    /// Genus, for k3.
    #[arg(long)]
    pub g: Option<i64>,
    /// Twist n of F_n, for hirzebruch.
    #[arg(long)]
    pub n: Option<i64>,
    /// Coefficient of E in L = aE + bF, for hirzebruch.
    #[arg(long)]
    pub a: Option<i64>,
    /// Coefficient of F in L = aE + bF, for hirzebruch.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<i64>,
    #[arg(long, default_value_t = 0)]
    pub delta: i64,
    #[arg(long, default_value_t = 0)]
    pub kappa: i64,
}

#[derive(Debug, Subcommand)]
pub enum DefmapCommand {
    /// Image dimension by two eliminations, and the singularity budget.
    Rank {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Solve M ξ = target exactly.
    Realize {
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated rationals, one per row.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Paths,
    Floor,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum TropicalCommand {
    /// Severi degree N(d, δ) with the contributing curves.
    Count {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, value_enum, default_value = "paths")]
        algorithm: Algorithm,
    },
    /// Shrink bounded edges to length zero and report the cusp signature.
    Contract {
        /// Tropical curve JSON file.
        #[arg(long)]
        curve: PathBuf,
        /// Comma-separated edge indices, 0-based, written e0,e1 or 0,1.
        #[arg(long)]
        edges: String,
    },
}

/// Why a command produced no data.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain { kind: &'static str, message: String },
}

impl Failure {
    fn domain(kind: &'static str, message: impl ToString) -> Self {
        Failure::Domain { kind, message: message.to_string() }
    }
}

impl From<GermError> for Failure {
    fn from(e: GermError) -> Self {
        let kind = match e {
            GermError::ZeroPolynomial => "ZeroPolynomial",
            GermError::NotAtOrigin => "NotAtOrigin",
            GermError::NonIsolated => "NonIsolated",
            GermError::ResolutionDepthExceeded(_) => "ResolutionDepthExceeded",
        };
        Failure::domain(kind, e)
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        let kind = match e {
            FamilyError::ConstantPolynomial => "ConstantPolynomial",
            FamilyError::NotMonic => "NotMonic",
            FamilyError::Factorization(_) => "FactorizationTooLarge",
            FamilyError::DegenerateFiber(_) => "DegenerateFiber",
            FamilyError::Coefficient { .. } => return Failure::Usage(e.to_string()),
            FamilyError::AssertionFailure(_) => "AssertionFailure",
        };
        Failure::domain(kind, e)
    }
}

impl From<StrataError> for Failure {
    fn from(e: StrataError) -> Self {
        let kind = match e {
            StrataError::InvalidSpec(_) => "InvalidSpec",
            StrataError::NegativeCount => "NegativeCount",
        };
        Failure::domain(kind, e)
    }
}

impl From<defmap::DefmapError> for Failure {
    fn from(e: defmap::DefmapError) -> Self {
        let kind = match e {
            defmap::DefmapError::ShapeMismatch(_) => "ShapeMismatch",
            defmap::DefmapError::InvalidBudget => "InvalidBudget",
            defmap::DefmapError::UnsupportedBudget(..) => "UnsupportedBudget",
        };
        Failure::domain(kind, e)
    }
}

impl From<TropicalError> for Failure {
    fn from(e: TropicalError) -> Self {
        let kind = match e {
            TropicalError::OutOfRange(_) => "OutOfRange",
            TropicalError::InvalidEdge(_) => "InvalidEdge",
            TropicalError::NonPositiveValuation(_) => "NonPositiveValuation",
            TropicalError::NonGeneric(_) => "NonGeneric",
        };
        Failure::domain(kind, e)
    }
}

impl From<emit::EmitError> for Failure {
    fn from(e: emit::EmitError) -> Self {
        match e {
            emit::EmitError::UnsupportedFormat(_) => Failure::domain("UnsupportedFormat", e),
            other => Failure::domain("InternalError", other),
        }
    }
}

/// A successful result and the name of its CSV record list.
struct Output {
    value: Value,
    records: Option<&'static str>,
}

impl Output {
    fn single(value: Value) -> Self {
        Output { value, records: None }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => report_clap_error(&e, out, err),
    }
}

/// Help and version go to standard output with exit 0; everything else is a
/// usage error.
pub fn report_clap_error(e: &clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    use clap::error::ErrorKind;
    let text = e.render().to_string();
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        _ => {
            let _ = err.write_all(text.as_bytes());
            2
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let result = dispatch(&cli.command, exec).and_then(|o| Ok(emit(&o.value, cli.format, o.records)?));
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain { kind, message }) => {
            log::info!("{kind}: {message}");
            let v = json!({"error": kind, "message": message});
            let _ = out.write_all(emit(&v, Format::Json, None).expect("error object encodes").as_bytes());
            1
        }
    }
}

fn dispatch(command: &Command, exec: Exec) -> Result<Output, Failure> {
    match command {
        Command::Germ(GermCommand::Analyze { polynomial }) => germ_analyze(polynomial),
        Command::Family(FamilyCommand::Scan(args)) => family_scan(args, exec),
        Command::Family(FamilyCommand::Stratify { a, b }) => family_stratify(a, b),
        Command::Strata(StrataCommand::Expdim(args)) => strata_expdim(args),
        Command::Defmap(DefmapCommand::Rank { spec }) => defmap_rank(spec),
        Command::Defmap(DefmapCommand::Realize { spec, target }) => defmap_realize(spec, target),
        Command::Tropical(TropicalCommand::Count { d, delta, algorithm }) => tropical_count(*d, *delta, *algorithm, exec),
        Command::Tropical(TropicalCommand::Contract { curve, edges }) => tropical_contract(curve, edges),
    }
}

fn rational(s: &str, what: &str) -> Result<Q, Failure> {
    parse_q(s).map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn rationals(s: &str, what: &str) -> Result<Vec<Q>, Failure> {
    parse_q_list(s).map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn germ_analyze(polynomial: &str) -> Result<Output, Failure> {
    let f: BivariatePoly = polynomial.parse().map_err(|e| Failure::Usage(format!("polynomial: {e}")))?;
    let r = germ::classify(&f)?;
    log::debug!("classified {f}");
    Ok(Output::single(to_value(&json!({
        "m": r.multiplicity,
        "mu": r.milnor,
        "tau": r.tjurina,
        "delta": r.delta,
        "branches": r.branches,
        "ade": r.ade.to_string(),
    }))?))
}

fn family_scan(args: &ScanArgs, exec: Exec) -> Result<Output, Failure> {
    let samples = rationals(&args.samples, "samples")?;
    if samples.is_empty() {
        return Err(Failure::Usage("samples: at least one value is required".into()));
    }
    if args.discriminant {
        let scan = family::scan_discriminant(&samples, exec)?;
        return Ok(Output { value: to_value(&json!({ "samples": to_value(&scan)? }))?, records: Some("samples") });
    }
    let path = args.spec.as_ref().expect("clap requires --spec without --discriminant");
    let spec: FamilySpec = read_json(path)?;
    let family = Family::from_spec(&spec)?;
    let report = family::equigeneric_path_check(&family, &samples, exec)?;
    log::info!("{} samples, {} transitions", report.samples.len(), report.transitions.len());
    Ok(Output { value: to_value(&report)?, records: Some("samples") })
}

fn family_stratify(a: &str, b: &str) -> Result<Output, Failure> {
    let (a, b) = (rational(a, "a")?, rational(b, "b")?);
    let stratum = family::stratify_cubic(&a, &b);
    let fiber = family::classify_fiber(&family::versal_cubic(&a, &b))?;
    let fiber_label = family::cubic_label_from_fiber(&a, &b)?;
    Ok(Output::single(to_value(&json!({
        "a": severi_core::rational::format_q(&a),
        "b": severi_core::rational::format_q(&b),
        "discriminant": severi_core::rational::format_q(&stratum.discriminant),
        "label": stratum.label.to_string(),
        "fiber_label": fiber_label.to_string(),
        "profile": fiber.profile_label(),
        "total_delta": fiber.total_delta,
    }))?))
}

fn strata_expdim(args: &ExpdimArgs) -> Result<Output, Failure> {
    let need = |v: Option<i64>, flag: &str, surface: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--surface {surface} requires --{flag}")))
    };
    let surface = match args.surface {
        SurfaceKind::P2 => SurfaceSpec::P2 { d: need(args.d, "d", "p2")? },
        SurfaceKind::K3 => SurfaceSpec::K3 { g: need(args.g, "g", "k3")? },
        SurfaceKind::Hirzebruch => SurfaceSpec::Hirzebruch {
            n: need(args.n, "n", "hirzebruch")?,
            a: need(args.a, "a", "hirzebruch")?,
            b: need(args.b, "b", "hirzebruch")?,
        },
    };
    if let Some(w) = surface.positivity_warning() {
        log::warn!("{w}");
    }
    let report = strata::report(&surface, &StrataQuery { delta: args.delta, kappa: args.kappa })?;
    Ok(Output::single(to_value(&report)?))
}

fn load_map(path: &Path) -> Result<DeformationMap, Failure> {
    let spec: DeformationMapSpec = read_json(path)?;
    Ok(DeformationMap::from_spec(&spec)?)
}

fn defmap_rank(spec: &Path) -> Result<Output, Failure> {
    let m = load_map(spec)?;
    let rank = defmap::image_dimension(&m);
    let bareiss = defmap::rank_bareiss(m.matrix());
    if rank != bareiss {
        return Err(Failure::domain("InternalError", format!("elimination ranks disagree: {rank} vs {bareiss}")));
    }
    let max_count = match defmap::max_singular_count(&m) {
        Ok(n) => Some(n),
        Err(e) => {
            log::warn!("{e}");
            None
        }
    };
    Ok(Output::single(to_value(&json!({
        "rows": m.rows(),
        "columns": m.columns(),
        "rank": rank,
        "max_singular_count": max_count,
        "codim_budget": defmap::codim_budget(m.budgets()),
        "budgets": m.budgets(),
    }))?))
}

fn defmap_realize(spec: &Path, target: &str) -> Result<Output, Failure> {
    let m = load_map(spec)?;
    let target = rationals(target, "target")?;
    match defmap::realizable(&m, &target)? {
        Realization::Realizable(xi) => {
            let xi: Vec<String> = xi.iter().map(severi_core::rational::format_q).collect();
            Ok(Output::single(to_value(&json!({"realizable": true, "solution": xi}))?))
        }
        Realization::Unrealizable => Err(Failure::domain("Unrealizable", "target is not in the image of the map")),
    }
}

fn tropical_count(d: u32, delta: u32, algorithm: Algorithm, exec: Exec) -> Result<Output, Failure> {
    let name = algorithm.to_possible_value().expect("no skipped variants").get_name().to_string();
    let floor = match algorithm {
        Algorithm::Floor | Algorithm::Both => Some(tropical::severi_degree_floor(d, delta)?),
        Algorithm::Paths => None,
    };
    let value = match algorithm {
        Algorithm::Floor => {
            let n = tropical::point_count(d, delta)? as usize;
            json!({
                "d": d,
                "delta": delta,
                "algorithm": name,
                "points": to_value(&PointList(tropical::marked_points(n)))?,
                "total": floor,
                "per_type": [],
            })
        }
        Algorithm::Paths | Algorithm::Both => {
            let r = tropical::enumerate_curves(d, delta, exec)?;
            log::info!("{} curve types through {} points", r.per_type.len(), r.points.len());
            if let Some(f) = floor {
                if f != r.total {
                    return Err(Failure::domain(
                        "AlgorithmsDisagree",
                        format!("lattice paths give {}, floor diagrams give {f}", r.total),
                    ));
                }
            }
            let mut v = to_value(&r)?;
            let map = v.as_object_mut().expect("enumeration serializes to an object");
            let per_type = map.remove("per_type").expect("per_type field");
            let points = map.remove("points").expect("points field");
            let total = map.remove("total").expect("total field");
            map.insert("algorithm".into(), Value::String(name));
            map.insert("points".into(), points);
            map.insert("total".into(), total);
            map.insert("per_type".into(), per_type);
            v
        }
    };
    Ok(Output { value: to_value(&value)?, records: Some("per_type") })
}

#[derive(serde::Serialize)]
struct PointList(#[serde(with = "severi_core::rational::serde_q::points")] Vec<[Q; 2]>);

fn parse_edges(s: &str) -> Result<Vec<usize>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.strip_prefix('e')
                .unwrap_or(t)
                .parse()
                .map_err(|_| Failure::Usage(format!("edges: cannot read {t:?} as an edge index")))
        })
        .collect()
}

fn tropical_contract(path: &Path, edges: &str) -> Result<Output, Failure> {
    let curve: TropicalCurve = read_json(path)?;
    if !curve.is_consistent() {
        return Err(Failure::domain("InvalidCurve", "edge or ray endpoints out of range, or non-primitive directions"));
    }
    let edges = parse_edges(edges)?;
    let contraction = tropical::contract_edges(&curve, &edges)?;
    let signature = if edges.is_empty() { None } else { Some(tropical::cusp_signature(&curve, &edges)?) };
    Ok(Output::single(to_value(&json!({
        "contracted": edges,
        "curve": to_value(&contraction.curve)?,
        "valences": contraction.valences,
        "merged_valences": contraction.merged_valences,
        "balanced": contraction.balanced,
        "cusp_signature": signature.map(|s| json!({
            "codimension": s.codimension,
            "cusp_candidate": s.cusp_candidate,
            "valence_four": s.valence_four,
            "warning": s.warning,
        })),
    }))?))
}
