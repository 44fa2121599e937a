//! Command-line front end: parses inputs, dispatches to `tropmob`, writes JSON reports.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tropmob::amoeba::{convergence_profile, sample_amoeba, BoundingBox};
use tropmob::entropy::{chain_inequality_check, diagonal_family, entropy_constant, mobility_family, MeasureFamily};
use tropmob::error::{DomainError, LatticeError};
use tropmob::field::{fmt_rational, Rational};
use tropmob::fixtures::{self, MobilityFixture};
use tropmob::io;
use tropmob::lattice::{
    check_balancing, dual_complex, is_unimodular_triangulation, lower_hull_subdivision, support_polytope,
    LiftedLaurentPolynomial,
};
use tropmob::measures::{local_order, total_mass, ComplexMeasure, LocalChart, Order};
use tropmob::mobility::{
    certificate, cone_vertex_check, noether_fano_check, segre_cone_data, segre_section, Bound, Convention,
    MobilityCertificate,
};
use tropmob::pl::{corner_locus, dilation_factor, tropicalize, DilationFactor};
use tropmob::svg::{render_svg, support_box, Layer};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tropmob", version, about = "Tropical geometry and mobility thresholds")]
pub struct Cli {
    /// Report path; the report goes to stdout when omitted.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// RNG seed; defaults to $TROP_SEED, then 0.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polytope of a lifted polynomial.
    Polytope(InputArg),
    /// Regular subdivision induced by the lifts.
    Subdivide(InputArg),
    /// Dual complex, balancing and Euclidean mass.
    Dual(DualArgs),
    /// Tropicalization and its corner locus.
    Tropicalize(InputArg),
    /// Amoeba samples and a convergence profile.
    Amoeba(AmoebaArgs),
    /// Local order of a polynomial on a hypersurface chart.
    Order(OrderArgs),
    /// Mobility certificate for a pencil fixture.
    Mobility(MobilityArgs),
    /// Entropy constant of a measure family.
    Entropy(EntropyArgs),
    /// Noether–Fano inequality and the transport chain.
    CheckNf(CheckNfArgs),
    /// Segre quartic section and cone-vertex check.
    Segre(SegreArgs),
    /// SVG scene of a plane curve.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Lifted polynomial JSON.
    #[arg(short, long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct DualArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Half-width of the plot box.
    #[arg(long = "box", default_value_t = 3.0)]
    pub half_width: f64,
}

#[derive(Debug, Args)]
pub struct AmoebaArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// Strictly decreasing t values in (0, 1).
    #[arg(long, value_delimiter = ',', default_value = "0.5,0.2,0.1,0.05,0.02")]
    pub ts: Vec<f64>,
    /// Fibers per t value.
    #[arg(long, default_value_t = 5000)]
    pub samples: usize,
    #[arg(long = "box", default_value_t = 4.0)]
    pub half_width: f64,
    /// CSV of the points at the last t.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// SVG of the points at the last t over the corner locus.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    /// Chart JSON.
    #[arg(long)]
    pub chart: PathBuf,
    /// Polynomial JSON.
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long)]
    pub truncation: Option<u32>,
    /// Also report the atomic mass order / N.
    #[arg(long = "multiplier")]
    pub n: Option<u32>,
}

#[derive(Debug, Args)]
pub struct MobilityArgs {
    #[arg(long)]
    pub fixture: PathBuf,
    #[arg(long, default_value = "family-average")]
    pub convention: String,
    #[arg(long)]
    pub truncation: Option<u32>,
    /// Random combinations tried for the generic member.
    #[arg(long, default_value_t = 16)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// Measure family JSON.
    #[arg(short, long, conflicts_with = "fixture")]
    pub input: Option<PathBuf>,
    /// Mobility fixtures; each certificate contributes one member anchored at the origin.
    #[arg(long)]
    pub fixture: Vec<PathBuf>,
    #[arg(long, default_value = "family-average")]
    pub convention: String,
    #[arg(long, default_value_t = 16)]
    pub trials: usize,
    /// Member indices for a diagonal family.
    #[arg(long, value_delimiter = ',')]
    pub selection: Vec<usize>,
    /// Rational factors for the homogeneity check.
    #[arg(long, value_delimiter = ',')]
    pub scale: Vec<String>,
}

#[derive(Debug, Args)]
pub struct CheckNfArgs {
    /// PL map JSON of the tropicalized map from source to target.
    #[arg(long)]
    pub map: Option<PathBuf>,
    #[arg(long, conflicts_with = "source_bound")]
    pub source_fixture: Option<PathBuf>,
    /// Exact threshold of the source, e.g. "1".
    #[arg(long)]
    pub source_bound: Option<String>,
    #[arg(long, conflicts_with = "target_bound")]
    pub target_fixture: Option<PathBuf>,
    #[arg(long)]
    pub target_bound: Option<String>,
    #[arg(long, default_value = "family-average")]
    pub convention: String,
    #[arg(long, default_value_t = 16)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct SegreArgs {
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// SVG path.
    #[arg(long)]
    pub plot: PathBuf,
    /// Any of subdivision, dual, locus, amoeba.
    #[arg(long, value_delimiter = ',', default_value = "locus")]
    pub layers: Vec<String>,
    #[arg(long, default_value_t = 0.1)]
    pub t: f64,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long = "box", default_value_t = 3.0)]
    pub half_width: f64,
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Domain { module: &'static str, name: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => EXIT_IO,
            CliError::Domain { .. } => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Domain { module, name, message } => write!(f, "{module} error {name}: {message}"),
        }
    }
}

fn domain<E: DomainError>(e: E) -> CliError {
    CliError::Domain { module: e.module(), name: e.name(), message: e.to_string() }
}

fn parse_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load<T, E: std::fmt::Display>(path: &Path, parse: impl Fn(&str) -> Result<T, E>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| parse_err(path, e))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let name = path.file_name().ok_or_else(|| CliError::Io(format!("{}: not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

fn rational(s: &str) -> Result<Rational, CliError> {
    s.trim().parse::<Rational>().map_err(|_| CliError::Parse(format!("not a rational number: {s:?}")))
}

fn convention(s: &str) -> Result<Convention, CliError> {
    Convention::parse(s).ok_or_else(|| CliError::Parse(format!("unknown convention {s:?}")))
}

fn bbox(half_width: f64) -> Result<BoundingBox, CliError> {
    if half_width.is_finite() && half_width > 0.0 {
        Ok(BoundingBox::square(half_width))
    } else {
        Err(CliError::Parse(format!("box half-width must be positive, got {half_width}")))
    }
}

/// Seed from the flag, then `TROP_SEED`, then 0.
pub fn resolve_seed(flag: Option<u64>, env: Option<String>) -> Result<u64, CliError> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(v)) => v.trim().parse().map_err(|_| CliError::Parse(format!("TROP_SEED is not an integer: {v:?}"))),
        (None, None) => Ok(0),
    }
}

pub struct Report {
    pub subcommand: &'static str,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self, wall_time_ms: u128) -> Value {
        json!({
            "subcommand": self.subcommand,
            "results": self.results,
            "warnings": self.warnings,
            "wall_time_ms": wall_time_ms as u64,
        })
    }
}

fn with_truncation(chart: &LocalChart, truncation: Option<u32>) -> Result<LocalChart, CliError> {
    match truncation {
        None => Ok(chart.clone()),
        Some(d) => LocalChart::new(chart.f().clone(), chart.solve_for(), Some(d)).map_err(domain),
    }
}

fn load_certificate(
    path: &Path,
    conv: Convention,
    truncation: Option<u32>,
    trials: usize,
    seed: u64,
) -> Result<(MobilityFixture, MobilityCertificate), CliError> {
    let mut fx = load(path, io::parse_fixture)?;
    fx.system.chart = with_truncation(&fx.system.chart, truncation)?;
    let cert = certificate(&fx.system, conv, trials, seed).map_err(domain)?;
    Ok((fx, cert))
}

pub fn convention_note(cert: &MobilityCertificate) -> Option<String> {
    let generic = Rational::from_integer(cert.generic.order.into());
    (generic != cert.family_average).then(|| {
        format!(
            "conventions differ: generic-member order {} vs family-average multiplicity {}; reported ratio uses {}",
            cert.generic.order,
            fmt_rational(&cert.family_average),
            cert.convention
        )
    })
}

fn certificate_family(
    paths: &[PathBuf],
    conv: Convention,
    trials: usize,
    seed: u64,
) -> Result<(Vec<MobilityCertificate>, MeasureFamily), CliError> {
    let certs: Vec<MobilityCertificate> = paths
        .iter()
        .map(|p| load_certificate(p, conv, None, trials, seed).map(|(_, c)| c))
        .collect::<Result<_, _>>()?;
    let anchors: Vec<Vec<Rational>> = certs.iter().map(|c| fixtures::origin(c.system.chart.n() - 1)).collect();
    let fam = mobility_family(&certs, &anchors).map_err(domain)?;
    Ok((certs, fam))
}

fn svg_or_warn(layers: &[Layer<'_>], b: BoundingBox, path: &Path) -> Result<Value, CliError> {
    let svg = render_svg(layers, b).map_err(domain)?;
    write_atomic(path, svg.as_bytes())?;
    Ok(json!({ "path": path.display().to_string(), "bytes": svg.len() }))
}

const EMPIRICAL: &str = "empirical-only: one-sided distance from sample points in the box to the corner locus";

pub fn dispatch(cmd: &Command, seed: u64) -> Result<Report, CliError> {
    let mut warnings = Vec::new();
    let (subcommand, results) = match cmd {
        Command::Polytope(a) => {
            let f = load(&a.input, io::parse_lifted)?;
            ("polytope", io::polytope_to_json(&support_polytope(&f)))
        }
        Command::Subdivide(a) => {
            let f = load(&a.input, io::parse_lifted)?;
            let s = lower_hull_subdivision(&f);
            let v = is_unimodular_triangulation(&s);
            if !v.holds {
                warnings.push("subdivision is not a unimodular triangulation".into());
            }
            ("subdivide", io::subdivision_to_json(&s, &v))
        }
        Command::Dual(a) => {
            let f = load(&a.input, io::parse_lifted)?;
            let p = dual_complex(&f).map_err(domain)?;
            let balanced = match check_balancing(&p) {
                Ok(v) => Some(v),
                Err(LatticeError::DimensionUnsupported(n)) => {
                    warnings.push(format!("balancing not checked for n = {n}"));
                    None
                }
                Err(e) => return Err(domain(e)),
            };
            let mass = total_mass(&ComplexMeasure::euclidean_on(&p));
            if mass.unbounded_support {
                warnings.push("UnboundedSupport: unbounded cells are excluded from the total mass".into());
            }
            let mut out = io::dual_to_json(&p, balanced.as_ref());
            out["euclidean_mass"] = io::mass_report_to_json(&mass);
            if let Some(path) = &a.plot {
                out["svg"] = svg_or_warn(&[Layer::Dual(&p)], bbox(a.half_width)?, path)?;
            }
            ("dual", out)
        }
        Command::Tropicalize(a) => {
            let f = load(&a.input, io::parse_lifted)?;
            let l = tropicalize(&f);
            let locus = corner_locus(&l);
            ("tropicalize", json!({ "pl_function": io::pl_function_to_json(&l), "corner_locus": io::corner_locus_to_json(&locus) }))
        }
        Command::Amoeba(a) => {
            let f = load(&a.input, io::parse_lifted)?;
            let b = bbox(a.half_width)?;
            let profile = convergence_profile(&f, &a.ts, a.samples, seed, b).map_err(domain)?;
            warnings.push(EMPIRICAL.into());
            let mut out = json!({
                "profile": io::profile_to_json(&profile),
                "non_increasing_within_10pct": profile.non_increasing_within(0.1),
            });
            if a.csv.is_some() || a.plot.is_some() {
                let t = *a.ts.last().expect("profile checked the t list");
                let sample = sample_amoeba(&f, t, a.samples, seed, b).map_err(domain)?;
                if let Some(path) = &a.csv {
                    write_atomic(path, sample.to_csv().as_bytes())?;
                    out["csv"] = json!({ "path": path.display().to_string(), "rows": sample.points.len() });
                }
                if let Some(path) = &a.plot {
                    let locus = corner_locus(&tropicalize(&f));
                    out["svg"] = svg_or_warn(&[Layer::Locus(&locus), Layer::Points(&sample.points)], b, path)?;
                }
            }
            ("amoeba", out)
        }
        Command::Order(a) => {
            let chart = with_truncation(&load(&a.chart, io::parse_chart)?, a.truncation)?;
            let g = load(&a.poly, io::parse_polynomial)?;
            let d = chart.truncation_for(&g);
            let order = local_order(&chart, &g).map_err(domain)?;
            let mut out = json!({ "truncation": d, "chart": io::chart_to_json(&chart), "polynomial": io::polynomial_to_json(&g) });
            match order {
                Order::Determined(k) => {
                    out["order"] = json!(k);
                    if let Some(n) = a.n {
                        if n == 0 {
                            return Err(CliError::Parse("multiplier must be positive".into()));
                        }
                        out["mass"] = json!(fmt_rational(&Rational::new(k.into(), n.into())));
                    }
                }
                Order::Undetermined(d) => {
                    out["order"] = Value::Null;
                    warnings.push(format!("⊥_D: order exceeds the truncation degree D = {d}"));
                }
            }
            ("order", out)
        }
        Command::Mobility(a) => {
            let conv = convention(&a.convention)?;
            let (fx, cert) = load_certificate(&a.fixture, conv, a.truncation, a.trials, seed)?;
            if let Some(note) = convention_note(&cert) {
                warnings.push(note);
            }
            warnings.push("certificate: the ratio is a lower bound for the mobility threshold".into());
            let mut out = io::certificate_to_json(&cert);
            out["fixture"] = json!(fx.name);
            out["truncation"] = json!(cert.system.chart.truncation());
            out["note"] = json!(fx.note);
            ("mobility", out)
        }
        Command::Entropy(a) => {
            let fam = match &a.input {
                Some(p) => load(p, io::parse_family)?,
                None if !a.fixture.is_empty() => {
                    certificate_family(&a.fixture, convention(&a.convention)?, a.trials, seed)?.1
                }
                None => return Err(CliError::Parse("entropy needs --input or at least one --fixture".into())),
            };
            let r = entropy_constant(&fam).map_err(domain)?;
            let mut out = io::entropy_to_json(&r);
            out["family"] = io::family_to_json(&fam);
            if !a.selection.is_empty() {
                out["diagonal"] = io::diagonal_to_json(&diagonal_family(&fam, &a.selection).map_err(domain)?);
            }
            let mut scaled = Vec::new();
            for s in &a.scale {
                let c = rational(s)?;
                let e = entropy_constant(&fam.scaled_measures(&c)).map_err(domain)?;
                scaled.push(json!({
                    "delta": fmt_rational(&c),
                    "scaled_ent": fmt_rational(&e.ent),
                    "holds": e.ent == &c * &r.ent,
                }));
            }
            if !scaled.is_empty() {
                out["homogeneity"] = json!(scaled);
            }
            ("entropy", out)
        }
        Command::CheckNf(a) => {
            let conv = convention(&a.convention)?;
            let mut certs = Vec::new();
            let mut bound = |fixture: &Option<PathBuf>, exact: &Option<String>, side: &str| -> Result<Bound, CliError> {
                match (fixture, exact) {
                    (Some(p), _) => {
                        let (_, c) = load_certificate(p, conv, None, a.trials, seed)?;
                        certs.push(p.clone());
                        Ok(Bound::Certificate(Box::new(c)))
                    }
                    (None, Some(s)) => Ok(Bound::Exact(rational(s)?)),
                    (None, None) => Err(CliError::Parse(format!("check-nf needs --{side}-fixture or --{side}-bound"))),
                }
            };
            let y = bound(&a.source_fixture, &a.source_bound, "source")?;
            let x = bound(&a.target_fixture, &a.target_bound, "target")?;
            let phi = a.map.as_ref().map(|p| load(p, io::parse_plmap)).transpose()?;
            let delta = match &phi {
                Some(phi) => dilation_factor(phi).map_err(domain)?,
                None => {
                    warnings.push("no map given; δ is taken as 1".into());
                    DilationFactor(1.into())
                }
            };
            let report = noether_fano_check(&y, &x, &delta).map_err(domain)?;
            warnings.push(report.caveat.into());
            let mut out = io::noether_fano_to_json(&report);
            if let (Some(phi), Some(src), Some(tgt)) = (&phi, &a.source_fixture, &a.target_fixture) {
                let (_, fam_src) = certificate_family(std::slice::from_ref(src), conv, a.trials, seed)?;
                let (_, fam_tgt) = certificate_family(std::slice::from_ref(tgt), conv, a.trials, seed)?;
                let chain = chain_inequality_check(&fam_tgt, &fam_src, phi, &delta).map_err(domain)?;
                out["chain"] = io::chain_to_json(&chain);
            }
            ("check-nf", out)
        }
        Command::Segre(a) => {
            let r = segre_section();
            let (eqs, o) = segre_cone_data();
            let w = cone_vertex_check(&eqs, &o, a.samples, seed).map_err(domain)?;
            let mut out = io::segre_to_json(&r);
            out["cone_vertex"] = io::cone_witness_to_json(&w);
            ("segre", out)
        }
        Command::Plot(a) => {
            let f = load(&a.input, io::parse_lifted)?;
            let b = bbox(a.half_width)?;
            let (mut sub, mut dual, mut locus, mut points) = (None, None, None, None);
            for name in &a.layers {
                match name.as_str() {
                    "subdivision" => sub = Some(lower_hull_subdivision(&f)),
                    "dual" => dual = Some(dual_complex(&f).map_err(domain)?),
                    "locus" => locus = Some(corner_locus(&tropicalize(&f))),
                    "amoeba" => points = Some(sample_amoeba(&f, a.t, a.samples, seed, b).map_err(domain)?.points),
                    other => return Err(CliError::Parse(format!("unknown layer {other:?}"))),
                }
            }
            let mut layers = Vec::new();
            for name in &a.layers {
                match name.as_str() {
                    "subdivision" => layers.push(Layer::Subdivision(sub.as_ref().expect("built above"))),
                    "dual" => layers.push(Layer::Dual(dual.as_ref().expect("built above"))),
                    "locus" => layers.push(Layer::Locus(locus.as_ref().expect("built above"))),
                    _ => layers.push(Layer::Points(points.as_deref().expect("built above"))),
                }
            }
            // a subdivision-only scene lives in exponent space
            let b = match (&sub, a.layers.len()) {
                (Some(s), 1) => support_box(s),
                _ => b,
            };
            if points.is_some() {
                warnings.push("empirical-only: amoeba points are sampled".into());
            }
            let mut out = svg_or_warn(&layers, b, &a.plot)?;
            out["layers"] = json!(a.layers);
            out["amoeba_points"] = json!(points.as_ref().map(Vec::len));
            ("plot", out)
        }
    };
    Ok(Report { subcommand, results, warnings })
}

fn lifted_json(f: &LiftedLaurentPolynomial) -> Value {
    io::lifted_to_json(f)
}

/// Every file shipped under `fixtures/`, regenerated from the library.
pub fn shipped_fixtures() -> Vec<(String, Value)> {
    let mut out = vec![
        ("cubic.json".to_string(), io::fixture_to_json(&fixtures::cubic_pencil())),
        ("quartic.json".to_string(), io::fixture_to_json(&fixtures::quartic_pencil())),
    ];
    for m in [2, 3] {
        out.push((format!("projective-{m}.json"), io::fixture_to_json(&fixtures::projective_pencil(m))));
        for d in [2u32, 3] {
            out.push((format!("frobenius-{m}-{d}.json"), io::fixture_to_json(&fixtures::frobenius_pencil(m, d))));
            let map = io::plmap_to_json(&fixtures::frobenius_map(m, i64::from(d))).expect("single-cell map");
            out.push((format!("frobenius-map-{m}-{d}.json"), map));
        }
    }
    out.push(("tropline.json".into(), lifted_json(&fixtures::tropical_line())));
    out.push(("square.json".into(), lifted_json(&fixtures::square_curve())));
    out.push(("conic.json".into(), lifted_json(&fixtures::conic_curve())));
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_IO } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("tropmob: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let seed = resolve_seed(cli.seed, std::env::var("TROP_SEED").ok())?;
    let start = Instant::now();
    let report = dispatch(&cli.command, seed)?;
    let text = to_pretty(&report.to_json(start.elapsed().as_millis()));
    match &cli.output {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_resolution() {
        assert_eq!(resolve_seed(Some(3), Some("9".into())).unwrap(), 3);
        assert_eq!(resolve_seed(None, Some("9".into())).unwrap(), 9);
        assert_eq!(resolve_seed(None, None).unwrap(), 0);
        assert!(resolve_seed(None, Some("x".into())).is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["tropmob"]), EXIT_IO);
        assert_eq!(run(["tropmob", "frobnicate"]), EXIT_IO);
        assert_eq!(run(["tropmob", "--help"]), EXIT_OK);
    }

    #[test]
    fn domain_errors_carry_names() {
        let e = domain(LatticeError::DimensionUnsupported(3));
        assert_eq!(e.exit_code(), EXIT_DOMAIN);
        assert_eq!(e.to_string(), "lattice-geometry error DimensionUnsupported: geometric realization unsupported for n = 3");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = std::env::temp_dir().join(format!("tropmob-atomic-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let p = dir.join("r.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn shipped_names_are_unique() {
        let f = shipped_fixtures();
        let mut names: Vec<&str> = f.iter().map(|(n, _)| n.as_str()).collect();
        names.dedup();
        assert_eq!(names.len(), f.len());
    }
}
