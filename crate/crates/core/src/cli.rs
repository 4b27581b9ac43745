//! Command-line front end: fan files, subcommands and report rendering.
//!
//! Fan files are JSON documents
//! `{"name": ..., "rank": n, "rays": [[...], ...], "max_cones": [[i, ...], ...]}`.
//! Every command produces a [`Report`] rendered either as text or as JSON
//! with sorted keys, so re-rendering parsed output is byte-identical.
//!
//! Exit codes: 0 on success, 1 for invalid fans and other domain failures,
//! 2 for bad arguments and unparsable input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{
    theta_homogeneous_space, theta_toric, Certificate, CurveKind, SpaceDeclaration, SpaceType,
    Tri, Verdict,
};
use crate::cone::{hilbert_basis_with_limit, RationalCone, DEFAULT_RANK_LIMIT};
use crate::cox::{cox_presentation, divisor_class_group};
use crate::error::{Error, Result};
use crate::fan::{
    degenerate_split, detect_projective_product, global_functions_cone, is_complete,
    is_smooth_fan, orbit_inventory, quasi_affine_envelope, smooth_locus_subfan, Fan,
};
use crate::lattice::IntVector;
use crate::oracle::{brute_dual_equivalence, brute_hilbert_basis, brute_surface_iso_search};
use crate::surfaces::{hypersurface_family, surface_report, surfaces_isomorphic, SurfaceForm};

/// Environment variable capping the rank of Hilbert-basis computations.
pub const RANK_LIMIT_VAR: &str = "TORITRANS_RANK_LIMIT";

/// An integer in a fan file: a JSON number, or a decimal string for values
/// beyond 64 bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileInt(pub BigInt);

impl<'de> Deserialize<'de> for FileInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Signed(v) => Ok(FileInt(v.into())),
            Raw::Unsigned(v) => Ok(FileInt(v.into())),
            Raw::Text(s) => s
                .trim()
                .parse()
                .map(FileInt)
                .map_err(|_| serde::de::Error::custom(format!("`{s}` is not an integer"))),
        }
    }
}

impl Serialize for FileInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::lattice::serialize_int(&self.0, s)
    }
}

/// The on-disk form of a fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub rays: Vec<Vec<FileInt>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanDocument {
    /// Builds the fan. Non-primitive rays are normalized and reported in the
    /// returned warnings.
    pub fn to_fan(&self) -> Result<(Fan, Vec<String>)> {
        if self.rank == 0 {
            return Err(Error::Schema("rank must be positive".into()));
        }
        let mut warnings = Vec::new();
        let mut rays = Vec::with_capacity(self.rays.len());
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.rank {
                return Err(Error::Schema(format!(
                    "rays[{i}] has {} coordinates but rank is {}",
                    r.len(),
                    self.rank
                )));
            }
            let v = IntVector::new(r.iter().map(|c| c.0.clone()).collect());
            if !v.is_zero() && !v.is_primitive() {
                let p = v.div_exact(&v.content());
                warnings.push(format!("rays[{i}] = {v} is not primitive; using {p}"));
            }
            rays.push(v);
        }
        let fan = Fan::new(self.rank, rays, self.max_cones.clone())?;
        Ok((fan, warnings))
    }

    pub fn from_fan(fan: &Fan, name: Option<String>) -> FanDocument {
        FanDocument {
            name,
            rank: fan.rank(),
            rays: fan
                .rays()
                .iter()
                .map(|r| r.coords().iter().cloned().map(FileInt).collect())
                .collect(),
            max_cones: fan.max_cones().to_vec(),
        }
    }
}

/// Parses a fan file; syntax errors carry the line and column.
pub fn parse_fan_file(text: &str) -> Result<FanDocument> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        match e.classify() {
            serde_json::error::Category::Data => Error::Schema(msg),
            _ => Error::Parse(msg),
        }
    })
}

/// Parses `x,y;x,y;...` into the cone those vectors generate.
pub fn parse_cone_arg(text: &str) -> Result<RationalCone> {
    let mut gens: Vec<IntVector> = Vec::new();
    for (i, part) in text.split(';').enumerate() {
        let coords: Vec<BigInt> = part
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("generator {i}: `{}` is not an integer", c.trim())))
            })
            .collect::<Result<_>>()?;
        if let Some(first) = gens.first() {
            if first.dim() != coords.len() {
                return Err(Error::Parse(format!(
                    "generator {i} has {} coordinates, expected {}",
                    coords.len(),
                    first.dim()
                )));
            }
        }
        gens.push(IntVector::new(coords));
    }
    let rank = gens[0].dim();
    RationalCone::from_generators(rank, &gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

/// The result of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub summary: Vec<String>,
    pub results: Value,
    pub certificates: Vec<Value>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            summary: Vec::new(),
            results: Value::Object(Default::default()),
            certificates: Vec::new(),
            warnings: Vec::new(),
            error: None,
        }
    }

    fn line(&mut self, text: impl Into<String>) {
        self.summary.push(text.into());
    }

    fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.results
            .as_object_mut()
            .expect("results is an object")
            .insert(key.to_string(), v);
    }

    fn add_certificates(&mut self, verdict: &Verdict) {
        self.add_scoped(verdict, "X");
    }

    fn add_scoped(&mut self, verdict: &Verdict, scope: &str) {
        for c in &verdict.certificates {
            let mut v = certificate_value(c);
            v["scope"] = Value::from(scope);
            self.certificates.push(v);
        }
        if let Some(reg) = &verdict.smooth_locus {
            self.add_scoped(reg, "X_reg");
        }
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.summary {
            let _ = writeln!(out, "{line}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        }
        if !self.certificates.is_empty() {
            let _ = writeln!(out, "certificates:");
            for c in &self.certificates {
                let _ = writeln!(
                    out,
                    "  - {}: {} [{}] -> [{}, {}]",
                    c["scope"].as_str().unwrap_or("X"),
                    c["fact"].as_str().unwrap_or_default(),
                    c["citation"].as_str().unwrap_or_default(),
                    c["lower"].as_str().unwrap_or_default(),
                    c["upper"].as_str().unwrap_or_default(),
                );
            }
        }
        out
    }
}

fn certificate_value(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificates serialize")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Hilbert,
    Dual,
    Iso,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TypeArg {
    First,
    Second,
    Unknown,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TriArg {
    Yes,
    No,
    Unknown,
}

impl From<TriArg> for Tri {
    fn from(t: TriArg) -> Tri {
        match t {
            TriArg::Yes => Tri::Yes,
            TriArg::No => Tri::No,
            TriArg::Unknown => Tri::Unknown,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum CurveArg {
    AffineLine,
    PuncturedLine,
    ProjectiveLine,
}

#[derive(Parser, Debug)]
#[command(
    name = "toritrans",
    version,
    about = "Exact toric geometry and transitivity degrees of automorphism groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fan axioms.
    Validate { file: PathBuf },
    /// Run the full pipeline on a fan.
    Analyze { file: PathBuf },
    /// Transitivity degree of the toric variety of a fan.
    Theta { file: PathBuf },
    /// Dual of a cone given as `x,y;x,y;...`.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
    },
    /// Hilbert basis of the lattice points of a cone.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
        /// Take the Hilbert basis of the dual cone instead.
        #[arg(long)]
        dual: bool,
    },
    /// Class group and quotient presentation.
    Cox { file: PathBuf },
    /// Torus orbits and their dimensions.
    Orbits { file: PathBuf },
    /// Report on the surface of Cone((1,0),(a,b)).
    Surface {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: BigInt,
    },
    /// Decide whether two surface normal forms are isomorphic.
    IsoSurface {
        a: BigInt,
        b: BigInt,
        a2: BigInt,
        b2: BigInt,
    },
    /// The hypersurface x_{n+1}^b = x_1 ... x_n.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: i64,
    },
    /// Transitivity degree of a declared homogeneous space G/H.
    Space {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        quasi_affine: bool,
        #[arg(long = "type", value_enum, default_value_t = TypeArg::Unknown)]
        space_type: TypeArg,
        #[arg(long, value_enum, default_value_t = TriArg::Unknown)]
        functions: TriArg,
        #[arg(long, value_enum, default_value_t = TriArg::Unknown)]
        epimorphic: TriArg,
        #[arg(long, value_enum, default_value_t = TriArg::Unknown)]
        complete: TriArg,
        #[arg(long, value_enum)]
        curve: Option<CurveArg>,
    },
    /// Re-check the exact algorithms against brute-force enumeration.
    Verify {
        #[arg(value_enum, default_value_t = VerifyKind::All)]
        kind: VerifyKind,
        /// Largest b among the normal forms checked.
        #[arg(long, default_value_t = 8)]
        max_b: i64,
    },
}

/// Exit code, stdout and stderr of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DegenerateInput(_) => "degenerate_input",
        Error::UnsupportedCone(_) => "unsupported_cone",
        Error::UnsupportedRank { .. } => "unsupported_rank",
        Error::RankMismatch { .. } => "rank_mismatch",
        Error::InvalidFan(_) => "invalid_fan",
        Error::DegenerateFan => "degenerate_fan",
        Error::InvalidSurfaceForm { .. } => "invalid_surface_form",
        Error::InconsistentDeclaration(_) => "inconsistent_declaration",
        Error::Parse(_) => "parse",
        Error::Schema(_) => "schema",
    }
}

/// 2 for input that could not be read, 1 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Schema(_) => 2,
        _ => 1,
    }
}

fn rank_limit() -> Result<usize> {
    match std::env::var(RANK_LIMIT_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{RANK_LIMIT_VAR}=`{s}` is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_RANK_LIMIT),
    }
}

fn load_fan(path: &Path, report: &mut Report) -> Result<Fan> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_fan_file(&text)?;
    let (fan, warnings) = doc.to_fan()?;
    if let Some(name) = &doc.name {
        report.set("name", name);
    }
    report.warnings.extend(warnings);
    Ok(fan)
}

fn require_valid(fan: &Fan, report: &mut Report) -> Result<()> {
    if !fan.is_valid() {
        report.set("violations", fan.violations().iter().map(|v| v.to_string()).collect::<Vec<_>>());
        return Err(Error::InvalidFan(fan.violations().to_vec()));
    }
    Ok(())
}

fn fan_value(fan: &Fan) -> Value {
    json!({
        "rank": fan.rank(),
        "rays": fan.rays(),
        "max_cones": fan.max_cones(),
    })
}

fn verdict_line(label: &str, v: &Verdict) -> String {
    format!("{label}: {v}")
}

fn cmd_validate(fan: &Fan, report: &mut Report) -> i32 {
    report.set("fan", fan_value(fan));
    let violations: Vec<String> = fan.violations().iter().map(|v| v.to_string()).collect();
    report.set("valid", violations.is_empty());
    report.set("violations", &violations);
    if violations.is_empty() {
        report.line("valid fan");
        0
    } else {
        report.line(format!("invalid fan: {} violation(s)", violations.len()));
        for v in &violations {
            report.line(format!("  {v}"));
        }
        1
    }
}

fn cmd_theta(fan: &Fan, report: &mut Report) -> Result<()> {
    require_valid(fan, report)?;
    let verdict = theta_toric(fan)?;
    report.line(verdict_line("θ(X)", &verdict));
    if let Some(reg) = &verdict.smooth_locus {
        report.line(verdict_line("θ(X_reg)", reg));
    }
    report.add_certificates(&verdict);
    report.set("verdict", &verdict);
    Ok(())
}

fn cmd_analyze(fan: &Fan, report: &mut Report) -> Result<()> {
    report.set("fan", fan_value(fan));
    require_valid(fan, report)?;
    report.set("valid", true);
    let complete = is_complete(fan)?;
    let (quasi_affine, envelope) = quasi_affine_envelope(fan)?;
    let (k, reduced) = degenerate_split(fan);
    let smooth = is_smooth_fan(fan);
    let product = detect_projective_product(fan);
    let functions = global_functions_cone(fan);
    report.line(format!("rank {}, {} rays, {} maximal cones", fan.rank(), fan.rays().len(), fan.max_cones().len()));
    report.line(format!("complete: {complete}"));
    report.line(format!("quasi-affine: {quasi_affine}"));
    report.line(format!("torus factor rank: {k}"));
    report.line(format!("smooth: {smooth}"));
    if let Some(dims) = &product {
        report.line(format!("product of projective spaces with dimensions {dims:?}"));
    }
    report.line(format!("K[X] = K: {}", functions.is_zero()));
    report.set("complete", complete);
    report.set("quasi_affine", quasi_affine);
    report.set("envelope", envelope.as_ref());
    report.set("torus_factor_rank", k);
    report.set("split_fan", fan_value(&reduced));
    report.set("smooth", smooth);
    report.set("projective_product", &product);
    report.set("global_functions_cone", &functions);
    if k == 0 {
        let cl = divisor_class_group(fan)?;
        report.line(format!("Cl(X) ≅ {cl}"));
        report.set("class_group", &cl);
    } else {
        report.line("Cl(X): computed on the split fan only");
        report.set("class_group", divisor_class_group(&reduced).ok());
    }
    if !smooth {
        let reg = smooth_locus_subfan(fan);
        report.set("smooth_locus", fan_value(&reg));
    }
    let verdict = theta_toric(fan)?;
    report.line(verdict_line("θ(X)", &verdict));
    if let Some(reg) = &verdict.smooth_locus {
        report.line(verdict_line("θ(X_reg)", reg));
    }
    report.add_certificates(&verdict);
    report.set("verdict", &verdict);
    Ok(())
}

fn cmd_cox(fan: &Fan, report: &mut Report) -> Result<()> {
    require_valid(fan, report)?;
    let cox = cox_presentation(fan)?;
    report.line(format!("Cl(X) ≅ {}", cox.class_group));
    for v in &cox.variables {
        report.line(format!("deg {} = {} (ray {})", v.name, v.degree, v.ray));
    }
    report.line(cox.summary.clone());
    report.set("cox", &cox);
    Ok(())
}

fn cmd_orbits(fan: &Fan, report: &mut Report) -> Result<()> {
    require_valid(fan, report)?;
    let inventory = orbit_inventory(fan);
    let mut entries = Vec::new();
    for (cone, dim) in &inventory {
        report.line(format!("{cone}: orbit dimension {dim}"));
        entries.push(json!({ "cone": cone.rays(), "orbit_dimension": dim }));
    }
    report.set("orbits", entries);
    Ok(())
}

fn cmd_dual(text: &str, report: &mut Report) -> Result<()> {
    let sigma = parse_cone_arg(text)?;
    let dual = sigma.dual();
    report.line(format!("σ = {sigma}"));
    report.line(format!("σ∨ = {dual}"));
    report.set("cone", &sigma);
    report.set("dual", &dual);
    Ok(())
}

fn cmd_hilbert(text: &str, take_dual: bool, report: &mut Report) -> Result<()> {
    let mut sigma = parse_cone_arg(text)?;
    if take_dual {
        sigma = sigma.dual();
    }
    let basis = hilbert_basis_with_limit(&sigma, rank_limit()?)?;
    report.line(format!("cone {sigma}"));
    report.line(format!(
        "Hilbert basis ({} elements): {}",
        basis.len(),
        basis.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    ));
    report.set("cone", &sigma);
    report.set("hilbert_basis", &basis);
    Ok(())
}

fn cmd_surface(a: BigInt, b: BigInt, report: &mut Report) -> Result<()> {
    let form = SurfaceForm::new(a, b)?;
    let r = surface_report(&form)?;
    report.line(format!("{} = affine toric surface of Cone((1,0),({},{}))", form, form.a(), form.b()));
    report.line(format!(
        "coordinate ring generators: {}",
        r.hilbert_basis.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    ));
    match &r.quotient {
        Some(q) => report.line(format!("quotient A²/C_{}: {}", q.order, q.action)),
        None => report.line("smooth: X ≅ A²"),
    }
    match &r.hypersurface {
        Some(h) => report.line(format!("hypersurface {}: {} + {} = {}·{}", h.equation, h.x, h.y, h.degree, h.z)),
        None => report.line("not a hypersurface of A³ of this binomial shape"),
    }
    report.line(verdict_line("θ(X)", &r.theta));
    report.line(verdict_line("θ(X_reg)", &r.theta_smooth_locus));
    report.line(format!("X_reg is a homogeneous space: {}", r.smooth_locus_homogeneous_space));
    report.add_certificates(&r.theta);
    report.set("surface", &r);
    Ok(())
}

fn cmd_iso(a: BigInt, b: BigInt, a2: BigInt, b2: BigInt, report: &mut Report) -> Result<()> {
    let s = SurfaceForm::new(a, b)?;
    let t = SurfaceForm::new(a2, b2)?;
    let iso = surfaces_isomorphic(&s, &t);
    report.line(format!("{s} ≅ {t}: {iso}"));
    report.set("first", &s);
    report.set("second", &t);
    report.set("isomorphic", iso);
    Ok(())
}

fn cmd_family(n: usize, b: i64, report: &mut Report) -> Result<()> {
    let r = hypersurface_family(n, b, rank_limit()?)?;
    report.line(format!("X({n},{b}): {}", r.equation));
    report.line(format!(
        "semigroup generators ({}): {}",
        r.generators.len(),
        r.generators.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    ));
    match r.apex {
        Some(i) => report.line(format!("{b}·{} = sum of the other generators", r.generators[i])),
        None => report.line("no generator satisfies the hypersurface relation"),
    }
    report.line(verdict_line("θ(X_reg)", &r.theta_smooth_locus));
    report.line(format!(
        "X_reg is a homogeneous space: {}",
        serde_json::to_value(r.smooth_locus_homogeneous_space)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default()
    ));
    report.add_scoped(&r.theta_smooth_locus, "X_reg");
    report.set("family", &r);
    Ok(())
}

fn cmd_space(d: SpaceDeclaration, report: &mut Report) -> Result<()> {
    let verdict = theta_homogeneous_space(&d)?;
    report.line(verdict_line("θ(G/H)", &verdict));
    if let Some(c) = verdict.conjectural {
        report.line(format!("conjecturally θ = {c}"));
    }
    report.add_certificates(&verdict);
    report.set("declaration", &d);
    report.set("verdict", &verdict);
    Ok(())
}

/// Runs the oracle comparisons; returns the number of disagreements.
fn cmd_verify(kind: VerifyKind, max_b: i64, report: &mut Report) -> Result<usize> {
    let forms: Vec<SurfaceForm> = (1..=max_b)
        .flat_map(|b| (0..b).filter_map(move |a| SurfaceForm::new(a, b).ok()))
        .collect();
    let mut failures = Vec::new();
    let mut checked = serde_json::Map::new();
    if matches!(kind, VerifyKind::Hilbert | VerifyKind::All) {
        let mut count = 0;
        for f in &forms {
            for sigma in [f.cone(), f.cone().dual()] {
                let bound = f.b().try_into().unwrap_or(i64::MAX).max(1);
                let exact = hilbert_basis_with_limit(&sigma, DEFAULT_RANK_LIMIT)?;
                let brute = brute_hilbert_basis(&sigma, bound)?;
                count += 1;
                if exact != brute {
                    failures.push(format!("hilbert basis of {sigma}"));
                }
            }
        }
        checked.insert("hilbert".into(), count.into());
        report.line(format!("hilbert: {count} cones compared with enumeration"));
    }
    if matches!(kind, VerifyKind::Dual | VerifyKind::All) {
        let mut count = 0;
        for f in &forms {
            let sigma = f.cone();
            count += 1;
            if !brute_dual_equivalence(&sigma, &sigma.dual(), 6) {
                failures.push(format!("dual of {sigma}"));
            }
        }
        checked.insert("dual".into(), count.into());
        report.line(format!("dual: {count} cones checked pointwise"));
    }
    if matches!(kind, VerifyKind::Iso | VerifyKind::All) {
        let mut count = 0;
        for s in &forms {
            for t in &forms {
                let witness = brute_surface_iso_search(s, t, max_b.max(1));
                count += 1;
                if surfaces_isomorphic(s, t) != witness.is_some() {
                    failures.push(format!("isomorphism {s} vs {t}"));
                }
            }
        }
        checked.insert("iso".into(), count.into());
        report.line(format!("iso: {count} pairs compared with matrix search"));
    }
    report.line(format!("disagreements: {}", failures.len()));
    report.set("checked", Value::Object(checked));
    report.set("failures", &failures);
    Ok(failures.len())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Analyze { .. } => "analyze",
        Command::Theta { .. } => "theta",
        Command::Dual { .. } => "dual",
        Command::Hilbert { .. } => "hilbert",
        Command::Cox { .. } => "cox",
        Command::Orbits { .. } => "orbits",
        Command::Surface { .. } => "surface",
        Command::IsoSurface { .. } => "iso-surface",
        Command::Family { .. } => "family",
        Command::Space { .. } => "space",
        Command::Verify { .. } => "verify",
    }
}

fn execute(command: Command, report: &mut Report) -> Result<i32> {
    match command {
        Command::Validate { file } => {
            let fan = load_fan(&file, report)?;
            Ok(cmd_validate(&fan, report))
        }
        Command::Analyze { file } => {
            let fan = load_fan(&file, report)?;
            cmd_analyze(&fan, report).map(|_| 0)
        }
        Command::Theta { file } => {
            let fan = load_fan(&file, report)?;
            cmd_theta(&fan, report).map(|_| 0)
        }
        Command::Cox { file } => {
            let fan = load_fan(&file, report)?;
            cmd_cox(&fan, report).map(|_| 0)
        }
        Command::Orbits { file } => {
            let fan = load_fan(&file, report)?;
            cmd_orbits(&fan, report).map(|_| 0)
        }
        Command::Dual { cone } => cmd_dual(&cone, report).map(|_| 0),
        Command::Hilbert { cone, dual } => cmd_hilbert(&cone, dual, report).map(|_| 0),
        Command::Surface { a, b } => cmd_surface(a, b, report).map(|_| 0),
        Command::IsoSurface { a, b, a2, b2 } => cmd_iso(a, b, a2, b2, report).map(|_| 0),
        Command::Family { n, b } => cmd_family(n, b, report).map(|_| 0),
        Command::Space {
            dim,
            quasi_affine,
            space_type,
            functions,
            epimorphic,
            complete,
            curve,
        } => {
            let d = SpaceDeclaration {
                dim,
                quasi_affine,
                space_type: match space_type {
                    TypeArg::First => SpaceType::First,
                    TypeArg::Second => SpaceType::Second,
                    TypeArg::Unknown => SpaceType::Unknown,
                },
                has_nonconstant_functions: functions.into(),
                epimorphic: epimorphic.into(),
                complete: complete.into(),
                curve: curve.map(|c| match c {
                    CurveArg::AffineLine => CurveKind::AffineLine,
                    CurveArg::PuncturedLine => CurveKind::PuncturedLine,
                    CurveArg::ProjectiveLine => CurveKind::ProjectiveLine,
                }),
            };
            cmd_space(d, report).map(|_| 0)
        }
        Command::Verify { kind, max_b } => {
            cmd_verify(kind, max_b, report).map(|failures| i32::from(failures > 0))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_command<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut report = Report::new(command_name(&cli.command));
    let code = match execute(cli.command, &mut report) {
        Ok(code) => code,
        Err(e) => {
            report.error = Some(ErrorInfo {
                kind: error_kind(&e).into(),
                message: e.to_string(),
            });
            exit_code(&e)
        }
    };
    let mut stderr = String::new();
    for w in &report.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let stdout = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => {
            if let Some(e) = &report.error {
                let _ = writeln!(stderr, "error: {}", e.message);
            }
            let mut r = report.clone();
            r.error = None;
            r.to_text()
        }
    };
    Outcome { code, stdout, stderr }
}

/// Entry point for the binary: prints the outcome and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = run_command(args);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.code
}
