//! Command-line front end for `p1split`: reads bundles from JSON documents
//! and writes deterministic JSON reports.

pub mod expr;
pub mod format;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use p1split::arith::{Field, PrimeField, Rationals};
use p1split::sections::{global_sections, oracle_twist_range, SectionCache};
use p1split::{Divisor, Germ, Point, VectorBundle};
use serde_json::{json, Map, Value};

use crate::format::{certificate_json, AnyBundle, CertificateDoc, FieldSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed document: {0}")]
    Syntax(serde_json::Error),
    #[error("bad expression at position {pos}: {msg}")]
    Expression { pos: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Domain(#[from] p1split::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Domain(p1split::Error::Internal(_) | p1split::Error::CriterionFailed) => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "p1split",
    version,
    about = "Splitting types of vector bundles on the projective line"
)]
struct Cli {
    /// Indented, human-readable output instead of compact JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Include wall-clock time in the report (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Splitting type with a verified Birkhoff certificate.
    Split {
        file: PathBuf,
        /// Also list the greedy basis germs and their divisors.
        #[arg(long)]
        basis: bool,
    },
    /// Dimension of the space of global sections, of one twist or a table.
    H0 {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        twist: Option<i64>,
    },
    /// Divisor of a germ given as `f1;f2;...`.
    Divisor {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        germ: String,
        /// Factor clusters into irreducibles (prime fields only).
        #[arg(long)]
        full_split: bool,
    },
    /// Check a certificate (bare, or inside a split report) against a bundle.
    Verify {
        file: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Random bundle with known splitting type.
    Gen {
        #[arg(long = "type", value_delimiter = ',', allow_negative_numbers = true, required = true)]
        degrees: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        ops: usize,
        /// `rational` or `prime:<p>`.
        #[arg(long, default_value = "rational")]
        field: String,
        /// Number of instances, with seeds seed, seed+1, ...
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Run the two cancellation-repair steps on germs at a point.
    RepairDemo {
        file: PathBuf,
        /// `inf` or a squarefree polynomial in t.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// A germ `f1;f2;...`; repeat for each germ.
        #[arg(long = "germ", required = true, allow_hyphen_values = true)]
        germs: Vec<String>,
    },
}

macro_rules! with_bundle {
    ($any:expr, $e:ident => $body:expr) => {
        match $any {
            AnyBundle::Prime($e) => $body,
            AnyBundle::Rational($e) => $body,
        }
    };
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let result = execute(&cli.command, echo);
    let (mut report, code) = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    if cli.timing {
        if let Value::Object(m) = &mut report {
            m.insert("timing_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        }
    }
    let text = if cli.pretty {
        serde_json::to_string_pretty(&report)
    } else {
        serde_json::to_string(&report)
    }
    .expect("serializable");
    let _ = writeln!(out, "{text}");
    code
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<AnyBundle, CliError> {
    format::parse_bundle(&read(path)?)
}

fn header(echo: Vec<String>, spec: FieldSpec, rank: usize, c1: i64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(echo));
    m.insert("field".into(), spec.to_json());
    m.insert("rank".into(), json!(rank));
    m.insert("c1".into(), json!(c1));
    m
}

fn bundle_header<F: Field>(echo: Vec<String>, spec: FieldSpec, e: &VectorBundle<F>) -> Map<String, Value> {
    header(echo, spec, e.rank(), e.c1())
}

/// Clusters are listed as stored: callers pass `canonical()` or a full split.
pub fn divisor_json<F: Field>(d: &Divisor<F>) -> Value {
    let mut items: Vec<Value> = d
        .clusters()
        .map(|(c, m)| json!({ "cluster": c.dense_string(), "mult": m }))
        .collect();
    items.push(json!({ "infinity": d.at_infinity() }));
    Value::Array(items)
}

pub fn germ_json<F: Field>(g: &Germ<F>) -> Value {
    Value::Array(g.coords().iter().map(|c| json!(c.render("t"))).collect())
}

fn execute(command: &Command, echo: Vec<String>) -> Result<(Value, i32), CliError> {
    match command {
        Command::Split { file, basis } => {
            let any = load(file)?;
            let spec = any.field_spec();
            with_bundle!(&any, e => cmd_split(echo, spec, e, *basis))
        }
        Command::H0 { file, twist } => {
            let any = load(file)?;
            let spec = any.field_spec();
            with_bundle!(&any, e => Ok((cmd_h0(echo, spec, e, *twist), 0)))
        }
        Command::Divisor { file, germ, full_split } => {
            let any = load(file)?;
            let spec = any.field_spec();
            match &any {
                AnyBundle::Prime(e) => {
                    let g = expr::parse_germ(e.field(), germ)?;
                    let d = e.germ_divisor(&g)?;
                    let d = if *full_split { d.full_split()? } else { d.canonical() };
                    Ok((divisor_report(echo, spec, e, &g, &d), 0))
                }
                AnyBundle::Rational(e) => {
                    if *full_split {
                        return Err(CliError::Usage("--full-split needs a prime field".into()));
                    }
                    let g = expr::parse_germ(e.field(), germ)?;
                    let d = e.germ_divisor(&g)?.canonical();
                    Ok((divisor_report(echo, spec, e, &g, &d), 0))
                }
            }
        }
        Command::Verify { file, certificate } => {
            let any = load(file)?;
            let spec = any.field_spec();
            let doc = CertificateDoc::from_text(&read(certificate)?)?;
            with_bundle!(&any, e => cmd_verify(echo, spec, e, &doc))
        }
        Command::Gen {
            degrees,
            seed,
            ops,
            field,
            count,
        } => {
            let spec = FieldSpec::from_flag(field)?;
            if *count == 0 {
                return Err(CliError::Usage("--count must be at least 1".into()));
            }
            let instances = (0..*count as u64)
                .map(|i| match spec {
                    FieldSpec::Prime { p } => {
                        gen_one(&echo, spec, &PrimeField::new(p)?, degrees, seed.wrapping_add(i), *ops)
                    }
                    FieldSpec::Rational => gen_one(&echo, spec, &Rationals, degrees, seed.wrapping_add(i), *ops),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let report = if *count == 1 {
                instances.into_iter().next().unwrap()
            } else {
                Value::Array(instances)
            };
            Ok((report, 0))
        }
        Command::RepairDemo { file, point, germs } => {
            let any = load(file)?;
            let spec = any.field_spec();
            with_bundle!(&any, e => cmd_repair(echo, spec, e, point, germs))
        }
    }
}

fn cmd_split<F: Field>(
    echo: Vec<String>,
    spec: FieldSpec,
    e: &VectorBundle<F>,
    with_basis: bool,
) -> Result<(Value, i32), CliError> {
    let s = p1split::split(e)?;
    let verdict = p1split::verify_certificate(e, &s.certificate);
    let mut m = bundle_header(echo, spec, e);
    m.insert("splitting_type".into(), json!(s.splitting_type));
    m.insert("certificate".into(), certificate_json(&s.certificate));
    m.insert("verified".into(), json!(verdict.is_valid()));
    if with_basis {
        let basis: Vec<Value> = s
            .basis
            .germs
            .iter()
            .zip(&s.basis.divisors)
            .map(
                |(g, d)| json!({ "germ": germ_json(g), "degree": d.degree(), "divisor": divisor_json(&d.canonical()) }),
            )
            .collect();
        m.insert("basis".into(), Value::Array(basis));
    }
    if !verdict.is_valid() {
        return Err(CliError::Domain(p1split::Error::Internal(format!(
            "certificate rejected: {:?}",
            verdict.failures
        ))));
    }
    Ok((Value::Object(m), 0))
}

fn cmd_h0<F: Field>(echo: Vec<String>, spec: FieldSpec, e: &VectorBundle<F>, twist: Option<i64>) -> Value {
    let mut m = bundle_header(echo, spec, e);
    match twist {
        Some(k) => {
            m.insert("twist".into(), json!(k));
            m.insert("h0".into(), json!(global_sections(&e.twist(k)).dimension()));
        }
        None => {
            let (lo, hi) = oracle_twist_range(e);
            let mut cache = SectionCache::new(e);
            let table: Vec<Value> = (lo..=hi).map(|k| json!({ "twist": k, "h0": cache.h0(k) })).collect();
            m.insert("h0_table".into(), Value::Array(table));
        }
    }
    Value::Object(m)
}

fn divisor_report<F: Field>(
    echo: Vec<String>,
    spec: FieldSpec,
    e: &VectorBundle<F>,
    g: &Germ<F>,
    d: &Divisor<F>,
) -> Value {
    let mut m = bundle_header(echo, spec, e);
    m.insert("germ".into(), germ_json(g));
    m.insert("divisor".into(), divisor_json(d));
    m.insert("degree".into(), json!(d.degree()));
    Value::Object(m)
}

fn cmd_verify<F: Field>(
    echo: Vec<String>,
    spec: FieldSpec,
    e: &VectorBundle<F>,
    doc: &CertificateDoc,
) -> Result<(Value, i32), CliError> {
    let cert = doc.build(e.field())?;
    let verdict = p1split::verify_certificate(e, &cert);
    let mut m = bundle_header(echo, spec, e);
    m.insert("verified".into(), json!(verdict.is_valid()));
    m.insert(
        "failures".into(),
        json!(verdict.failures.iter().map(|f| f.code()).collect::<Vec<_>>()),
    );
    Ok((Value::Object(m), if verdict.is_valid() { 0 } else { 1 }))
}

fn gen_one<F: Field>(
    echo: &[String],
    spec: FieldSpec,
    field: &F,
    degrees: &[i64],
    seed: u64,
    ops: usize,
) -> Result<Value, CliError> {
    let (e, truth) = p1split::random_bundle(seed, field, degrees.len(), degrees, ops)?;
    let mut v = format::bundle_json(spec, &e);
    let m = v.as_object_mut().unwrap();
    m.insert("ground_truth".into(), json!(truth));
    m.insert("seed".into(), json!(seed));
    m.insert("ops".into(), json!(ops));
    m.insert("command".into(), json!(echo));
    Ok(v)
}

fn cmd_repair<F: Field>(
    echo: Vec<String>,
    spec: FieldSpec,
    e: &VectorBundle<F>,
    point: &str,
    germs: &[String],
) -> Result<(Value, i32), CliError> {
    let p: Point<F> = expr::parse_point(e.field(), point)?;
    let germs = germs
        .iter()
        .map(|g| expr::parse_germ(e.field(), g))
        .collect::<Result<Vec<_>, _>>()?;
    let orders = germs.iter().map(|g| e.order_at(g, &p)).collect::<Result<Vec<_>, _>>()?;
    let j = p1split::repair_filter(e, &germs, &p)?;
    let subset: Vec<Germ<F>> = j.iter().map(|&i| germs[i].clone()).collect();
    let out = p1split::repair_boost(e, &subset, &p)?;
    let new_div = e.germ_divisor(&out.new_germ)?;
    let mut m = bundle_header(echo, spec, e);
    m.insert("point".into(), json!(p.to_string()));
    m.insert("germs".into(), Value::Array(germs.iter().map(germ_json).collect()));
    m.insert("orders".into(), json!(orders));
    m.insert("filter".into(), json!({ "j": j }));
    m.insert(
        "boost".into(),
        json!({
            "pivot": j[out.pivot],
            "auxiliary": out.auxiliary.to_string(),
            "coefficients": out.coefficients.iter().map(|f| f.render("t")).collect::<Vec<_>>(),
            "new_germ": germ_json(&out.new_germ),
            "divisor": divisor_json(&new_div.canonical()),
            "old_degree": out.old_degree,
            "new_degree": out.new_degree,
        }),
    );
    Ok((Value::Object(m), 0))
}
