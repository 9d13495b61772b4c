//! The `nodal` command line.
//!
//! Exit codes: 0 on success, 2 when a validation check fails, 1 for usage
//! and input errors. Reports go to standard output; progress goes to the
//! error stream.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arnold::{asymptotic_check, BoundsTable, CSV_HEADER};
use crate::catalog::{parse_entry, Catalog, CheckOutcome, Entry, Loaded, Object};
use crate::chmutov::{chmutov_nodes, verify_all, NodalVariety, NodeSet, SignPattern, VarietyKind};
use crate::defect::{betti_report, defect_exact, defect_modular, DefectReport};
use crate::exactfield::json::format_rational;
use crate::exactfield::{find_inert_prime, is_inert, MinimalPolynomial, NumberFieldElement};
use crate::polycheb::json::PolynomialJson;
use crate::polycheb::{cheb_half, cheb_sum_factors, chebyshev, CosineField, Sign};
use crate::reslattice::{count_projective, nullhomologous_columns, relations, CountOptions, IntersectionMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "nodal", version, about = "Defects, small resolutions and node bounds for nodal threefolds")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(id = "variety", required = true, multiple = true)]
pub struct VarietyArgs {
    /// Catalog entry of kind `variety`.
    #[arg(long, conflicts_with_all = ["file", "kind"])]
    pub catalog: Option<String>,
    /// Catalog-format JSON file describing a variety.
    #[arg(long, conflicts_with = "kind")]
    pub file: Option<PathBuf>,
    /// Chmutov variety: `hypersurface-P4` or `double-solid-P3`.
    #[arg(long, requires_all = ["degree", "signs"])]
    pub kind: Option<VarietyKind>,
    #[arg(long, short = 'n')]
    pub degree: Option<u32>,
    /// Chebyshev signs, e.g. `++--` or `++-;+1`.
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
}

#[derive(Debug, Args)]
#[group(id = "lattice", required = true, multiple = false)]
pub struct LatticeArgs {
    /// Catalog entry with intersection data.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Intersection matrix JSON, or a catalog-format entry file.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate and verify the nodes of a variety.
    Nodes {
        #[command(flatten)]
        input: VarietyArgs,
    },
    /// Defect, exactly and/or modulo an inert prime.
    Defect {
        #[command(flatten)]
        input: VarietyArgs,
        #[arg(long)]
        prime: Option<u64>,
        /// Skip exact elimination; requires --prime.
        #[arg(long, requires = "prime")]
        modular_only: bool,
        /// Report wall-clock times.
        #[arg(long)]
        timing: bool,
    },
    /// Count projective small resolutions.
    Count {
        #[command(flatten)]
        input: LatticeArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        workers: Option<u64>,
        #[arg(long, default_value_t = crate::reslattice::DEFAULT_CAP)]
        cap: usize,
        /// List one ample class per projective flip.
        #[arg(long)]
        witnesses: bool,
    },
    /// Basis of the relations among the exceptional curves.
    Relations {
        #[command(flatten)]
        input: LatticeArgs,
    },
    /// Betti numbers of the nodal variety and its resolutions.
    Betti {
        /// Catalog variety; s and d are computed.
        #[arg(long, conflicts_with_all = ["kind", "s", "d"])]
        catalog: Option<String>,
        #[arg(long, requires_all = ["degree", "s", "d"])]
        kind: Option<VarietyKind>,
        #[arg(long, short = 'n')]
        degree: Option<u32>,
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        /// Nodes blown up in the mixed resolution.
        #[arg(long, default_value_t = 0)]
        s1: i64,
    },
    /// Upper bounds for node counts.
    Arnold {
        /// Dimension of the ambient projective space.
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Degree or range `a..b` (inclusive).
        #[arg(long, default_value = "2..12")]
        d: String,
        /// Surfaces in P3 with the known lower bounds attached.
        #[arg(long)]
        mu3: bool,
        /// Slab volumes and asymptotic constants up to this dimension instead.
        #[arg(long, conflicts_with = "mu3")]
        asymptotic: Option<u32>,
    },
    /// Find or check primes at which a field stays a field.
    InertPrime {
        /// Minimal polynomial, low degree first: `-2,0,1` for x^2 - 2.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "cosine")]
        minpoly: Option<String>,
        /// Use the field of cos(pi/n).
        #[arg(long)]
        cosine: Option<u32>,
        #[arg(long)]
        check: Option<u64>,
        #[arg(long, default_value_t = 100)]
        start: u64,
        #[arg(long, default_value_t = 100_000)]
        cap: u64,
    },
    /// Chebyshev polynomials and their factorizations.
    Cheb {
        #[arg(short = 'n', long)]
        n: u32,
        /// F_n with T_n + 1 = 2^(n-1) F_n^2.
        #[arg(long, conflicts_with = "factors")]
        half: bool,
        /// Factors of T_n(x) + T_n(y) (`+`) or T_n(x) - T_n(y) (`-`).
        #[arg(long, allow_hyphen_values = true)]
        factors: Option<String>,
    },
    /// Inspect and check the bundled examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show { name: String },
    /// Recompute expected values; exits 2 if any differ.
    Check {
        #[arg(required_unless_present = "all")]
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
}

/// How a run ended, mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Validation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Validation { .. } | Error::DualityViolation(_) => Failure::Validation(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// What a subcommand prints in each format.
struct Report {
    json: Value,
    text: String,
    csv: String,
    /// Printed after the report; turns the exit code into 2.
    failed: Option<String>,
}

impl Report {
    fn new(json: Value, text: String, csv: String) -> Self {
        Report { json, text, csv, failed: None }
    }

    fn render(&self, format: Format) -> String {
        let mut out = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("JSON values serialize"),
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone(),
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            match report.failed {
                Some(msg) => {
                    let _ = writeln!(err, "validation failed: {msg}");
                    2
                }
                None => 0,
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Validation(msg)) => {
            let _ = writeln!(err, "validation failed: {msg}");
            2
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: &Cli, err: &mut dyn Write) -> std::result::Result<Report, Failure> {
    let catalog = Catalog::open()?;
    Ok(match &cli.command {
        Command::Nodes { input } => nodes(&catalog, input)?,
        Command::Defect { input, prime, modular_only, timing } => defect(&catalog, input, *prime, *modular_only, *timing, err)?,
        Command::Count { input, workers, cap, witnesses } => {
            let m = lattice(&catalog, input)?;
            let opts = CountOptions { workers: workers.map(|w| w as usize), cap: *cap, witnesses: *witnesses };
            let _ = writeln!(err, "checking {} sign flips", 1u64.checked_shl(m.s() as u32).unwrap_or(0));
            let r = count_projective(&m, &opts)?;
            let mut text = format!("s = {}, dim A = {}\nprojective: {} of {}\n", r.s, r.dim_a, r.projective_count, r.total);
            let mut csv = format!("s,dimA,total,projective_count\n{},{},{},{}\n", r.s, r.dim_a, r.total, r.projective_count);
            if let Some(ws) = &r.witnesses {
                csv.push_str("flip,lambda\n");
                for w in ws {
                    text.push_str(&format!("{}  {}\n", w.flip, w.lambda.join(" ")));
                    csv.push_str(&format!("{},{}\n", w.flip, w.lambda.join(" ")));
                }
            }
            Report::new(to_value(&r), text, csv)
        }
        Command::Relations { input } => {
            let m = lattice(&catalog, input)?;
            relations_report(&m)
        }
        Command::Betti { catalog: name, kind, degree, s, d, s1 } => {
            let (kind, n, s, d) = match name {
                Some(name) => {
                    let (v, nodes) = catalog_variety(&catalog.load(name)?)?;
                    let _ = writeln!(err, "computing the defect of {name}");
                    (v.kind, v.degree, nodes.len() as i64, defect_exact(&v, &nodes.nodes)?.defect as i64)
                }
                None => match (kind, degree, s, d) {
                    (Some(k), Some(n), Some(s), Some(d)) => (*k, *n, *s, *d),
                    _ => return Err(Failure::Usage("betti needs --catalog or all of --kind, --degree, --s, --d".into())),
                },
            };
            let r = betti_report(kind, n, s, d, *s1)?;
            let row = |name: &str, b: &crate::defect::BettiData| format!("{name},{},{},{},{}\n", b.b2, b.b3, b.b4, b.e);
            let text = format!(
                "{kind} of degree {n}, s = {s}, d = {d}\nsmall resolution: b2 = {}, b3 = {}, e = {}, h11 = {}, h21 = {}\n",
                r.small.b2,
                r.small.b3,
                r.small.e,
                r.h11,
                r.h21.map_or("-".into(), |h| h.to_string())
            );
            let csv = format!(
                "variety,b2,b3,b4,e\n{}{}{}{}",
                row("nodal", &r.nodal),
                row("small", &r.small),
                row("big", &r.big),
                row("mixed", &r.mixed)
            );
            Report::new(to_value(&r), text, csv)
        }
        Command::Arnold { n, d, mu3, asymptotic } => arnold(&catalog, *n, d, *mu3, *asymptotic)?,
        Command::InertPrime { minpoly, cosine, check, start, cap } => {
            let m = match (minpoly, cosine) {
                (Some(text), _) => MinimalPolynomial::new(
                    text.split(',')
                        .map(|c| c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`"))))
                        .collect::<Result<Vec<_>>>()?,
                )?,
                (None, Some(n)) => CosineField::for_degree(*n)?.minpoly().as_ref().clone(),
                (None, None) => return Err(Failure::Usage("inert-prime needs --minpoly or --cosine".into())),
            };
            let coeffs: Vec<String> = m.coeffs().iter().map(ToString::to_string).collect();
            match check {
                Some(p) => {
                    let inert = is_inert(&m, *p)?;
                    Report::new(
                        json!({"minpoly": m.to_string(), "coeffs": coeffs, "prime": p, "inert": inert}),
                        format!("{p} is {}inert for {m}\n", if inert { "" } else { "not " }),
                        format!("minpoly,prime,inert\n{m},{p},{inert}\n"),
                    )
                }
                None => {
                    let p = find_inert_prime(&m, *start, *cap)?;
                    Report::new(
                        json!({"minpoly": m.to_string(), "coeffs": coeffs, "prime": p, "inert": true}),
                        format!("{p}\n"),
                        format!("minpoly,prime,inert\n{m},{p},true\n"),
                    )
                }
            }
        }
        Command::Cheb { n, half, factors } => cheb(*n, *half, factors.as_deref())?,
        Command::Catalog { action } => catalog_command(&catalog, action, err)?,
    })
}

fn catalog_variety(l: &Loaded) -> Result<(NodalVariety, NodeSet)> {
    match &l.object {
        Object::Variety { variety, nodes, .. } => Ok((variety.clone(), nodes.clone())),
        _ => Err(Error::Invalid(format!("`{}` is a {}, not a variety", l.entry.name, l.entry.kind))),
    }
}

fn read_entry(path: &PathBuf) -> Result<Entry> {
    parse_entry(&std::fs::read_to_string(path)?, &path.display().to_string())
}

/// Loads an entry that is not part of the catalog, validating it the same way.
fn load_external(catalog: &Catalog, entry: Entry) -> Result<Loaded> {
    let mut cat = catalog.clone();
    let name = entry.name.clone();
    cat.insert(entry);
    cat.load(&name)
}

fn variety(catalog: &Catalog, a: &VarietyArgs) -> Result<(String, NodalVariety, NodeSet)> {
    if let Some(name) = &a.catalog {
        let (v, n) = catalog_variety(&catalog.load(name)?)?;
        return Ok((name.clone(), v, n));
    }
    if let Some(path) = &a.file {
        let l = load_external(catalog, read_entry(path)?)?;
        let (v, n) = catalog_variety(&l)?;
        return Ok((l.entry.name, v, n));
    }
    let (Some(kind), Some(degree), Some(signs)) = (a.kind, a.degree, &a.signs) else {
        return Err(Error::Invalid("give --catalog, --file, or --kind with --degree and --signs".into()));
    };
    let (v, nodes) = chmutov_nodes(kind, degree, &SignPattern::parse(signs)?)?;
    if let Some((i, st)) = verify_all(&v, &nodes.nodes, true)? {
        return Err(Error::Validation { entry: v.name.clone(), check: format!("node {} failed: {st:?}", i + 1) });
    }
    Ok((v.name.clone(), v, nodes))
}

fn lattice(catalog: &Catalog, a: &LatticeArgs) -> Result<IntersectionMatrix> {
    if let Some(name) = &a.catalog {
        return catalog.load(name)?.lattice();
    }
    let path = a.matrix.as_ref().expect("clap enforces one input");
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if v.get("schema_version").is_some() {
        load_external(catalog, parse_entry(&text, &path.display().to_string())?)?.lattice()
    } else {
        Ok(serde_json::from_value(v)?)
    }
}

fn element_json(x: &NumberFieldElement) -> Value {
    Value::Array(x.coeffs().iter().map(|c| Value::String(format_rational(c))).collect())
}

/// A catalog-format entry holding the explicit equation and nodes, so the
/// output can be fed back through `--file`.
fn nodes(catalog: &Catalog, a: &VarietyArgs) -> Result<Report> {
    let (name, v, nodes) = variety(catalog, a)?;
    let labels = nodes.labels(&v);
    let minpoly: Vec<Value> = v.field.coeffs().iter().map(|c| json!(i64::try_from(c).ok())).collect();
    let coords: Vec<Value> = nodes.iter().map(|p| Value::Array(p.coords.iter().map(element_json).collect())).collect();
    let entry = json!({
        "schema_version": crate::catalog::SCHEMA_VERSION,
        "name": format!("{name}-nodes"),
        "kind": "variety",
        "provenance": "derived: nodes subcommand",
        "description": format!("Equation and nodes of {name}"),
        "data": {
            "variety_kind": v.kind,
            "degree": v.degree,
            "construction": "explicit",
            "field": minpoly,
            "chart": v.chart,
            "equation": PolynomialJson::from_poly(&v.defining),
            "nodes": coords,
            "labels": labels,
        },
        "expected": {"nodes": {"value": nodes.len(), "tag": "derived"}},
    });
    let field = if v.field.is_rational() { "Q".to_string() } else { format!("Q[a]/({})", v.field) };
    let mut text = format!("{name}: {} nodes over {field}, all ordinary double points\n", nodes.len());
    let mut csv = String::from("label,coordinates\n");
    for (l, p) in labels.iter().zip(nodes.iter()) {
        let cs: Vec<String> = p.coords.iter().map(ToString::to_string).collect();
        text.push_str(&format!("{l}  ({})\n", cs.join(", ")));
        csv.push_str(&format!("{l},\"{}\"\n", cs.join(";")));
    }
    Ok(Report::new(entry, text, csv))
}

#[derive(Serialize)]
struct DefectOutput {
    entry: String,
    s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect_exact: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect_modular: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<DefectReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modular: Option<DefectReport>,
}

fn defect(
    catalog: &Catalog,
    a: &VarietyArgs,
    prime: Option<u64>,
    modular_only: bool,
    timing: bool,
    err: &mut dyn Write,
) -> Result<Report> {
    let (name, v, nodes) = variety(catalog, a)?;
    let strip = |r: DefectReport| if timing { r } else { r.without_timing() };
    let exact = if modular_only {
        None
    } else {
        let _ = writeln!(err, "exact elimination on {} nodes", nodes.len());
        Some(strip(defect_exact(&v, &nodes.nodes)?))
    };
    let modular = match prime {
        Some(p) => {
            let _ = writeln!(err, "elimination modulo {p}");
            Some(strip(defect_modular(&v, &nodes.nodes, p)?))
        }
        None => None,
    };
    let out = DefectOutput {
        entry: name.clone(),
        s: nodes.len(),
        defect_exact: exact.as_ref().map(|r| r.defect),
        prime,
        defect_modular: modular.as_ref().map(|r| r.defect),
        exact,
        modular,
    };
    let mut text = format!("{name}: s = {}\n", out.s);
    let mut csv = String::from("entry,s,method,cols,rank,defect,vanishing_dim,runtime_ms\n");
    for r in out.exact.iter().chain(&out.modular) {
        text.push_str(&format!("{}: rank {} of {} columns, defect {}\n", r.method, r.rank, r.cols, r.defect));
        let ms = r.runtime_ms.map(|t| t.to_string()).unwrap_or_default();
        csv.push_str(&format!("{name},{},{},{},{},{},{},{ms}\n", r.s, r.method, r.cols, r.rank, r.defect, r.vanishing_dim));
    }
    let mut report = Report::new(to_value(&out), text, csv);
    if let (Some(d), Some(dp)) = (out.defect_exact, out.defect_modular) {
        if dp < d {
            report.failed = Some(format!("modular defect {dp} is below the exact defect {d}"));
        }
    }
    Ok(report)
}

fn relations_report(m: &IntersectionMatrix) -> Report {
    let b = relations(m);
    let vectors: Vec<Vec<String>> = b.vectors.iter().map(|v| v.iter().map(format_rational).collect()).collect();
    let zero = nullhomologous_columns(m);
    let json = json!({
        "s": m.s(),
        "labels": m.labels(),
        "dim_a": m.rank(),
        "dim_b": b.dim(),
        "relations": vectors,
        "nullhomologous_columns": zero,
    });
    let mut text = format!("s = {}, dim A = {}, dim B = {}\n", m.s(), m.rank(), b.dim());
    for v in &b.vectors {
        let mut line = String::new();
        for (c, l) in v.iter().zip(m.labels()) {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let sign = if num_traits::Signed::is_negative(c) { "-" } else { "+" };
            let abs = num_traits::Signed::abs(c);
            let coeff = if num_traits::One::is_one(&abs) { String::new() } else { format!("{} ", format_rational(&abs)) };
            if line.is_empty() {
                line = format!("{}{coeff}{l}", if sign == "-" { "-" } else { "" });
            } else {
                line.push_str(&format!(" {sign} {coeff}{l}"));
            }
        }
        text.push_str(&format!("{line} = 0\n"));
    }
    let mut csv = m.labels().join(",");
    csv.push('\n');
    for v in &vectors {
        csv.push_str(&v.join(","));
        csv.push('\n');
    }
    Report::new(json, text, csv)
}

fn parse_degrees(d: &str) -> Result<Vec<u32>> {
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad degree `{s}`")));
    match d.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(Error::Parse(format!("empty degree range {d}")));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(d)?]),
    }
}

fn arnold(catalog: &Catalog, n: u32, d: &str, mu3: bool, asymptotic: Option<u32>) -> Result<Report> {
    if let Some(nmax) = asymptotic {
        let r = asymptotic_check(nmax)?;
        let mut text = format!("sqrt(n) a_n -> {}\nsqrt(n) c_n -> {}\n", r.limit_a, r.limit_c);
        let mut csv = String::from("n,a_n,c_n,sqrt_n_a_n,sqrt_n_c_n\n");
        for row in &r.rows {
            text.push_str(&format!("n = {}: a_n = {}, c_n = {}\n", row.n, row.a_n, row.c_n));
            csv.push_str(&format!("{},{},{},{},{}\n", row.n, row.a_n, row.c_n, row.sqrt_n_a_n, row.sqrt_n_c_n));
        }
        return Ok(Report::new(to_value(&r), text, csv));
    }
    let n = if mu3 { 3 } else { n };
    let degrees = parse_degrees(d)?;
    let mut table = BoundsTable::for_dimension(n, degrees)?;
    if mu3 {
        if let Object::Bounds { spec, .. } = catalog.load("mu3-bounds")?.object {
            for lb in spec.known_lower {
                table.set_lower(lb.d, lb.value.into(), &lb.source);
            }
        }
    }
    let mut text = format!("n = {n}\n{:>4} {:>12} {:>12} {:>12} {:>12} {:>8}\n", "d", "arnold", "bruce", "miyaoka", "upper", "lower");
    for r in &table.rows {
        let opt = |x: &Option<num_bigint::BigUint>| x.as_ref().map_or("-".into(), ToString::to_string);
        text.push_str(&format!(
            "{:>4} {:>12} {:>12} {:>12} {:>12} {:>8}\n",
            r.d,
            r.arnold,
            r.bruce,
            opt(&r.miyaoka),
            r.combined_upper,
            opt(&r.known_lower)
        ));
    }
    let csv = table.to_csv();
    debug_assert!(csv.starts_with(CSV_HEADER));
    Ok(Report::new(to_value(&table), text, csv))
}

fn cheb(n: u32, half: bool, factors: Option<&str>) -> Result<Report> {
    if let Some(sign) = factors {
        let sign = match sign {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(Error::Parse(format!("sign must be + or -, got `{other}`"))),
        };
        let f = cheb_sum_factors(n, sign)?;
        let list: Vec<Value> =
            f.factors.iter().map(|(mu, p)| json!({"mu": mu, "factor": PolynomialJson::from_poly(p)})).collect();
        let json = json!({
            "n": n,
            "sign": sign.as_char().to_string(),
            "field": f.scalar.minpoly().to_string(),
            "scalar": element_json(&f.scalar),
            "factors": list,
            "verified": true,
        });
        let mut text = format!("T_{n}(x) {} T_{n}(y) = ({})", sign.as_char(), f.scalar);
        let mut csv = String::from("mu,factor\n");
        for (mu, p) in &f.factors {
            text.push_str(&format!(" * ({p})"));
            csv.push_str(&format!("{mu},\"{p}\"\n"));
        }
        text.push('\n');
        return Ok(Report::new(json, text, csv));
    }
    let p = if half { cheb_half(n)? } else { chebyshev(n) };
    let name = if half { format!("F_{n}") } else { format!("T_{n}") };
    let mut csv = String::from("degree,coefficient\n");
    for (m, c) in p.terms() {
        csv.push_str(&format!("{},{}\n", m.exponents()[0], format_rational(c)));
    }
    Ok(Report::new(
        json!({"name": name, "n": n, "polynomial": PolynomialJson::from_poly(&p)}),
        format!("{name} = {p}\n"),
        csv,
    ))
}

fn catalog_command(catalog: &Catalog, action: &CatalogAction, err: &mut dyn Write) -> Result<Report> {
    match action {
        CatalogAction::List => {
            let rows: Vec<Value> = catalog
                .entries()
                .map(|e| json!({"name": e.name, "kind": e.kind, "provenance": e.provenance, "description": e.description}))
                .collect();
            let mut text = String::new();
            let mut csv = String::from("name,kind,provenance\n");
            for e in catalog.entries() {
                text.push_str(&format!("{:<36} {:<20} {}\n", e.name, e.kind.to_string(), e.provenance));
                csv.push_str(&format!("{},{},\"{}\"\n", e.name, e.kind, e.provenance));
            }
            Ok(Report::new(Value::Array(rows), text, csv))
        }
        CatalogAction::Show { name } => {
            let e = catalog.entry(name)?;
            let json = to_value(e);
            let mut text = format!("{} ({})\n{}\n{}\nexpected:\n", e.name, e.kind, e.provenance, e.description);
            let mut csv = String::from("key,value,tag\n");
            for (k, x) in &e.expected {
                text.push_str(&format!("  {k} = {} [{:?}]\n", x.value, x.tag));
                csv.push_str(&format!("{k},\"{}\",{:?}\n", x.value.to_string().replace('"', "\"\""), x.tag));
            }
            Ok(Report::new(json, text, csv))
        }
        CatalogAction::Check { name, all } => {
            let names: Vec<String> = if *all {
                catalog.names().map(String::from).collect()
            } else {
                vec![name.clone().expect("clap requires a name without --all")]
            };
            let mut outcomes: Vec<CheckOutcome> = Vec::new();
            for n in &names {
                let _ = writeln!(err, "checking {n}");
                outcomes.extend(catalog.run_expectations(n)?);
            }
            let failed: Vec<&CheckOutcome> = outcomes.iter().filter(|c| !c.passed).collect();
            let mut text = String::new();
            let mut csv = String::from("entry,key,tag,expected,actual,passed\n");
            for c in &outcomes {
                let actual = c.actual.as_ref().map_or_else(|| c.error.clone().unwrap_or_default(), ToString::to_string);
                text.push_str(&format!(
                    "{} {} {}: expected {}, got {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.entry,
                    c.key,
                    c.expected,
                    actual
                ));
                let q = |s: String| format!("\"{}\"", s.replace('"', "\"\""));
                csv.push_str(&format!(
                    "{},{},{:?},{},{},{}\n",
                    c.entry,
                    c.key,
                    c.tag,
                    q(c.expected.to_string()),
                    q(actual),
                    c.passed
                ));
            }
            let json = json!({
                "checked": outcomes.len(),
                "failed": failed.len(),
                "outcomes": outcomes,
            });
            let mut report = Report::new(json, text, csv);
            if !failed.is_empty() {
                let keys: Vec<String> = failed.iter().map(|c| format!("{}.{}", c.entry, c.key)).collect();
                report.failed = Some(format!("{} expectation(s) differ: {}", failed.len(), keys.join(", ")));
            }
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("nodal").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["frobnicate"]).0, 1);
        assert_eq!(run_str(&["count", "--bogus"]).0, 1);
        assert_eq!(run_str(&["defect", "--catalog", "no-such-entry"]).0, 1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("catalog"));
    }

    #[test]
    fn count_cubic_d4() {
        let (code, out, _) = run_str(&["count", "--catalog", "cubic-d4-matrix"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["projective_count"], 102);
        assert_eq!(v["total"], 512);
    }

    #[test]
    fn mu3_csv() {
        let (code, out, _) = run_str(&["arnold", "--mu3", "--d", "2..12", "--format", "csv"]);
        assert_eq!(code, 0);
        let upper: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(4).unwrap()).collect();
        assert_eq!(upper, ["1", "4", "16", "31", "66", "104", "174", "246", "360", "480", "645"]);
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_degrees("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_degrees("7").unwrap(), vec![7]);
        assert!(parse_degrees("5..2").is_err());
    }
}
