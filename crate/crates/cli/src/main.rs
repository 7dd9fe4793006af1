//! `blochlab`: command-line front end for the blochlab library.

use std::io::Write;
use std::process::ExitCode;

use blochlab::manifold::{analyze, ManifoldRecord};
use blochlab::milnor::{cyclotomic_basis, milnor_scan, scan_summary};
use blochlab::numberfield::{EmbeddedField, NumberField};
use blochlab::numeric::{bloch_wigner_d2, li2, rho_scalar};
use blochlab::regulator::{borel_matrix, default_sample, predicted_ranks, verify_theorem_b, DEFAULT_MAX_DENOMINATOR};
use blochlab::relations::{find_integer_relation, RelationOutcome};
use blochlab::{BlochError, Complex, PrecisionContext, Real, Result, VERSION};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "blochlab", version, about = "Bloch groups of embedded number fields")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "BLOCHLAB_PREC", default_value_t = 256)]
    prec: usize,
    /// Height bound for integer-relation searches, e.g. 1000000 or 1e6.
    #[arg(long, global = true, default_value = "1000000", value_parser = parse_height)]
    height: BigInt,
    /// Denominator bound for rational recognition.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DENOMINATOR)]
    maxden: u64,
    /// Emit the full JSON report instead of the lossy table.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an embedded field and predict the eigenspace ranks.
    Field(FieldArgs),
    /// Validate and analyse shape-data records.
    Manifold {
        /// Record files in the documented JSON format.
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Cyclotomic elements and relation scans.
    Milnor {
        #[command(subcommand)]
        command: MilnorCommand,
    },
    /// Predicted against observed eigenspace ranks on a generated sample.
    Theoremb(FieldArgs),
    /// D2, Li2 and the Bloch-map scalars at a complex number.
    Dilog {
        /// A complex number such as 0.5+0.25i.
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Integer relation among real numbers given as decimals.
    Relations {
        #[arg(required = true, num_args = 2.., allow_negative_numbers = true)]
        values: Vec<String>,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// Minimal polynomial, e.g. "x^4-2".
    minpoly: String,
    /// Index of the embedding root in canonical root order.
    #[arg(long = "root", default_value_t = 0)]
    root_index: usize,
}

#[derive(Subcommand)]
enum MilnorCommand {
    /// Search for relations among D2(e^(2 pi i j/N)).
    Scan {
        #[arg(long = "N", short = 'N')]
        n: u64,
    },
    /// The elements [zeta_N^j] with 0 < j < N/2 coprime to N.
    Basis {
        #[arg(long = "N", short = 'N')]
        n: u64,
    },
}

fn parse_height(s: &str) -> std::result::Result<BigInt, String> {
    let t = s.trim();
    let parsed = if let Some((m, e)) = t.split_once(['e', 'E']).or_else(|| t.split_once('^')) {
        let exp: u32 = e.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        let base: BigInt = m.parse().map_err(|_| format!("bad mantissa in {s:?}"))?;
        if t.contains('^') {
            base.pow(exp)
        } else {
            base * BigInt::from(10).pow(exp)
        }
    } else {
        t.parse().map_err(|_| format!("not an integer: {s:?}"))?
    };
    if parsed < BigInt::from(1) {
        return Err("height must be positive".into());
    }
    Ok(parsed)
}

struct Config {
    ctx: PrecisionContext,
    height: BigInt,
    maxden: BigInt,
    json: bool,
}

impl Config {
    fn from_args(a: &ConfigArgs) -> Result<Self> {
        Ok(Config {
            ctx: PrecisionContext::new(a.prec)?,
            height: a.height.clone(),
            maxden: BigInt::from(a.maxden),
            json: a.json,
        })
    }

    fn stamp(&self) -> Value {
        json!({
            "prec_bits": self.ctx.prec_bits,
            "relation_height": self.height.to_string(),
            "max_denominator": self.maxden.to_string(),
            "retry_doublings": self.ctx.retry_doublings,
            "output": if self.json { "json" } else { "table" },
        })
    }
}

fn envelope(cfg: &Config, command: &str, body: std::result::Result<Value, &BlochError>) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "version": VERSION,
        "command": command,
        "config": cfg.stamp(),
    });
    match body {
        Ok(r) => v["result"] = r,
        Err(e) => v["error"] = json!({"code": e.code(), "message": e.to_string(), "exit_code": e.exit_code()}),
    }
    v
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| BlochError::Internal(format!("serialisation failed: {e}")))
}

fn embedded(a: &FieldArgs) -> Result<EmbeddedField> {
    EmbeddedField::new(NumberField::parse(&a.minpoly)?, a.root_index)
}

fn cmd_field(a: &FieldArgs, cfg: &Config) -> Result<Value> {
    let c = &cfg.ctx;
    let e = embedded(a)?;
    let table = e.embedding_table(c)?;
    let label = e.classify(c)?;
    let mut out = json!({
        "minpoly": e.field().min_poly().to_string(),
        "root_index": e.root_index(),
        "degree": e.degree(),
        "r1": table.r1,
        "r2": table.r2,
        "classification": label.label(),
    });
    if table.r2 == 0 {
        out["predicted_ranks"] = Value::Null;
        out["rank_error"] = json!(BlochError::TotallyReal.code());
        return Ok(out);
    }
    let stable = e.is_conjugation_stable(c)?;
    out["stable"] = json!(stable.stable);
    out["real_embedding"] = json!(e.is_real_embedding(c)?);
    if stable.stable && !e.is_real_embedding(c)? {
        out["r2_prime"] = json!(e.commuting_pairs(c)?);
    }
    let rs = e.real_subfield(c)?;
    out["real_subfield_degree"] = json!(rs.degree);
    out["real_subfield_totally_real"] = json!(rs.totally_real);
    let inter = e.conjugate_intersection(c)?;
    out["conjugate_intersection_degree"] = json!(inter.degree);
    out["conjugate_intersection_real"] = json!(inter.is_real);
    out["predicted_ranks"] = to_value(&predicted_ranks(&e, c)?)?;
    out["embeddings"] = to_value(&table.roots)?;
    Ok(out)
}

fn cmd_theoremb(a: &FieldArgs, cfg: &Config) -> Result<Value> {
    let e = embedded(a)?;
    let sample = default_sample(&e, &cfg.ctx)?;
    let report = verify_theorem_b(&e, &sample, &cfg.ctx)?;
    Ok(json!({
        "minpoly": e.field().min_poly().to_string(),
        "root_index": e.root_index(),
        "sample": sample.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "report": to_value(&report)?,
    }))
}

fn cmd_manifold(files: &[String], cfg: &Config) -> Result<Value> {
    let mut reports = Vec::with_capacity(files.len());
    for f in files {
        let src = std::fs::read_to_string(f).map_err(|e| BlochError::InvalidInput(format!("{f}: {e}")))?;
        let mut m = ManifoldRecord::from_json_str(&src, &cfg.height, &cfg.ctx)?;
        m.validate(&cfg.ctx)?;
        let mut r = to_value(&analyze(&m, &cfg.maxden, &cfg.ctx)?)?;
        r["file"] = json!(f);
        reports.push(r);
    }
    Ok(if reports.len() == 1 { reports.pop().expect("one report") } else { Value::Array(reports) })
}

fn cmd_milnor(m: &MilnorCommand, cfg: &Config) -> Result<Value> {
    match m {
        MilnorCommand::Scan { n } => {
            let s = milnor_scan(*n, &cfg.height, &cfg.ctx)?;
            let mut v = to_value(&s)?;
            v["summary"] = json!(scan_summary(&s));
            Ok(v)
        }
        MilnorCommand::Basis { n } => {
            let (e, b) = cyclotomic_basis(*n, &cfg.ctx)?;
            let m = borel_matrix(&b, &e, &cfg.ctx)?;
            Ok(json!({
                "N": n,
                "minpoly": e.field().min_poly().to_string(),
                "root_index": e.root_index(),
                "elements": b.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "regulator": to_value(&m.summary())?,
                "regulator_rank": m.qrank(&cfg.ctx).rank,
            }))
        }
    }
}

fn parse_complex(s: &str, prec: usize) -> Result<Complex> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || BlochError::InvalidInput(format!("not a complex number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::from_real(Real::parse(&t, prec)?));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re = Real::parse(re, prec).map_err(|_| bad())?;
    let im = Real::parse(im, prec).map_err(|_| bad())?;
    Ok(Complex::new(re, im))
}

fn cmd_dilog(z: &str, cfg: &Config) -> Result<Value> {
    let c = &cfg.ctx;
    let w = parse_complex(z, c.working())?;
    let d2 = bloch_wigner_d2(&w, c)?;
    let li = match li2(&w, c) {
        Ok(v) => json!({"re": v.re.to_decimal(50), "im": v.im.to_decimal(50)}),
        Err(e) => json!({"error": e.code()}),
    };
    let rho = rho_scalar(&w, c)?;
    let cplx = |x: &Complex| json!({"re": x.re.to_decimal(50), "im": x.im.to_decimal(50)});
    Ok(json!({
        "z": {"re": w.re.to_decimal(50), "im": w.im.to_decimal(50)},
        "d2": d2.to_decimal(50),
        "li2": li,
        "rho": {"log_z": cplx(&rho.log_z), "log_1mz": cplx(&rho.log_1mz), "c": cplx(&rho.c)},
        "prec_bits": c.prec_bits,
    }))
}

fn cmd_relations(values: &[String], cfg: &Config) -> Result<Value> {
    let p = cfg.ctx.working();
    let xs: Vec<Complex> =
        values.iter().map(|v| Real::parse(v, p).map(Complex::from_real)).collect::<Result<_>>()?;
    Ok(match find_integer_relation(&xs, &cfg.height, &cfg.ctx)? {
        RelationOutcome::Found(r) => json!({"status": "FOUND", "relation": to_value(&r)?}),
        RelationOutcome::NoneFound { height_bound, prec_bits } => json!({
            "status": "NO_RELATION_FOUND",
            "height": height_bound.to_string(),
            "prec_bits": prec_bits,
        }),
    })
}

fn render_table(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_table(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match x {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_table(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(x))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) if s.len() > 24 && s.parse::<f64>().is_ok() => match s.split_once(['e', 'E']) {
            Some((m, e)) => format!("{}…e{e}", &m[..m.len().min(22)]),
            None => format!("{}…", &s[..24]),
        },
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match Config::from_args(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let (name, result) = match &cli.command {
        Command::Field(a) => ("field", cmd_field(a, &cfg)),
        Command::Manifold { files } => ("manifold", cmd_manifold(files, &cfg)),
        Command::Milnor { command } => ("milnor", cmd_milnor(command, &cfg)),
        Command::Theoremb(a) => ("theoremb", cmd_theoremb(a, &cfg)),
        Command::Dilog { z } => ("dilog", cmd_dilog(z, &cfg)),
        Command::Relations { values } => ("relations", cmd_relations(values, &cfg)),
    };
    let code = match &result {
        Ok(_) => 0,
        Err(e) => e.exit_code(),
    };
    let v = envelope(&cfg, name, result.as_ref().map(Clone::clone));
    let text = if cfg.json {
        Some(serde_json::to_string_pretty(&v).expect("JSON values serialise") + "\n")
    } else {
        v.get("result").map(|r| {
            let mut s = String::from("# table output is lossy; use --json for the full report\n");
            render_table(&json!({"command": name, "version": VERSION, "config": v["config"], "result": r}), 0, &mut s);
            s
        })
    };
    if let Some(t) = text {
        // a closed pipe is not an error of the computation
        let _ = std::io::stdout().write_all(t.as_bytes());
    }
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(code as u8)
}
