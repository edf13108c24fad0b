//! Command-line front end: expand products, emit relation families,
//! evaluate interpolated values, and run verification sweeps.

mod suites;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tmzv::coeff::parse_rat;
use tmzv::numerics::eval_tmzv;
use tmzv::product::{product, ProductKind};
use tmzv::reg::RegKind;
use tmzv::relations::{
    cyclic_sum_relation, eds_relation, euler_decomposition, fds_relation, hoffman_relation,
    sum_formula_relation, Relation,
};
use tmzv::{bigfloat::Ctx, Element, Index};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Regularization,
    Relations,
    Genfun,
    Hyp,
    All,
}

#[derive(Parser)]
#[command(name = "tmzv", version, about = "Interpolated multiple zeta value toolkit")]
struct Cli {
    /// Working precision in bits for numeric evaluation
    #[arg(long, global = true, env = "TMZV_PRECISION")]
    precision: Option<usize>,
    /// Numeric tolerance for evaluations and residual checks
    #[arg(long, global = true, env = "TMZV_TOL")]
    tol: Option<f64>,
    /// Largest summation cutoff before giving up on convergence
    #[arg(long, global = true, env = "TMZV_MAX_CUTOFF")]
    max_cutoff: Option<u64>,
    /// Weight ceiling for sweeps (at most 10)
    #[arg(long, global = true, env = "TMZV_MAX_WEIGHT")]
    max_weight: Option<u32>,
    /// Seed for randomized sweeps
    #[arg(long, global = true, env = "TMZV_SEED")]
    seed: Option<u64>,
    /// Report destination (stdout when absent)
    #[arg(long, global = true, env = "TMZV_OUT")]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, env = "TMZV_FORMAT", value_enum)]
    format: Option<Format>,
    /// Optional JSON config file; explicit flags and env vars win
    #[arg(long, global = true, env = "TMZV_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a product of two words or elements
    Expand {
        /// Product kind: concat, sh, t_sh, st, t_st
        product: String,
        lhs: String,
        rhs: String,
    },
    /// Emit a relation from one of the families
    Relation {
        /// Family: fds, eds, hoffman, euler, cyclic, sum
        family: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        index: Option<String>,
        #[arg(long)]
        w1: Option<String>,
        #[arg(long)]
        w0: Option<String>,
        /// Regularized map for eds: sh or st
        #[arg(long, default_value = "sh")]
        reg: String,
    },
    /// Evaluate an interpolated multiple zeta value numerically
    Eval {
        #[arg(long)]
        index: String,
        #[arg(long, default_value = "0")]
        t: String,
    },
    /// Run a verification suite and write a report
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// Resolved run configuration; precedence flag/env > config file > default.
pub struct RunConfig {
    pub precision_bits: usize,
    pub tol: f64,
    pub max_cutoff: u64,
    pub max_weight: u32,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub json: bool,
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, String> {
    let file: serde_json::Value = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config file: {e}"))?
        }
        None => serde_json::Value::Null,
    };
    let fu64 = |k: &str| file.get(k).and_then(|v| v.as_u64());
    let cfg = RunConfig {
        precision_bits: cli
            .precision
            .or(fu64("precision").map(|v| v as usize))
            .unwrap_or(768),
        tol: cli
            .tol
            .or(file.get("tol").and_then(|v| v.as_f64()))
            .unwrap_or(1e-6),
        max_cutoff: cli.max_cutoff.or(fu64("max_cutoff")).unwrap_or(1 << 22),
        max_weight: cli
            .max_weight
            .or(fu64("max_weight").map(|v| v as u32))
            .unwrap_or(6),
        seed: cli.seed.or(fu64("seed")).unwrap_or(1),
        out: cli.out.clone().or_else(|| {
            file.get("out")
                .and_then(|v| v.as_str())
                .map(PathBuf::from)
        }),
        json: match cli.format {
            Some(f) => f == Format::Json,
            None => file.get("format").and_then(|v| v.as_str()) == Some("json"),
        },
    };
    if cfg.precision_bits < 64 {
        return Err("precision must be at least 64 bits".into());
    }
    if cfg.max_weight > 10 {
        return Err("max-weight is capped at 10".into());
    }
    if !(cfg.tol > 0.0) {
        return Err("tol must be positive".into());
    }
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: String) -> Result<(), String> {
    match &cfg.out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("write failed: {e}")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_expand(cfg: &RunConfig, kind: &str, lhs: &str, rhs: &str) -> Result<(), String> {
    let kind = ProductKind::parse(kind).map_err(|e| e.to_string())?;
    let a = Element::parse(lhs).map_err(|e| e.to_string())?;
    let b = Element::parse(rhs).map_err(|e| e.to_string())?;
    let result = product(kind, &a, &b).map_err(|e| e.to_string())?;
    let as_z = lhs.contains('z') || rhs.contains('z');
    let rendered = if as_z && result.in_h1() {
        format!("{}", result.display_z())
    } else {
        format!("{result}")
    };
    let text = if cfg.json {
        serde_json::json!({ "expansion": rendered }).to_string()
    } else {
        rendered
    };
    emit(cfg, text)
}

fn build_relation(
    family: &str,
    k: Option<u32>,
    n: Option<usize>,
    l: Option<u32>,
    index: Option<&str>,
    w1: Option<&str>,
    w0: Option<&str>,
    reg: &str,
) -> Result<Relation, String> {
    let need = |o: Option<&str>, name: &str| -> Result<String, String> {
        o.map(str::to_owned)
            .ok_or_else(|| format!("{family} needs --{name}"))
    };
    let parse_el = |s: &str| Element::parse(s).map_err(|e| e.to_string());
    let parse_idx = |s: &str| Index::parse(s).map_err(|e| e.to_string());
    match family {
        "fds" => {
            let a = parse_el(&need(w1, "w1")?)?;
            let b = parse_el(&need(w0, "w0")?)?;
            fds_relation(&a, &b).map_err(|e| e.to_string())
        }
        "eds" => {
            let a = parse_el(&need(w1, "w1")?)?;
            let b = parse_el(&need(w0, "w0")?)?;
            let kind = RegKind::parse(reg).map_err(|e| e.to_string())?;
            eds_relation(&a, &b, kind).map_err(|e| e.to_string())
        }
        "hoffman" => hoffman_relation(&parse_idx(&need(index, "index")?)?)
            .map_err(|e| e.to_string()),
        "euler" => {
            let k = k.ok_or("euler needs --k")?;
            let l = l.ok_or("euler needs --l")?;
            euler_decomposition(k, l).map_err(|e| e.to_string())
        }
        "cyclic" => cyclic_sum_relation(&parse_idx(&need(index, "index")?)?)
            .map_err(|e| e.to_string()),
        "sum" => {
            let k = k.ok_or("sum needs --k")?;
            let n = n.ok_or("sum needs --n")?;
            sum_formula_relation(k, n).map_err(|e| e.to_string())
        }
        _ => Err(format!("unknown relation family {family:?}")),
    }
}

fn cmd_eval(cfg: &RunConfig, index: &str, t: &str) -> Result<(), String> {
    let idx = Index::parse(index).map_err(|e| e.to_string())?;
    let t_val = parse_rat(t).map_err(|e| e.to_string())?;
    let mut ctx = Ctx::new(cfg.precision_bits);
    let r = eval_tmzv(&idx, &t_val, &mut ctx, cfg.tol, cfg.max_cutoff)
        .map_err(|e| e.to_string())?;
    let text = if cfg.json {
        serde_json::json!({
            "index": idx.to_string(),
            "t": t_val.to_string(),
            "value": format!("{:.15e}", r.value_f64()),
            "error_bound": format!("{:.3e}", r.error_f64()),
            "cutoff": r.cutoff_used,
        })
        .to_string()
    } else {
        format!(
            "zeta^t({}) at t = {} = {:.15}  (error bound {:.3e}, cutoff {})",
            idx,
            t_val,
            r.value_f64(),
            r.error_f64(),
            r.cutoff_used
        )
    };
    emit(cfg, text)
}

fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<bool, String> {
    let records = suites::run_suite(suite, cfg);
    let all_pass = records.iter().all(|r| r.pass);
    let mut lines = Vec::with_capacity(records.len());
    for r in &records {
        if cfg.json {
            lines.push(r.to_json(cfg.seed).to_string());
        } else {
            lines.push(r.to_text());
        }
    }
    let body = lines.join("\n");
    match &cfg.out {
        Some(p) => {
            std::fs::write(p, body + "\n").map_err(|e| format!("write failed: {e}"))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut h = stdout.lock();
            writeln!(h, "{body}").map_err(|e| e.to_string())?;
        }
    }
    if !cfg.json {
        let failed = records.iter().filter(|r| !r.pass).count();
        eprintln!(
            "{} checks, {} failed (seed {})",
            records.len(),
            failed,
            cfg.seed
        );
    }
    Ok(all_pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.cmd {
        Cmd::Expand { product, lhs, rhs } => cmd_expand(&cfg, product, lhs, rhs).map(|()| true),
        Cmd::Relation {
            family,
            k,
            n,
            l,
            index,
            w1,
            w0,
            reg,
        } => build_relation(
            family,
            *k,
            *n,
            *l,
            index.as_deref(),
            w1.as_deref(),
            w0.as_deref(),
            reg,
        )
        .and_then(|rel| {
            let text = if cfg.json {
                rel.to_json().to_string()
            } else {
                format!("{}: {}", rel.label, rel.residual())
            };
            emit(&cfg, text).map(|()| true)
        }),
        Cmd::Eval { index, t } => cmd_eval(&cfg, index, t).map(|()| true),
        Cmd::Verify { suite } => cmd_verify(&cfg, *suite),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
