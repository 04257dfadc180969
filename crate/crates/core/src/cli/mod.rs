//! The `copcone` command line: file formats, canonical JSON reports and exit
//! codes. [`run`] does all the work in-process so tests can drive it
//! directly; the binary only prints and exits.

mod canon;
mod format;

pub use canon::{fmt_g17, to_canonical};
pub use format::{factor_rows, hex_digest, parse_matrix_file, MatrixFile, SYM_TOL};

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bounds::{babe, cp_rank_interval, djl_lower, pn_table_report};
use crate::cones::{
    cp_interior_verdict, is_copositive, is_dnn, is_nonneg, is_psd, verify_cp_factor, Answer, ConeVerdict,
};
use crate::extremal::{
    anti_dd_check, classify_rank12, horn_orbit_recognize, nonneg_extreme_check, orth_column_check,
    orth_nullspace_check, rank3_witness_check, zero_diag_reduce, Check, ExtremeTag,
};
use crate::factor::{
    cp3_factorize, dd_factorize, heuristic_min_factor, horn_orthogonal_factorize, positive_dd_factorize,
    HeuristicOptions, HeuristicOutcome, NonnegFactor,
};
use crate::numkern::{num_rank, Tolerance};

pub const EXIT_IN: i32 = 0;
pub const EXIT_NOT_IN: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

/// Environment variable holding a default tolerance (used for both the
/// absolute and relative parts).
pub const TOL_ENV: &str = "COPCONE_TOL";

#[derive(Parser, Debug)]
#[command(name = "copcone", version, about = "Copositive and completely positive cone toolkit")]
struct Cli {
    /// Tolerance (absolute and relative); overrides COPCONE_TOL.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Cone membership test with certificate.
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        cone: ConeArg,
        #[arg(long, default_value_t = 40)]
        max_depth: usize,
        /// Factor file for the cp and cp-interior cones (defaults to the
        /// factor stored in the matrix file).
        #[arg(long)]
        factor: Option<PathBuf>,
    },
    /// Constructive nonnegative factorization.
    Factorize {
        path: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Column count for the heuristic (default: rank).
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// cp-rank bounds for a matrix, or the p_n table with --n.
    Bounds {
        path: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        /// Copositive matrix orthogonal to M (repeatable).
        #[arg(long)]
        witness: Vec<PathBuf>,
        #[arg(long)]
        factor: Option<PathBuf>,
    },
    /// Extreme-class and orbit recognition for a copositive matrix.
    Orbit { path: PathBuf },
    /// Checks on an orthogonal pair (M completely positive, A copositive).
    VerifyOrth {
        m: PathBuf,
        a: PathBuf,
        #[arg(long)]
        factor: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConeArg {
    Nonneg,
    Psd,
    Copositive,
    Dnn,
    Cp,
    CpInterior,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Dd,
    Posdd,
    Horn6,
    Cp3,
    Heuristic,
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct DataError(String);

impl From<String> for DataError {
    fn from(s: String) -> Self {
        DataError(s)
    }
}

struct Ctx {
    tol: Tolerance,
    inputs: Vec<Value>,
}

impl Ctx {
    fn load(&mut self, path: &Path) -> Result<MatrixFile, DataError> {
        let bytes = std::fs::read(path).map_err(|e| DataError(format!("{}: {e}", path.display())))?;
        let f = parse_matrix_file(&bytes).map_err(|e| DataError(format!("{}: {e}", path.display())))?;
        let mut entry = json!({
            "path": path.display().to_string(),
            "sha256": f.sha256,
            "n": f.matrix.n(),
            "matrix": f.matrix.to_rows(),
        });
        if let Some(v) = &f.factor {
            entry["factor"] = factor_json(v);
        }
        self.inputs.push(entry);
        Ok(f)
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn factor_json(v: &NonnegFactor) -> Value {
    json!({ "n": v.n(), "p": v.p(), "columns": v.columns() })
}

fn error_json(tag: &str, message: String) -> Value {
    json!({ "error": { "tag": tag, "message": message } })
}

fn verdict_code(v: &ConeVerdict) -> i32 {
    match v.answer {
        Answer::In => EXIT_IN,
        Answer::NotIn => EXIT_NOT_IN,
        Answer::Undecided => EXIT_UNDECIDED,
    }
}

/// Tolerance from the flag, then COPCONE_TOL, then the default.
fn resolve_tol(flag: Option<f64>, env: Option<&str>) -> Result<Tolerance, String> {
    let valid = |v: f64| v.is_finite() && v >= 0.0;
    if let Some(v) = flag {
        return if valid(v) {
            Ok(Tolerance::uniform(v))
        } else {
            Err(format!("--tol must be a nonnegative number, got {v}"))
        };
    }
    match env {
        None => Ok(Tolerance::default()),
        Some(s) => match s.trim().parse::<f64>() {
            Ok(v) if valid(v) => Ok(Tolerance::uniform(v)),
            _ => Err(format!("{TOL_ENV} must be a nonnegative number, got `{s}`")),
        },
    }
}

/// Runs one command line (without the program name). `env_tol` is the
/// value of COPCONE_TOL, if set.
pub fn run(args: &[String], env_tol: Option<&str>) -> Outcome {
    let argv = std::iter::once("copcone".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let tol = match resolve_tol(cli.tol, env_tol) {
        Ok(t) => t,
        Err(msg) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx {
        tol,
        inputs: Vec::new(),
    };
    let result = match &cli.cmd {
        Cmd::Check {
            path,
            cone,
            max_depth,
            factor,
        } => cmd_check(&mut ctx, path, *cone, *max_depth, factor.as_deref()),
        Cmd::Factorize {
            path,
            method,
            target,
            restarts,
            seed,
        } => cmd_factorize(&mut ctx, path, *method, *target, *restarts, *seed),
        Cmd::Bounds {
            path,
            n,
            witness,
            factor,
        } => cmd_bounds(&mut ctx, path.as_deref(), *n, witness, factor.as_deref()),
        Cmd::Orbit { path } => cmd_orbit(&mut ctx, path),
        Cmd::VerifyOrth { m, a, factor } => cmd_verify_orth(&mut ctx, m, a, factor.as_deref()),
    };
    let (code, body) = match result {
        Ok(r) => r,
        Err(DataError(msg)) => {
            return Outcome {
                code: EXIT_DATA,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    if code == EXIT_USAGE {
        let msg = body["error"]["message"].as_str().unwrap_or("usage error").to_string();
        return Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        };
    }

    let mut report = Map::new();
    report.insert("command".into(), to_json(&args));
    report.insert("inputs".into(), Value::Array(ctx.inputs));
    report.insert("tolerance".into(), to_json(&tol));
    report.insert("exit_code".into(), json!(code));
    report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    report.insert("result".into(), body);
    if cli.timing {
        report.insert("wall_time_s".into(), json!(start.elapsed().as_secs_f64()));
    }
    Outcome {
        code,
        stdout: to_canonical(&Value::Object(report)) + "\n",
        stderr: String::new(),
    }
}

type CmdResult = Result<(i32, Value), DataError>;

fn usage(msg: impl Into<String>) -> CmdResult {
    Ok((EXIT_USAGE, error_json("USAGE", msg.into())))
}

fn optional_factor(ctx: &mut Ctx, file: &MatrixFile, path: Option<&Path>) -> Result<Option<NonnegFactor>, DataError> {
    match path {
        Some(p) => {
            let f = ctx.load(p)?;
            f.factor
                .ok_or_else(|| DataError(format!("{}: file has no `factor`", p.display())))
                .map(Some)
        }
        None => Ok(file.factor.clone()),
    }
}

fn cmd_check(ctx: &mut Ctx, path: &Path, cone: ConeArg, max_depth: usize, factor: Option<&Path>) -> CmdResult {
    if max_depth == 0 {
        return usage("--max-depth must be at least 1");
    }
    let file = ctx.load(path)?;
    let m = &file.matrix;
    let tol = ctx.tol;
    let verdict = match cone {
        ConeArg::Nonneg => is_nonneg(m, tol),
        ConeArg::Psd => is_psd(m, tol),
        ConeArg::Copositive => is_copositive(m, tol, max_depth),
        ConeArg::Dnn => is_dnn(m, tol),
        ConeArg::Cp | ConeArg::CpInterior => {
            let v = optional_factor(ctx, &file, factor)?.unwrap_or_else(|| NonnegFactor::empty(m.n()));
            if v.n() != m.n() {
                return Err(DataError(format!(
                    "factor has order {}, matrix has order {}",
                    v.n(),
                    m.n()
                )));
            }
            match cone {
                ConeArg::Cp => verify_cp_factor(m, &v, tol),
                _ => cp_interior_verdict(m, &v, tol),
            }
        }
    };
    Ok((verdict_code(&verdict), to_json(&verdict)))
}

fn cmd_factorize(
    ctx: &mut Ctx,
    path: &Path,
    method: Method,
    target: Option<usize>,
    restarts: usize,
    seed: u64,
) -> CmdResult {
    let file = ctx.load(path)?;
    let m = &file.matrix;
    let tol = ctx.tol;
    let method_name = to_json(&format!("{method:?}").to_lowercase());
    let done = |v: &NonnegFactor, mut extra: Value| {
        extra["method"] = method_name.clone();
        extra["factor"] = factor_json(v);
        extra["p"] = json!(v.p());
        extra["residual"] = json!(v.residual(m));
        (EXIT_IN, extra)
    };
    let fail = |tag: &str, msg: String| {
        let mut e = error_json(tag, msg);
        e["method"] = method_name.clone();
        (EXIT_NOT_IN, e)
    };
    Ok(match method {
        Method::Dd => match dd_factorize(m, tol) {
            Ok(v) => done(&v, json!({})),
            Err(e) => fail(e.tag(), e.to_string()),
        },
        Method::Posdd => match positive_dd_factorize(m, tol) {
            Ok((v, cert)) => done(
                &v,
                json!({ "interior": { "positive_column": cert.positive_column, "rank": cert.rank } }),
            ),
            Err(e) => fail(e.tag(), e.to_string()),
        },
        Method::Cp3 => match cp3_factorize(m, tol) {
            Ok(v) => done(&v, json!({})),
            Err(e) => fail(e.tag(), e.to_string()),
        },
        Method::Horn6 => {
            let Some(v) = &file.factor else {
                return Err(DataError(format!(
                    "{}: horn6 needs a `factor` in the file",
                    path.display()
                )));
            };
            if v.residual(m) > tol.threshold(m.max_abs()) {
                return Err(DataError(format!(
                    "{}: `factor` does not reproduce `data`",
                    path.display()
                )));
            }
            match horn_orthogonal_factorize(v, tol) {
                Ok(h) => done(
                    &h.factor,
                    json!({ "cone_of_column": h.cone_of_column, "coefficients": h.coefficients }),
                ),
                Err(e) => fail(e.tag(), e.to_string()),
            }
        }
        Method::Heuristic => {
            let p = target.unwrap_or_else(|| num_rank(m, tol).max(1));
            let opts = HeuristicOptions {
                restarts,
                seed,
                initial: file.factor.clone(),
                ..Default::default()
            };
            match heuristic_min_factor(m, p, &opts, tol) {
                HeuristicOutcome::Success {
                    factor,
                    restart,
                    iterations,
                    ..
                } => done(
                    &factor,
                    json!({ "status": "SUCCESS", "target": p, "restart": restart, "iterations": iterations }),
                ),
                HeuristicOutcome::Failed { reason, best_residual } => (
                    EXIT_UNDECIDED,
                    json!({
                        "method": method_name,
                        "status": "FAILED",
                        "target": p,
                        "reason": reason,
                        "best_residual": if best_residual.is_finite() { json!(best_residual) } else { Value::Null },
                    }),
                ),
            }
        }
    })
}

fn cmd_bounds(
    ctx: &mut Ctx,
    path: Option<&Path>,
    n: Option<usize>,
    witnesses: &[PathBuf],
    factor: Option<&Path>,
) -> CmdResult {
    match (path, n) {
        (None, Some(n)) => {
            if n == 0 {
                return usage("--n must be positive");
            }
            let mut r = to_json(&pn_table_report(n));
            r["djl_lower"] = json!(djl_lower(n));
            r["babe"] = json!(babe(n));
            Ok((EXIT_IN, r))
        }
        (Some(path), None) => {
            let file = ctx.load(path)?;
            let v = optional_factor(ctx, &file, factor)?;
            let mut ws = Vec::new();
            for w in witnesses {
                ws.push(ctx.load(w)?.matrix);
            }
            Ok(match cp_rank_interval(&file.matrix, v.as_ref(), &ws, ctx.tol) {
                Ok(r) => (EXIT_IN, to_json(&r)),
                Err(e) => (EXIT_NOT_IN, error_json(e.tag(), e.to_string())),
            })
        }
        _ => usage("give either a matrix file or --n"),
    }
}

fn cmd_orbit(ctx: &mut Ctx, path: &Path) -> CmdResult {
    let file = ctx.load(path)?;
    let a = &file.matrix;
    let tol = ctx.tol;
    let class = match classify_rank12(a, tol) {
        Ok(c) => c,
        Err(e) => return Ok((EXIT_NOT_IN, error_json(e.tag(), e.to_string()))),
    };
    let red = zero_diag_reduce(a, tol);
    let horn = red
        .reduced
        .as_ref()
        .filter(|_| red.structure_ok)
        .and_then(|s| horn_orbit_recognize(s, tol));
    let mut body = json!({
        "class": class,
        "zero_diag": {
            "zero": red.zero,
            "kept": red.kept,
            "structure_ok": red.structure_ok,
            "nonneg": red.nonneg,
            "violates_zeroext": red.violates_zeroext(!red.nonneg),
        },
        "horn_block_witness": horn,
    });
    if red.nonneg {
        body["nonneg_extreme"] = json!(nonneg_extreme_check(a, tol).unwrap_or(false));
    }
    let code = if class.tag == ExtremeTag::UnknownExtremeClass {
        EXIT_UNDECIDED
    } else {
        EXIT_IN
    };
    Ok((code, body))
}

fn cmd_verify_orth(ctx: &mut Ctx, mpath: &Path, apath: &Path, factor: Option<&Path>) -> CmdResult {
    let mf = ctx.load(mpath)?;
    let af = ctx.load(apath)?;
    let (m, a) = (&mf.matrix, &af.matrix);
    if m.n() != a.n() {
        return Err(DataError(format!("M has order {}, A has order {}", m.n(), a.n())));
    }
    let tol = ctx.tol;
    let v = optional_factor(ctx, &mf, factor)?;
    let column = match orth_column_check(m, a, tol) {
        Ok(c) => c,
        Err(e) => return Ok((EXIT_NOT_IN, error_json(e.tag(), e.to_string()))),
    };
    let mut ok = column.check == Check::Pass;
    let anti = match anti_dd_check(m, a, tol) {
        Ok(r) => {
            ok &= r.all_pass;
            to_json(&r)
        }
        Err(e) => error_json(e.tag(), e.to_string()),
    };
    let mut body = json!({
        "column_check": column,
        "anti_dd": anti,
        "rank3": rank3_witness_check(m, a, tol).map(|r| to_json(&r)).unwrap_or(Value::Null),
    });
    if let Some(v) = v {
        if v.residual(m) > tol.threshold(m.max_abs()) {
            return Err(DataError("factor does not reproduce M".into()));
        }
        let mut checks = Vec::new();
        for i in 0..m.n() {
            let r = orth_nullspace_check(m, a, &v, i, tol).expect("guard already passed");
            ok &= r.check != Check::Fail;
            checks.push(r);
        }
        body["nullspace"] = to_json(&checks);
    }
    Ok((if ok { EXIT_IN } else { EXIT_NOT_IN }, body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_resolution() {
        assert_eq!(resolve_tol(None, None).unwrap(), Tolerance::default());
        assert_eq!(resolve_tol(None, Some("1e-6")).unwrap(), Tolerance::uniform(1e-6));
        assert_eq!(resolve_tol(Some(1e-3), Some("1e-6")).unwrap(), Tolerance::uniform(1e-3));
        assert!(resolve_tol(None, Some("abc")).is_err());
        assert!(resolve_tol(Some(-1.0), None).is_err());
    }

    #[test]
    fn usage_errors() {
        let out = run(&["check".into()], None);
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(&["frobnicate".into()], None);
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(&["bounds".into()], None);
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(&["--help".into()], None);
        assert_eq!(out.code, 0);
    }

    #[test]
    fn table_mode() {
        let out = run(&["bounds".into(), "--n".into(), "6".into()], None);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["result"]["best_interval"], json!([9, 15]));
    }
}
