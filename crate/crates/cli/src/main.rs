//! Batch command-line front end: every library operation behind a
//! subcommand, emitting JSON/CSV artifacts plus a run manifest that echoes
//! the full effective configuration.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rug::Float;
use serde_json::{json, Value};

use oscgauss::asymptotics::{predict, szego_d, weight_w, ComparisonRecord, RegionConfig};
use oscgauss::io::{complex_to_json, float_to_csv_cell, float_to_decimal};
use oscgauss::orthopoly::{
    build_recurrence, eval_poly, integrate, moments, oracle_integrate, quadrature_rule, zeros,
    ProblemParams,
};
use oscgauss::potential::{
    classify, solve_lambda0, trace_scurve, trace_trajectory, zstar_launch_angles, Regime,
};
use oscgauss::verify::{cdf_report, convergence_table, zero_curve_report, QuantityId};
use oscgauss::{Error, MPComplex, PrecisionContext};

/// exit code for configuration errors
const EXIT_CONFIG: u8 = 2;
/// exit code for ExistenceFailure
const EXIT_EXISTENCE: u8 = 3;
/// exit code for NonConvergence / PrecisionExhausted
const EXIT_PRECISION: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
    fn as_str(self) -> &'static str {
        self.ext()
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "oscgauss",
    version,
    about = "Gaussian quadrature and asymptotics for the oscillatory weight e^{i omega x} on [-1,1]"
)]
struct Cli {
    /// working precision in decimal digits (>= 20)
    #[arg(long, global = true, default_value_t = 40)]
    digits: u32,
    /// output artifact path (default: <command>.<format>)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// artifact format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// Solve h(lambda0) = 0 for the critical coupling
    Lambda0,
    /// Moment table m_k = int x^k e^{i omega x} dx for k <= 2n
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Three-term recurrence coefficients up to degree n
    Recurrence {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Zeros of the degree-n orthogonal polynomial
    Zeros {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        /// curve trace step for the initial guesses
        #[arg(long, default_value_t = 2e-3)]
        step: f64,
    },
    /// n-point Gaussian quadrature rule for the oscillatory weight
    Quadrature {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 2e-3)]
        step: f64,
    },
    /// Apply the n-point rule to a named integrand and compare to the
    /// adaptive reference integrator
    Integrate {
        /// one of: one, z, z2, exp, cos, sin, runge
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 2e-3)]
        step: f64,
    },
    /// Trace the zero-attracting curve gamma_lambda
    Curve {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 2e-3)]
        step: f64,
        /// curve corrector tolerance, as a power of ten (e.g. 1e-20)
        #[arg(long, default_value_t = 1e-20)]
        tol: f64,
    },
    /// Trace the critical trajectories through the double zero z* = 2i/lambda
    Trajectories {
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 2e-3)]
        step: f64,
    },
    /// Classify the coupling regime (single arc / critical / two arcs)
    Classify {
        #[arg(long)]
        lambda: f64,
    },
    /// Evaluate the governing asymptotic formula at given points and compare
    /// against the computed polynomial
    Asymptotics {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        /// semicolon-separated points, each "re,im"
        #[arg(long)]
        points: String,
        /// endpoint disc radius
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, default_value_t = 2e-3)]
        step: f64,
    },
    /// Verification reports over an n grid
    Verify {
        /// one of: zero_curve, cdf, convergence, szego
        #[arg(long)]
        report: String,
        /// comma-separated n grid
        #[arg(long)]
        grid: String,
        #[arg(long)]
        lambda: f64,
        /// convergence-table quantity (a2, b, outer, inner, endpoint)
        #[arg(long)]
        quantity: Option<String>,
        #[arg(long, default_value_t = 2e-3)]
        step: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lambda0 => "lambda0",
            Command::Moments { .. } => "moments",
            Command::Recurrence { .. } => "recurrence",
            Command::Zeros { .. } => "zeros",
            Command::Quadrature { .. } => "quadrature",
            Command::Integrate { .. } => "integrate",
            Command::Curve { .. } => "curve",
            Command::Trajectories { .. } => "trajectories",
            Command::Classify { .. } => "classify",
            Command::Asymptotics { .. } => "asymptotics",
            Command::Verify { .. } => "verify",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(path) => {
            println!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::DomainError(_) | Error::BranchCurveRequired => EXIT_CONFIG,
        Error::ExistenceFailure { .. } => EXIT_EXISTENCE,
        Error::NonConvergence(_) | Error::PrecisionExhausted(_) => EXIT_PRECISION,
        _ => 1,
    }
}

/// Resolve the coupling: exactly one of omega/lambda must be given alongside n.
fn resolve_omega(
    n: usize,
    omega: Option<f64>,
    lambda: Option<f64>,
    ctx: &PrecisionContext,
) -> Result<(Float, Float), Error> {
    let (om, lam) = match (omega, lambda) {
        (Some(o), None) => {
            if !(o.is_finite() && o >= 0.0) {
                return Err(Error::DomainError(format!("omega must be >= 0, got {o}")));
            }
            let om = ctx.float(o);
            let lam = Float::with_val(ctx.prec(), &om) / Float::with_val(ctx.prec(), n as f64);
            (om, lam)
        }
        (None, Some(l)) => {
            if !(l.is_finite() && l >= 0.0) {
                return Err(Error::DomainError(format!("lambda must be >= 0, got {l}")));
            }
            let lam = ctx.float(l);
            let om = Float::with_val(ctx.prec(), &lam) * Float::with_val(ctx.prec(), n as f64);
            (om, lam)
        }
        _ => {
            return Err(Error::DomainError(
                "give exactly one of --omega and --lambda".into(),
            ))
        }
    };
    Ok((om, lam))
}

/// Trace the curve when the coupling is subcritical; zeros then start from
/// equal-mass points on it.
fn maybe_curve(
    lambda: &Float,
    step: f64,
    ctx: &PrecisionContext,
) -> Result<Option<oscgauss::potential::SCurve>, Error> {
    if classify(lambda, ctx)?.regime != Regime::SingleArc {
        return Ok(None);
    }
    Ok(Some(trace_scurve(lambda, step, &ctx.ten_pow(-20), ctx)?))
}

fn run(cli: &Cli) -> Result<PathBuf, Error> {
    if cli.digits < 20 {
        return Err(Error::DomainError(format!(
            "--digits must be at least 20, got {}",
            cli.digits
        )));
    }
    let ctx = PrecisionContext::new(cli.digits)?;
    let out = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.{}", cli.command.name(), cli.format.ext())));

    let artifact = build_artifact(cli, &ctx)?;
    let body = match (&artifact, cli.format) {
        (Artifact::Json(v), Format::Json) => serde_json::to_string_pretty(v)? + "\n",
        (Artifact::Json(v), Format::Csv) => json_to_csv(v),
        (Artifact::Text(s), _) => s.clone(),
    };
    atomic_write(&out, body.as_bytes())?;
    let manifest = manifest_for(cli, &out);
    let mpath = out.with_extension(format!(
        "{}manifest.json",
        out.extension()
            .map(|e| format!("{}.", e.to_string_lossy()))
            .unwrap_or_default()
    ));
    atomic_write(&mpath, (serde_json::to_string_pretty(&manifest)? + "\n").as_bytes())?;
    Ok(out)
}

/// Either a JSON artifact (rendered per --format) or a preformatted body.
enum Artifact {
    Json(Value),
    Text(String),
}

fn build_artifact(cli: &Cli, ctx: &PrecisionContext) -> Result<Artifact, Error> {
    let p = ctx.prec();
    match &cli.command {
        Command::Lambda0 => {
            let l0 = solve_lambda0(ctx);
            let h = oscgauss::potential::h_of_lambda(&l0, ctx)?;
            Ok(Artifact::Json(json!({
                "schema": oscgauss::SCHEMA_TAG,
                "kind": "lambda0",
                "lambda0": float_to_decimal(&l0, ctx.roundtrip_digits()),
                "h_residual": h.to_f64(),
            })))
        }
        Command::Moments { n, omega, lambda } => {
            let (om, _) = resolve_omega(*n, *omega, *lambda, ctx)?;
            let table = moments(&om, 2 * n, ctx)?;
            Ok(Artifact::Json(table.to_json(ctx)))
        }
        Command::Recurrence { n, omega, lambda } => {
            let (om, _) = resolve_omega(*n, *omega, *lambda, ctx)?;
            let params = ProblemParams::new(*n, om, *ctx)?;
            let (_, rec) = build_recurrence(&params)?;
            // render at the build policy precision so the decimal artifact
            // re-parses into the stored coefficients bit-exactly
            let render = policy_ctx(cli.digits, *n)?;
            Ok(Artifact::Json(rec.to_json(&render)))
        }
        Command::Zeros {
            n,
            omega,
            lambda,
            step,
        } => {
            let (om, lam) = resolve_omega(*n, *omega, *lambda, ctx)?;
            let params = ProblemParams::new(*n, om, *ctx)?;
            let (_, rec) = build_recurrence(&params)?;
            let curve = maybe_curve(&lam, *step, ctx)?;
            let zs = zeros(&rec, *n, ctx, curve.as_ref())?;
            Ok(Artifact::Json(json!({
                "schema": oscgauss::SCHEMA_TAG,
                "kind": "zeros",
                "n": n,
                "omega": float_to_decimal(params.omega(), ctx.roundtrip_digits()),
                "zeros": zs.iter().map(|z| complex_to_json(z, ctx)).collect::<Vec<_>>(),
            })))
        }
        Command::Quadrature {
            n,
            omega,
            lambda,
            step,
        } => {
            let (om, lam) = resolve_omega(*n, *omega, *lambda, ctx)?;
            let params = ProblemParams::new(*n, om.clone(), *ctx)?;
            let (_, rec) = build_recurrence(&params)?;
            let curve = maybe_curve(&lam, *step, ctx)?;
            let rule = quadrature_rule(&rec, *n, &om, ctx, curve.as_ref())?;
            Ok(Artifact::Json(rule.to_json(ctx)))
        }
        Command::Integrate {
            f,
            n,
            omega,
            lambda,
            step,
        } => {
            let func = named_integrand(f)?;
            let (om, lam) = resolve_omega(*n, *omega, *lambda, ctx)?;
            let params = ProblemParams::new(*n, om.clone(), *ctx)?;
            let (_, rec) = build_recurrence(&params)?;
            let curve = maybe_curve(&lam, *step, ctx)?;
            let rule = quadrature_rule(&rec, *n, &om, ctx, curve.as_ref())?;
            let via_rule = integrate(&rule, |z| Ok(func(z, p)))?;
            let via_oracle = oracle_integrate(|z| Ok(func(z, p)), &om, ctx)?;
            let gap = via_rule.sub(&via_oracle).abs();
            let scale = via_oracle.abs();
            Ok(Artifact::Json(json!({
                "schema": oscgauss::SCHEMA_TAG,
                "kind": "integrate",
                "integrand": f,
                "n": n,
                "omega": float_to_decimal(&om, ctx.roundtrip_digits()),
                "rule_value": complex_to_json(&via_rule, ctx),
                "oracle_value": complex_to_json(&via_oracle, ctx),
                "abs_gap": gap.to_f64(),
                "rel_gap": if scale.is_zero() { gap.to_f64() } else { (gap / scale).to_f64() },
            })))
        }
        Command::Curve { lambda, step, tol } => {
            let lam = ctx.float(*lambda);
            let exp = tol.log10();
            if !(exp.is_finite() && *tol > 0.0 && *tol < 1e-4) {
                return Err(Error::DomainError(format!(
                    "--tol must be a small positive tolerance, got {tol}"
                )));
            }
            let curve_tol = ctx.ten_pow(exp.round() as i32);
            let curve = trace_scurve(&lam, *step, &curve_tol, ctx)?;
            match cli.format {
                Format::Json => Ok(Artifact::Json(curve.to_json(ctx))),
                Format::Csv => Ok(Artifact::Text(curve.to_csv(ctx))),
            }
        }
        Command::Trajectories { lambda, step } => {
            let lam = ctx.float(*lambda);
            if lam.is_zero() {
                return Err(Error::DomainError(
                    "trajectories need lambda > 0 (the double zero is at 2i/lambda)".into(),
                ));
            }
            let zstar = oscgauss::potential::z_star(&lam, ctx)?;
            let mut trajs = Vec::new();
            for angle in zstar_launch_angles(ctx) {
                trajs.push(trace_trajectory(&zstar, &lam, angle.to_f64(), *step, ctx)?);
            }
            match cli.format {
                Format::Json => Ok(Artifact::Json(json!({
                    "schema": oscgauss::SCHEMA_TAG,
                    "kind": "trajectories",
                    "lambda": float_to_decimal(&lam, ctx.roundtrip_digits()),
                    "trajectories": trajs.iter().map(|t| t.to_json(ctx)).collect::<Vec<_>>(),
                }))),
                Format::Csv => {
                    let mut body = String::from("trajectory,index,re,im\n");
                    for (ti, t) in trajs.iter().enumerate() {
                        for (i, z) in t.points.iter().enumerate() {
                            body.push_str(&format!(
                                "{},{},{},{}\n",
                                ti,
                                i,
                                float_to_csv_cell(&z.re, ctx),
                                float_to_csv_cell(&z.im, ctx)
                            ));
                        }
                    }
                    Ok(Artifact::Text(body))
                }
            }
        }
        Command::Classify { lambda } => {
            let rec = classify(&ctx.float(*lambda), ctx)?;
            println!("{}", rec.regime.as_str());
            Ok(Artifact::Json(rec.to_json(ctx)))
        }
        Command::Asymptotics {
            n,
            omega,
            lambda,
            points,
            delta,
            step,
        } => {
            let (om, lam) = resolve_omega(*n, *omega, *lambda, ctx)?;
            let pts = parse_points(points, p)?;
            let curve = trace_scurve(&lam, *step, &ctx.ten_pow(-20), ctx)?;
            let cfg = RegionConfig {
                delta: *delta,
                width: RegionConfig::default().width,
            };
            let params = ProblemParams::new(n + 2, om, *ctx)?;
            let (_, rec) = build_recurrence(&params)?;
            let mut records = Vec::new();
            for z in &pts {
                let pred = predict(z, *n, &lam, &curve, &cfg, ctx)?;
                let computed = eval_poly(&rec, *n, z)?;
                records.push(ComparisonRecord {
                    z: z.clone(),
                    n: *n,
                    lambda: lam.clone(),
                    formula: pred.formula,
                    predicted: pred.value,
                    computed,
                });
            }
            match cli.format {
                Format::Json => Ok(Artifact::Json(json!({
                    "schema": oscgauss::SCHEMA_TAG,
                    "kind": "asymptotics",
                    "records": records.iter().map(|r| r.to_json(ctx)).collect::<Vec<_>>(),
                }))),
                Format::Csv => {
                    let mut body = String::from(ComparisonRecord::csv_header());
                    body.push('\n');
                    for r in &records {
                        body.push_str(&r.to_csv_row(ctx));
                        body.push('\n');
                    }
                    Ok(Artifact::Text(body))
                }
            }
        }
        Command::Verify {
            report,
            grid,
            lambda,
            quantity,
            step,
        } => {
            let lam = ctx.float(*lambda);
            let ns = parse_grid(grid)?;
            match report.as_str() {
                "zero_curve" | "cdf" => {
                    let curve = trace_scurve(&lam, *step, &ctx.ten_pow(-20), ctx)?;
                    let mut reports = Vec::new();
                    for &n in &ns {
                        let params = ProblemParams::from_lambda(n, lam.clone(), *ctx)?;
                        let (_, rec) = build_recurrence(&params)?;
                        let zs = zeros(&rec, n, ctx, Some(&curve))?;
                        let v = if report == "zero_curve" {
                            zero_curve_report(&zs, &curve)?.to_json(ctx)
                        } else {
                            cdf_report(&zs, &curve)?.to_json(ctx)
                        };
                        reports.push(v);
                    }
                    Ok(Artifact::Json(json!({
                        "schema": oscgauss::SCHEMA_TAG,
                        "kind": format!("verify/{report}"),
                        "lambda": float_to_decimal(&lam, ctx.roundtrip_digits()),
                        "reports": reports,
                    })))
                }
                "convergence" => {
                    let q = QuantityId::parse(quantity.as_deref().ok_or_else(|| {
                        Error::DomainError("convergence report needs --quantity".into())
                    })?)?;
                    let table = convergence_table(q, &ns, &lam, ctx)?;
                    match cli.format {
                        Format::Json => Ok(Artifact::Json(table.to_json(ctx))),
                        Format::Csv => Ok(Artifact::Text(table.to_csv(ctx))),
                    }
                }
                "szego" => {
                    // D+ D- = W spot checks at the grid sizes taken as omega
                    let mut rows = Vec::new();
                    let eps = oscgauss::precision::side_limit_offset(ctx);
                    for &n in &ns {
                        let om = ctx.float(n as f64);
                        let mut worst = 0f64;
                        for j in 0..20 {
                            let x = -0.95 + 0.1 * j as f64;
                            let zp = MPComplex::new(ctx.float(x), eps.clone());
                            let zm = MPComplex::new(ctx.float(x), -eps.clone());
                            let prod = szego_d(&zp, &om, ctx)?.mul(&szego_d(&zm, &om, ctx)?);
                            let w = weight_w(&MPComplex::from_real(ctx.float(x)), &om, ctx);
                            worst = worst.max(prod.sub(&w).abs().to_f64());
                        }
                        rows.push(json!({ "omega": n, "max_defect": worst }));
                    }
                    Ok(Artifact::Json(json!({
                        "schema": oscgauss::SCHEMA_TAG,
                        "kind": "verify/szego",
                        "rows": rows,
                    })))
                }
                other => Err(Error::DomainError(format!(
                    "unknown report {other:?}; expected zero_curve, cdf, convergence or szego"
                ))),
            }
        }
    }
}

/// The rendering context matching the moment/recurrence build policy
/// `digits(n) = max(user, 40 + 2n)`.
fn policy_ctx(user_digits: u32, n: usize) -> Result<PrecisionContext, Error> {
    PrecisionContext::new(user_digits.max(40 + 2 * n as u32))
}

/// Built-in integrands by name (the weight e^{i omega x} is supplied by the
/// rule itself).
fn named_integrand(name: &str) -> Result<fn(&MPComplex, u32) -> MPComplex, Error> {
    Ok(match name {
        "one" => |_z: &MPComplex, p: u32| MPComplex::one(p),
        "z" => |z: &MPComplex, _p: u32| z.clone(),
        "z2" => |z: &MPComplex, _p: u32| z.mul(z),
        "exp" => |z: &MPComplex, _p: u32| z.exp(),
        "cos" => |z: &MPComplex, _p: u32| z.cos(),
        "sin" => |z: &MPComplex, _p: u32| z.sin(),
        "runge" => |z: &MPComplex, p: u32| {
            let sq = z.mul(z).scale(&Float::with_val(p, 25));
            MPComplex::one(p).add(&sq).recip()
        },
        other => {
            return Err(Error::DomainError(format!(
                "unknown integrand {other:?}; expected one, z, z2, exp, cos, sin or runge"
            )))
        }
    })
}

fn parse_points(spec: &str, prec: u32) -> Result<Vec<MPComplex>, Error> {
    let mut out = Vec::new();
    for part in spec.split(';').filter(|s| !s.trim().is_empty()) {
        let mut it = part.split(',');
        let (re, im) = (it.next(), it.next());
        match (re, im, it.next()) {
            (Some(r), Some(i), None) => {
                let re: f64 = r.trim().parse().map_err(|_| bad_point(part))?;
                let im: f64 = i.trim().parse().map_err(|_| bad_point(part))?;
                out.push(MPComplex::from_f64(prec, re, im));
            }
            _ => return Err(bad_point(part)),
        }
    }
    if out.is_empty() {
        return Err(Error::DomainError(
            "--points needs at least one \"re,im\" pair".into(),
        ));
    }
    Ok(out)
}

fn bad_point(part: &str) -> Error {
    Error::DomainError(format!("malformed point {part:?}; expected \"re,im\""))
}

fn parse_grid(grid: &str) -> Result<Vec<usize>, Error> {
    let ns: Vec<usize> = grid
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::DomainError(format!("bad grid entry {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    if ns.is_empty() {
        return Err(Error::DomainError("--grid needs at least one n".into()));
    }
    Ok(ns)
}

/// Write atomically: temp file in the target directory, then rename.
fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), Error> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Full config echo: rerunning the recorded argv reproduces the artifact.
fn manifest_for(cli: &Cli, out: &Path) -> Value {
    json!({
        "schema": oscgauss::SCHEMA_TAG,
        "kind": "manifest",
        "library_version": oscgauss::VERSION,
        "command": cli.command.name(),
        "argv": std::env::args().collect::<Vec<_>>(),
        "config": {
            "digits": cli.digits,
            "format": cli.format.as_str(),
            "out": out.display().to_string(),
        },
    })
}

/// Generic JSON-to-CSV fallback for artifacts without a native CSV shape:
/// one `key,value` row per top-level scalar, arrays flattened row-wise.
fn json_to_csv(v: &Value) -> String {
    let mut body = String::from("key,value\n");
    if let Some(obj) = v.as_object() {
        for (k, val) in obj {
            match val {
                Value::Array(items) => {
                    for (i, item) in items.iter().enumerate() {
                        body.push_str(&format!("{k}[{i}],{}\n", csv_scalar(item)));
                    }
                }
                other => body.push_str(&format!("{k},{}\n", csv_scalar(other))),
            }
        }
    }
    body
}

fn csv_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(o) => match (o.get("re"), o.get("im")) {
            (Some(Value::String(re)), Some(Value::String(im))) => format!("{re}+{im}i"),
            _ => v.to_string().replace(',', ";"),
        },
        other => other.to_string().replace(',', ";"),
    }
}
