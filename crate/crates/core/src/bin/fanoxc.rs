use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use fanoxc::chern::{euler_characteristic, twist, SheafClass};
use fanoxc::chow::{make_model, parse_expression};
use fanoxc::instanton::{
    elementary_transform, hoppe_region, instanton_invariants, pullback_family, serre_family,
    InstantonClass, PullbackFamilyParams, Rank0Data, SerreFamilyParams,
};
use fanoxc::ledger::{
    bundled_ledger, emit_report, parse_ledger, run_entries, ReportFormat, RunOptions,
};
use fanoxc::p2::sym_power_cohomology;
use fanoxc::rational::exact_string;
use fanoxc::xcoh::line_cohomology_x;
use fanoxc::{Error, Result};

/// Exact intersection theory and instanton invariants on the threefolds X_c = P(F_c).
#[derive(Parser)]
#[command(name = "fanoxc", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chow ring arithmetic.
    #[command(subcommand)]
    Chow(ChowCommand),
    /// Euler characteristic by Hirzebruch-Riemann-Roch.
    Chi(ChiArgs),
    /// Sheaf cohomology dimensions.
    #[command(subcommand)]
    Coh(CohCommand),
    /// Instanton invariants and families.
    #[command(subcommand)]
    Instanton(InstantonCommand),
    /// Run a verification ledger.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ModelArg {
    /// Second Chern class of F_c, 0..=4.
    #[arg(long = "c", allow_negative_numbers = true)]
    c: i64,
}

#[derive(Subcommand)]
enum ChowCommand {
    /// Normal form and degree of an expression in xi, f, h, K.
    Eval {
        #[command(flatten)]
        model: ModelArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Args)]
struct ChiArgs {
    #[command(flatten)]
    model: ModelArg,
    #[arg(long)]
    rank: u32,
    #[arg(long, allow_hyphen_values = true)]
    c1: String,
    #[arg(long, allow_hyphen_values = true)]
    c2: String,
    #[arg(long, allow_hyphen_values = true)]
    c3: Option<String>,
    /// Divisor to twist by before taking chi.
    #[arg(long, allow_hyphen_values = true)]
    twist: Option<String>,
}

#[derive(Subcommand)]
enum CohCommand {
    /// h^i(X_c, O(l1 xi + l2 f)).
    Line {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, allow_negative_numbers = true)]
        l1: i64,
        #[arg(long, allow_negative_numbers = true)]
        l2: i64,
    },
    /// h^i(P^2, S^m F_c (b)).
    Sym {
        #[command(flatten)]
        model: ModelArg,
        #[arg(short = 'm')]
        m: u32,
        #[arg(short = 'b', allow_negative_numbers = true)]
        b: i64,
    },
}

#[derive(Subcommand)]
enum InstantonCommand {
    /// Charge, admissibility flags and known Ext dimensions of (alpha, beta).
    Invariants {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(long, allow_negative_numbers = true)]
        beta: i64,
    },
    /// Bundles from m disjoint rational cubics.
    Serre {
        #[command(flatten)]
        model: ModelArg,
        #[arg(short = 'm')]
        m: u32,
    },
    /// Pullbacks of kernel bundles from the plane.
    Pullback {
        #[command(flatten)]
        model: ModelArg,
        #[arg(short = 'l')]
        l: u32,
    },
    /// Repeated elementary transformation along O_L(1).
    Transform {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
        #[arg(long, allow_negative_numbers = true)]
        beta: i64,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Divisor classes (a, b) in the stability half-plane.
    Hoppe {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, allow_negative_numbers = true)]
        amin: i64,
        #[arg(long, allow_negative_numbers = true)]
        amax: i64,
        #[arg(long, allow_negative_numbers = true)]
        bmin: i64,
        #[arg(long, allow_negative_numbers = true)]
        bmax: i64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Ledger file; defaults to the bundled ledger.
    #[arg(long)]
    ledger: Option<PathBuf>,
    /// Evaluate entries one at a time.
    #[arg(long)]
    serial: bool,
}

fn instanton_text(e: &InstantonClass) -> String {
    let opt = |v: Option<i64>| v.map_or("unknown".to_string(), |v| v.to_string());
    let mut s = format!(
        "c = {}\nc1 = 2*xi + 3*f\nc2 = {}\ncharge = {}\next1 = {}\next2 = {}\nulrich = {}\nadmissible = {}\n",
        e.c,
        e.sheaf_class().c2(),
        e.charge,
        opt(e.ext1),
        opt(e.ext2),
        e.ulrich,
        e.admissible()
    );
    for r in &e.reasons {
        s.push_str(&format!("reason: {r}\n"));
    }
    s
}

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: serde_json::Value,
}

fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(command: Command, json_out: bool) -> Result<(Output, ExitCode)> {
    let ok = |text: String, json: serde_json::Value| Ok((Output { text, json }, ExitCode::SUCCESS));
    match command {
        Command::Chow(ChowCommand::Eval { model, expr }) => {
            let m = make_model(model.c)?;
            let e = parse_expression(&expr, &m)?;
            let degree = exact_string(&e.degree());
            ok(
                format!("normal form: {e}\ndegree: {degree}\n"),
                json!({"normal_form": e.to_string(), "degree": degree}),
            )
        }
        Command::Chi(a) => {
            let m = make_model(a.model.c)?;
            let c3 = match &a.c3 {
                Some(t) => parse_expression(t, &m)?,
                None => m.zero(),
            };
            let s = SheafClass::new(
                a.rank,
                parse_expression(&a.c1, &m)?,
                parse_expression(&a.c2, &m)?,
                c3,
            )?;
            let s = match &a.twist {
                Some(t) => twist(&s, &parse_expression(t, &m)?)?,
                None => s,
            };
            let chi = exact_string(&euler_characteristic(&s)?);
            ok(format!("chi = {chi}\n"), json!({"chi": chi}))
        }
        Command::Coh(CohCommand::Line { model, l1, l2 }) => {
            let t = line_cohomology_x(model.c, l1, l2)?;
            ok(format!("{t}\n"), to_json(&t))
        }
        Command::Coh(CohCommand::Sym { model, m, b }) => {
            let t = sym_power_cohomology(model.c, m as i64, b)?;
            ok(format!("{t}\n"), to_json(&t))
        }
        Command::Instanton(cmd) => instanton(cmd).map(|o| (o, ExitCode::SUCCESS)),
        Command::Verify(v) => {
            let ledger = match &v.ledger {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    parse_ledger(&text)?
                }
                None => bundled_ledger(),
            };
            let report = run_entries(
                &ledger,
                RunOptions {
                    parallel: !v.serial,
                    record_timings: true,
                },
            );
            let format = if json_out {
                ReportFormat::Json
            } else {
                ReportFormat::Text
            };
            let bytes = emit_report(&report, format);
            let code = if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            let text = String::from_utf8(bytes).expect("utf-8 report");
            Ok((
                Output {
                    json: serde_json::from_str(&text).unwrap_or(serde_json::Value::Null),
                    text,
                },
                code,
            ))
        }
    }
}

fn instanton(cmd: InstantonCommand) -> Result<Output> {
    let out = |text: String, json: serde_json::Value| Ok(Output { text, json });
    match cmd {
        InstantonCommand::Invariants { model, alpha, beta } => {
            let e = instanton_invariants(alpha, beta, model.c)?;
            out(instanton_text(&e), to_json(&e))
        }
        InstantonCommand::Serre { model, m } => {
            let s = serre_family(SerreFamilyParams {
                m: m as i64,
                c: model.c,
            })?;
            let mut text = format!(
                "m = {}\nalpha = {}\nfamily dimension = {}\ncodimension = {}\nvalid = {}\nfamily dimension established = {}\n",
                s.m, s.instanton.alpha, s.family_dim, s.codimension, s.valid, s.family_dim_valid
            );
            text.push_str(&instanton_text(&s.instanton));
            for r in &s.reasons {
                text.push_str(&format!("note: {r}\n"));
            }
            out(text, to_json(&s))
        }
        InstantonCommand::Pullback { model, l } => {
            let p = pullback_family(PullbackFamilyParams {
                l: l as i64,
                c: model.c,
            })?;
            let mut text = format!(
                "l = {}\ndim M0 - dim G = {}\n4 c2 - c1^2 - 3 on the plane = {}\n",
                p.l, p.quotient_count, p.plane_count
            );
            text.push_str(&instanton_text(&p.instanton));
            out(text, to_json(&p))
        }
        InstantonCommand::Transform {
            model,
            alpha,
            beta,
            times,
        } => {
            let mut e = instanton_invariants(alpha, beta, model.c)?;
            for _ in 0..times {
                e = elementary_transform(&e, &Rank0Data::twisted_line())?;
            }
            out(instanton_text(&e), to_json(&e))
        }
        InstantonCommand::Hoppe {
            model,
            amin,
            amax,
            bmin,
            bmax,
        } => {
            let r = hoppe_region(model.c, (amin, amax), (bmin, bmax))?;
            let mut text = format!(
                "mu = {}\npairing (a xi + b f) h^2 = {}a + {}b\npoints = {}\n",
                r.mu,
                r.pairing.0,
                r.pairing.1,
                r.points.len()
            );
            for (a, b) in &r.points {
                text.push_str(&format!("{a} {b}\n"));
            }
            out(text, to_json(&r))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command, cli.json) {
        Ok((output, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if cli.json && !output.text.starts_with('{') {
                writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&output.json).expect("json")
                )
            } else {
                write!(stdout, "{}", output.text)
            };
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
