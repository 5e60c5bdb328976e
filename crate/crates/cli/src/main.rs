//! `flexion`: verify flexion-calculus identities, print exact bimould
//! components, and run power-series operations from the command line.

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

use flexion_core::bimould::{Backend, Bimould};
use flexion_core::giff::{
    coproduct_pairing, dilator, giff_exp, giff_log, ps_compose, ps_inverse, Derivation,
    PowerSeries, ReFamily, SecondaryKind,
};
use flexion_core::ratfun::ratfun_string;
use flexion_core::scalar::Rational;
use flexion_core::units::{primary, unit_by_spec, PrimaryKind};
use flexion_core::verify::{backend_name, run_check, CheckSpec, CheckStatus, CHECKS};

#[derive(Parser)]
#[command(
    name = "flexion",
    about = "Exact engine for flexion calculus on bimoulds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Eval,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Eval => Backend::Eval,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one named identity check, or the whole catalogue.
    Verify {
        /// Check name from the catalogue, or "all". Use --list for names.
        #[arg(long, default_value = "all")]
        check: String,
        /// Flexion unit: polar-u, polar-v, or `custom:<path>`.
        #[arg(long, default_value = "polar-u")]
        unit: String,
        /// Identity-testing strategy.
        #[arg(long, value_enum, default_value = "exact")]
        backend: BackendArg,
        /// Truncation length override (default: per-check tier).
        #[arg(long)]
        max_length: Option<usize>,
        /// Evaluation points per length for the eval backend.
        #[arg(long, default_value_t = 16)]
        points: usize,
        /// PRNG seed; embedded in reports so witnesses replay.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Evaluation modulus override (prime, at least 60 bits); takes
        /// precedence over the FLEXION_PRIME environment variable.
        #[arg(long)]
        prime: Option<u64>,
        /// Write the JSON report(s) to this file (one per line for "all").
        #[arg(long)]
        report: Option<std::path::PathBuf>,
        /// List the catalogue with one-line descriptions and exit.
        #[arg(long, default_value_t = false)]
        list: bool,
    },
    /// Print the exact canonical form of one bimould component.
    Show {
        /// `ez | es | oz | os | ess | oss | dess | doss | re:<r> | dro:<r>`
        #[arg(long)]
        bimould: String,
        #[arg(long, default_value = "polar-u")]
        unit: String,
        /// Component length r.
        #[arg(long)]
        length: usize,
    },
    /// Power-series operations on explicit coefficient lists.
    Giff {
        /// compose | inverse | exp | log | dilator | coproduct
        #[arg(long)]
        op: String,
        /// Tail coefficients a_1, a_2, ... (rationals "p/q"); a_0 = 1 is
        /// implicit. For exp: the derivation coefficients eps_1, eps_2, ...
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<String>,
        /// Second series for compose/coproduct.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs2: Option<Vec<String>>,
        /// Truncation order.
        #[arg(long)]
        order: usize,
    },
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: i64 = num.parse().map_err(|_| format!("bad numerator in '{text}'"))?;
    let d: i64 = den.parse().map_err(|_| format!("bad denominator in '{text}'"))?;
    if d == 0 {
        return Err(format!("zero denominator in '{text}'"));
    }
    Ok(Rational::from_frac(n, d))
}

fn parse_series(tail: &[String], order: usize) -> Result<PowerSeries, String> {
    let mut coeffs: Vec<Rational> = tail.iter().map(|t| parse_rational(t)).collect::<Result<_, _>>()?;
    coeffs.resize(order - 1, Rational::zero());
    Ok(PowerSeries::from_coeffs(&coeffs))
}

fn series_string(f: &PowerSeries) -> String {
    (1..f.order())
        .map(|r| f.coeff(r).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn derivation_string(d: &Derivation) -> String {
    (1..=d.order())
        .map(|r| d.coeff(r).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn eval_prime_override() -> Result<Option<u64>, String> {
    match std::env::var("FLEXION_PRIME") {
        Ok(text) => {
            let p: u64 = text
                .trim()
                .parse()
                .map_err(|_| format!("FLEXION_PRIME is not an integer: {text}"))?;
            Ok(Some(p))
        }
        Err(_) => Ok(None),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    check: String,
    unit: String,
    backend: Backend,
    max_length: Option<usize>,
    points: usize,
    seed: u64,
    prime: Option<u64>,
    report_path: Option<std::path::PathBuf>,
    list: bool,
) -> Result<ExitCode, String> {
    if let Some(l) = max_length {
        if l > 8 {
            return Err("max-length is capped at 8 (the packed variable budget)".into());
        }
    }
    if list {
        for def in CHECKS {
            let backends = match (def.exact, def.eval) {
                (true, true) => "exact|eval",
                (true, false) => "exact",
                _ => "eval",
            };
            println!("{:28} [{}] {}", def.name, backends, def.about);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let mut template = CheckSpec::new("")
        .with_unit(unit)
        .with_backend(backend)
        .with_seed(seed)
        .with_points(points);
    template.max_length = max_length;
    template.prime = match prime {
        Some(p) => Some(p),
        None => eval_prime_override()?,
    };
    let reports = if check == "all" {
        flexion_core::verify::run_all(&template).map_err(|e| e.to_string())?
    } else {
        template.name = check;
        vec![run_check(&template).map_err(|e| e.to_string())?]
    };
    let mut all_pass = true;
    let mut any_skipped = false;
    let mut lines = Vec::with_capacity(reports.len());
    for rep in &reports {
        let status = match &rep.status {
            CheckStatus::Pass => "pass".to_string(),
            CheckStatus::Fail(w) => {
                all_pass = false;
                format!("FAIL [{} at length {}]", w.identity, w.length)
            }
            CheckStatus::Skipped(reason) => {
                any_skipped = true;
                format!("skipped ({reason})")
            }
        };
        println!(
            "{:28} {:30} unit={} backend={} L={} wall={}ms",
            rep.check,
            status,
            rep.unit,
            backend_name(rep.backend),
            rep.max_length,
            rep.wall_ms
        );
        lines.push(rep.to_json());
    }
    if let Some(path) = report_path {
        std::fs::write(&path, lines.join("\n") + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(if all_pass && !any_skipped {
        ExitCode::SUCCESS
    } else if all_pass {
        ExitCode::from(2)
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_show(bimould: String, unit_spec: String, length: usize) -> Result<ExitCode, String> {
    if length > 8 {
        return Err("length is capped at 8 (the packed variable budget)".into());
    }
    let unit = unit_by_spec(&unit_spec).map_err(|e| e.to_string())?;
    let trunc = length.max(1);
    let build = |name: &str| -> Result<Bimould, String> {
        if let Some(kind) = PrimaryKind::parse(name) {
            return Ok(primary(&unit, kind, trunc, Backend::Exact));
        }
        if let Some(kind) = SecondaryKind::parse(name) {
            return flexion_core::giff::secondary(&unit, kind, trunc, Backend::Exact)
                .map_err(|e| e.to_string());
        }
        if let Some(r) = name.strip_prefix("re:") {
            let r: usize = r.parse().map_err(|_| format!("bad index in '{name}'"))?;
            if r == 0 || r > trunc {
                return Err(format!("re:{r} needs 1 <= r <= length"));
            }
            let fam = ReFamily::new(&unit, trunc, Backend::Exact).map_err(|e| e.to_string())?;
            return Ok(fam.re(r).clone());
        }
        if let Some(r) = name.strip_prefix("dro:") {
            let r: usize = r.parse().map_err(|_| format!("bad index in '{name}'"))?;
            if r == 0 || r > trunc {
                return Err(format!("dro:{r} needs 1 <= r <= length"));
            }
            let fam = ReFamily::new(&unit, trunc, Backend::Exact).map_err(|e| e.to_string())?;
            return Ok(fam.dro(r).clone());
        }
        Err(format!(
            "unknown bimould '{name}' (expected ez|es|oz|os|ess|oss|dess|doss|re:<r>|dro:<r>)"
        ))
    };
    let b = build(&bimould)?;
    if length == 0 {
        println!("{}", b.constant_term());
    } else {
        println!("{}", ratfun_string(b.comp(length).as_ratfun()));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_giff(
    op: String,
    coeffs: Vec<String>,
    coeffs2: Option<Vec<String>>,
    order: usize,
) -> Result<ExitCode, String> {
    if order < 2 {
        return Err("order must be at least 2".into());
    }
    match op.as_str() {
        "compose" => {
            let f = parse_series(&coeffs, order)?;
            let g = parse_series(coeffs2.as_deref().ok_or("compose needs --coeffs2")?, order)?;
            println!("{}", series_string(&ps_compose(&f, &g)));
        }
        "inverse" => {
            let f = parse_series(&coeffs, order)?;
            println!("{}", series_string(&ps_inverse(&f)));
        }
        "exp" => {
            let mut eps: Vec<Rational> =
                coeffs.iter().map(|t| parse_rational(t)).collect::<Result<_, _>>()?;
            eps.resize(order - 1, Rational::zero());
            println!("{}", series_string(&giff_exp(&Derivation::from_coeffs(eps))));
        }
        "log" => {
            let f = parse_series(&coeffs, order)?;
            println!("{}", derivation_string(&giff_log(&f)));
        }
        "dilator" => {
            let f = parse_series(&coeffs, order)?;
            println!("{}", derivation_string(&dilator(&f)));
        }
        "coproduct" => {
            let f = parse_series(&coeffs, order)?;
            let g = parse_series(coeffs2.as_deref().ok_or("coproduct needs --coeffs2")?, order)?;
            let vals: Vec<String> = (2..=order)
                .map(|n| coproduct_pairing(&f, &g, n).to_string())
                .collect();
            println!("{}", vals.join(","));
        }
        other => return Err(format!("unknown giff op '{other}'")),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { check, unit, backend, max_length, points, seed, prime, report, list } => {
            cmd_verify(check, unit, backend.into(), max_length, points, seed, prime, report, list)
        }
        Command::Show { bimould, unit, length } => cmd_show(bimould, unit, length),
        Command::Giff { op, coeffs, coeffs2, order } => cmd_giff(op, coeffs, coeffs2, order),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
