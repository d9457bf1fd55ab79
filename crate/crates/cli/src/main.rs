use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fuchsian_core::connection::check_flatness;
use fuchsian_core::criterion::{verify_theorem, Verdict, VerifyOptions};
use fuchsian_core::diffmod::{
    default_saturation_cap, is_regular, katz_rank, residue_exponents, saturation_oracle,
};
use fuchsian_core::fixture::Fixture;
use fuchsian_core::resolution::{embedded_resolution, intersection_matrix, DEFAULT_MAX_STEPS};
use fuchsian_core::scalar::Matrix;
use fuchsian_core::{Error, ErrorClass};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Exact formal invariants, plane curve resolution and regularity certificates.
#[derive(Parser, Debug)]
#[command(name = "fuchsian", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable output with the same field names as the text form.
    #[arg(long, global = true)]
    json: bool,
    /// Blow-up limit for embedded resolution.
    #[arg(long, global = true, value_name = "N")]
    max_steps: Option<usize>,
    /// Step cap for the lattice saturation cross-check.
    #[arg(long, global = true, value_name = "N")]
    saturation_cap: Option<usize>,
    /// Run the subcommand on every `*.toml` file in DIR, in parallel.
    #[arg(long, global = true, value_name = "DIR")]
    corpus: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Katz rank, slopes, H(0) and leading polynomial of a `[module]`.
    Katz(Input),
    /// Embedded resolution of the `[[germs]]` and its intersection matrix.
    Resolve(Input),
    /// Regularity certificate for the pullback to the `[curve]`.
    Verify(Input),
    /// Residue exponents of a regular `[module]`.
    Exponents(Input),
    /// Integrability of a `[connection]` or assembled `[model]`.
    Flatness(Input),
}

#[derive(clap::Args, Debug, Clone)]
struct Input {
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
}

/// A successful run: rendered text, JSON view and exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

struct Settings {
    json: bool,
    max_steps: Option<usize>,
    saturation_cap: Option<usize>,
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Parse => 2,
        ErrorClass::Computation => 3,
        ErrorClass::StepLimit => 4,
        ErrorClass::Prerequisite => 5,
        ErrorClass::Disagreement => 6,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = matrix_rows(m)
        .into_iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn cmd_katz(fx: &Fixture) -> Result<Report, Error> {
    let m = need(fx.module.as_ref(), "module")?;
    let k = katz_rank(m)?;
    let h0 = k.h0.as_ref().map(matrix_text);
    let phi = k.leading_poly.display("x");
    let divisor = if k.is_regular() {
        "0".to_string()
    } else {
        format!("degree {}", k.leading_poly.degree())
    };
    let mut text = String::new();
    writeln!(text, "rank {}", k.rho).unwrap();
    writeln!(text, "slopes {}", k.slopes).unwrap();
    writeln!(text, "ramification {}", k.ramification).unwrap();
    writeln!(text, "mu_rho {}", k.mu_rho).unwrap();
    writeln!(text, "h0 {}", h0.as_deref().unwrap_or("none")).unwrap();
    writeln!(text, "leading_poly {phi}").unwrap();
    writeln!(text, "divisor {divisor}").unwrap();
    Ok(Report {
        text,
        json: json!({
            "rank": k.rho.to_string(),
            "slopes": k.slopes.0.iter().map(|(s, m)| json!([s.to_string(), m])).collect::<Vec<_>>(),
            "ramification": k.ramification,
            "mu_rho": k.mu_rho,
            "h0": k.h0.as_ref().map(matrix_rows),
            "leading_poly": phi,
            "divisor": divisor,
        }),
        code: 0,
    })
}

fn cmd_exponents(fx: &Fixture, s: &Settings) -> Result<Report, Error> {
    let m = need(fx.module.as_ref(), "module")?;
    let cap = s
        .saturation_cap
        .or(fx.options.saturation_cap)
        .unwrap_or_else(|| default_saturation_cap(m));
    let regular = is_regular(m)?;
    let saturated = saturation_oracle(m, cap)?;
    if regular != saturated {
        return Err(Error::RoutesDisagree(format!(
            "Newton polygon says regular = {regular}, saturation says {saturated}"
        )));
    }
    let ex = residue_exponents(m)?;
    let list: Vec<String> = ex.0.iter().map(ToString::to_string).collect();
    let text = format!(
        "regular yes\nsaturation_cap {cap}\nsaturation_oracle yes\nexponents [{}]\n",
        list.join(", ")
    );
    Ok(Report {
        text,
        json: json!({
            "regular": true,
            "saturation_cap": cap,
            "saturation_oracle": true,
            "exponents": list,
        }),
        code: 0,
    })
}

fn cmd_resolve(fx: &Fixture, s: &Settings) -> Result<Report, Error> {
    if fx.germs.is_empty() {
        return Err(Error::InvalidInput("fixture has no [[germs]]".into()));
    }
    let steps = s
        .max_steps
        .or(fx.options.max_steps)
        .unwrap_or(DEFAULT_MAX_STEPS);
    let tree = embedded_resolution(fx.germs.clone(), steps)?;
    let a = intersection_matrix(&tree);
    let minors: Vec<String> = a.leading_minors().iter().map(ToString::to_string).collect();
    let nd = a.is_negative_definite()?;
    let summary = tree.summary();
    let text = format!(
        "resolution\n{}definiteness\n  leading minors: [{}]\n  negative definite: {}\n",
        summary
            .to_string()
            .lines()
            .map(|l| format!("  {l}\n"))
            .collect::<String>(),
        minors.join(", "),
        yes_no(nd)
    );
    Ok(Report {
        text,
        json: json!({
            "resolution": summary,
            "definiteness": { "leading_minors": minors, "negative_definite": nd },
        }),
        code: 0,
    })
}

fn cmd_verify(fx: &Fixture, s: &Settings) -> Result<Report, Error> {
    let conn = fx.plane_connection()?;
    let curve = need(fx.curve.as_ref(), "curve")?;
    let options = VerifyOptions {
        max_steps: s
            .max_steps
            .or(fx.options.max_steps)
            .unwrap_or(DEFAULT_MAX_STEPS),
    };
    let cert = verify_theorem(
        &conn,
        fx.germs.clone(),
        curve,
        &fx.declared_regular,
        &options,
    )?;
    let view = cert.view();
    Ok(Report {
        text: view.to_string(),
        json: serde_json::to_value(&view).expect("certificate view serializes"),
        code: if cert.verdict == Verdict::Regular {
            0
        } else {
            1
        },
    })
}

fn cmd_flatness(fx: &Fixture) -> Result<Report, Error> {
    let conn = fx.plane_connection()?;
    let flat = check_flatness(&conn);
    let locus: Vec<String> = conn.polar_locus().iter().map(ToString::to_string).collect();
    let text = format!(
        "flat {}\nax {}\nay {}\npolar_locus [{}]\ncurvature {}\n",
        yes_no(flat),
        matrix_text(conn.ax()),
        matrix_text(conn.ay()),
        locus.join(", "),
        matrix_text(&conn.curvature())
    );
    Ok(Report {
        text,
        json: json!({
            "flat": flat,
            "ax": matrix_rows(conn.ax()),
            "ay": matrix_rows(conn.ay()),
            "polar_locus": locus,
            "curvature": matrix_rows(&conn.curvature()),
        }),
        code: if flat { 0 } else { 1 },
    })
}

fn need<'a, T>(x: Option<&'a T>, section: &str) -> Result<&'a T, Error> {
    x.ok_or_else(|| Error::InvalidInput(format!("fixture has no [{section}] section")))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Katz(_) => "katz",
        Command::Resolve(_) => "resolve",
        Command::Verify(_) => "verify",
        Command::Exponents(_) => "exponents",
        Command::Flatness(_) => "flatness",
    }
}

/// Outcome for one file: exit code plus either a report or an error message.
fn run_file(command: &Command, path: &Path, s: &Settings) -> (u8, Result<Report, String>) {
    let name = command_name(command);
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        let fx = Fixture::parse(&text)?;
        match command {
            Command::Katz(_) => cmd_katz(&fx),
            Command::Resolve(_) => cmd_resolve(&fx, s),
            Command::Verify(_) => cmd_verify(&fx, s),
            Command::Exponents(_) => cmd_exponents(&fx, s),
            Command::Flatness(_) => cmd_flatness(&fx),
        }
    }));
    match outcome {
        Ok(Ok(r)) => (r.code, Ok(r)),
        Ok(Err(e)) => (exit_code(e.class()), Err(format!("{name}: {e}"))),
        Err(_) => (3, Err(format!("{name}: internal error"))),
    }
}

fn render(path: Option<&Path>, code: u8, r: &Result<Report, String>, json: bool) -> String {
    if json {
        let mut v = match r {
            Ok(rep) => json!({ "exit_code": code, "output": rep.json }),
            Err(e) => json!({ "exit_code": code, "error": e }),
        };
        if let Some(p) = path {
            v["file"] = json!(p.display().to_string());
        }
        serde_json::to_string_pretty(&v).expect("json values serialize")
    } else {
        let body = match r {
            Ok(rep) => rep.text.clone(),
            Err(e) => format!("error: {e}\n"),
        };
        match path {
            Some(p) => format!("== {} (exit {code})\n{body}", p.display()),
            None => body,
        }
    }
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| format!("cannot read {}: {e}", dir.display()))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    Ok(files)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        json: cli.json,
        max_steps: cli.max_steps,
        saturation_cap: cli.saturation_cap,
    };
    let file = match &cli.command {
        Command::Katz(i)
        | Command::Resolve(i)
        | Command::Verify(i)
        | Command::Exponents(i)
        | Command::Flatness(i) => i.file.clone(),
    };
    match (&cli.corpus, file) {
        (Some(dir), None) => {
            let files = match corpus_files(dir) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let results: Vec<(u8, Result<Report, String>)> = files
                .par_iter()
                .map(|f| run_file(&cli.command, f, &settings))
                .collect();
            let worst = results.iter().map(|(c, _)| *c).max().unwrap_or(0);
            if settings.json {
                let items: Vec<Value> = files
                    .iter()
                    .zip(&results)
                    .map(|(f, (c, r))| {
                        serde_json::from_str(&render(Some(f), *c, r, true)).expect("own output")
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&items).expect("serializes")
                );
            } else {
                for (f, (c, r)) in files.iter().zip(&results) {
                    print!("{}", render(Some(f), *c, r, false));
                }
            }
            ExitCode::from(worst)
        }
        (None, Some(f)) => {
            let (code, r) = run_file(&cli.command, &f, &settings);
            match &r {
                Err(e) if !settings.json => eprintln!("error: {e}"),
                _ => {
                    let out = render(None, code, &r, settings.json);
                    if settings.json {
                        println!("{out}");
                    } else {
                        print!("{out}");
                    }
                }
            }
            ExitCode::from(code)
        }
        _ => {
            eprintln!("error: give exactly one of FILE or --corpus DIR");
            ExitCode::from(2)
        }
    }
}
