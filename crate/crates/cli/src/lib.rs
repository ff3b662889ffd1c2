//! The `gentle` command line. [`run`] takes the arguments and both output
//! streams so it can be driven from tests.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use gentle_core::classify::{classify_with_phi, clock_condition, derived_equivalent, EquivVerdict};
use gentle_core::dot::render_dot;
use gentle_core::dsl::{parse_quiver_file, render_presentation, DslError, DslErrorKind, DslErrors};
use gentle_core::generator::{random_gentle, GeneratorError, GeneratorParams};
use gentle_core::json::{presentation_value, trace_value, verdict_value, versioned_json};
use gentle_core::phi::{check_sums, compute_phi, render_trace};
use gentle_core::quiver::{cycle_number, BuildError, GentlePresentation};
use gentle_core::repetitive::{
    build_window, compute_n_orbits, default_depth, display_hat, tau_check,
};
use gentle_core::threads::{assign_signs, thread_signs, ThreadKind};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const NOT_EQUIVALENT: i32 = 3;
    pub const INDETERMINATE: i32 = 4;
    pub const INTERNAL: i32 = 5;
}

#[derive(Parser, Debug)]
#[command(
    name = "gentle",
    version,
    about = "Derived invariants of gentle algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the gentle conditions and report every violation.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the invariant phi.
    Phi {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Print the walk through permitted and forbidden threads.
        #[arg(long)]
        trace: bool,
    },
    /// List permitted and forbidden threads with their signs.
    Threads { file: PathBuf },
    /// Normal form up to derived equivalence (at most one cycle).
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compare two presentations.
    Equiv {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Recompute phi from the repetitive algebra and compare.
    OracleCheck { file: PathBuf },
    /// Print a random gentle presentation.
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        cycles: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        json: bool,
    },
    /// Graphviz rendering.
    ExportDot { file: PathBuf },
}

/// Output of one command: text for stdout, text for stderr, exit code.
struct Outcome {
    out: String,
    err: String,
    code: i32,
}

impl Outcome {
    fn ok(out: String) -> Outcome {
        Outcome {
            out,
            err: String::new(),
            code: exit::OK,
        }
    }

    fn fail(code: i32, err: String) -> Outcome {
        Outcome {
            out: String::new(),
            err,
            code,
        }
    }
}

fn load(path: &Path) -> Result<GentlePresentation, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(exit::USAGE, format!("{}: {e}\n", path.display())))?;
    let fail = |errors: DslErrors| {
        let mut err = String::new();
        for e in &errors.errors {
            err.push_str(&diagnostic(path, e));
        }
        Outcome::fail(exit::INVALID, err)
    };
    parse_quiver_file(&text)
        .map_err(fail)?
        .to_presentation()
        .map_err(fail)
}

/// `file:line:col: message`, or `file: message` for unlocated errors.
fn diagnostic(path: &Path, e: &DslError) -> String {
    match e.at {
        Some(_) => format!("{}:{e}\n", path.display()),
        None => format!("{}: {e}\n", path.display()),
    }
}

pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match dispatch(cli.command) {
        Ok(o) | Err(o) => o,
    };
    let _ = out.write_all(outcome.out.as_bytes());
    let _ = err.write_all(outcome.err.as_bytes());
    outcome.code
}

fn internal(e: impl std::fmt::Display) -> Outcome {
    Outcome::fail(exit::INTERNAL, format!("internal error: {e}\n"))
}

fn dispatch(command: Command) -> Result<Outcome, Outcome> {
    match command {
        Command::Validate { file, json } => validate(&file, json),
        Command::Phi { file, json, trace } => phi(&file, json, trace),
        Command::Threads { file } => threads(&file),
        Command::Classify { file, json } => classify(&file, json),
        Command::Equiv {
            file_a,
            file_b,
            json,
        } => equiv(&file_a, &file_b, json),
        Command::OracleCheck { file } => oracle_check(&file),
        Command::Gen {
            vertices,
            cycles,
            seed,
            density,
            json,
        } => {
            let params = GeneratorParams {
                vertex_count: vertices,
                cycle_target: cycles,
                relation_density: density,
                seed,
            };
            match random_gentle(&params) {
                Ok(p) if json => Ok(Outcome::ok(
                    versioned_json(VERSION, presentation_value(&p)) + "\n",
                )),
                Ok(p) => Ok(Outcome::ok(render_presentation(&p))),
                Err(
                    e @ (GeneratorError::GenerationFailed(_) | GeneratorError::InvalidParams(_)),
                ) => Err(Outcome::fail(exit::USAGE, format!("{e}\n"))),
            }
        }
        Command::ExportDot { file } => Ok(Outcome::ok(render_dot(&load(&file)?))),
    }
}

fn validate(path: &Path, as_json: bool) -> Result<Outcome, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(exit::USAGE, format!("{}: {e}\n", path.display())))?;
    let mut errors = match parse_quiver_file(&text) {
        Ok(file) => match file.to_presentation() {
            Ok(p) => {
                let summary = json!({
                    "version": VERSION,
                    "gentle": true,
                    "vertices": p.quiver().vertex_count(),
                    "arrows": p.quiver().arrow_count(),
                    "relations": p.relation_count(),
                    "cycles": cycle_number(&p),
                });
                return Ok(Outcome::ok(if as_json {
                    format!("{summary}\n")
                } else {
                    format!(
                        "gentle: {} vertices, {} arrows, {} relations, {} cycle(s)\n",
                        p.quiver().vertex_count(),
                        p.quiver().arrow_count(),
                        p.relation_count(),
                        cycle_number(&p)
                    )
                }));
            }
            Err(e) => e.errors,
        },
        Err(e) => e.errors,
    };
    errors.sort_by_key(|e| e.at);
    let mut report = Vec::new();
    let mut diag = String::new();
    for e in &errors {
        match &e.kind {
            DslErrorKind::Build(BuildError::NotGentle(v)) => report.push(v.clone()),
            _ => diag.push_str(&diagnostic(path, e)),
        }
    }
    let mut out = String::new();
    if as_json {
        let value = json!({ "version": VERSION, "gentle": false, "violations": report });
        writeln!(out, "{value}").unwrap();
    } else {
        for v in &report {
            writeln!(out, "{v}").unwrap();
        }
    }
    if !report.is_empty() {
        writeln!(
            diag,
            "{}: not gentle ({} violation(s))",
            path.display(),
            report.len()
        )
        .unwrap();
    }
    Err(Outcome {
        out,
        err: diag,
        code: exit::INVALID,
    })
}

fn phi(path: &Path, as_json: bool, trace: bool) -> Result<Outcome, Outcome> {
    let p = load(path)?;
    let (phi, t) = compute_phi(&p).map_err(internal)?;
    if !check_sums(&phi, &p) {
        return Err(internal(format!("sum identities fail for {phi}")));
    }
    let out = if as_json {
        let mut doc = json!({ "version": VERSION, "phi": phi });
        if trace {
            doc["trace"] = serde_json::to_value(trace_value(&p, &t)).map_err(internal)?;
        }
        format!("{doc}\n")
    } else if trace {
        format!("{}\n{phi}\n", render_trace(&p, &t))
    } else {
        format!("{phi}\n")
    };
    Ok(Outcome::ok(out))
}

fn threads(path: &Path) -> Result<Outcome, Outcome> {
    let p = load(path)?;
    let q = p.quiver();
    let set = p.threads();
    let signs = assign_signs(&p).map_err(internal)?;
    let mut out = String::new();
    for (kind, list) in [
        (ThreadKind::Permitted, &set.permitted),
        (ThreadKind::Forbidden, &set.forbidden),
    ] {
        let title = if kind == ThreadKind::Permitted {
            "permitted"
        } else {
            "forbidden"
        };
        writeln!(out, "{title} ({}):", list.len()).unwrap();
        let rows: Vec<(String, String)> = list
            .iter()
            .map(|t| {
                let sign = match thread_signs(&p, &signs, t) {
                    Ok((s, e)) => format!("sigma {s:+} eps {e:+}"),
                    Err(_) => "signs by tag".to_string(),
                };
                (t.display(q).to_string(), sign)
            })
            .collect();
        let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        for (name, sign) in rows {
            writeln!(out, "  {name:<width$}   {sign}").unwrap();
        }
    }
    if !set.relation_cycles.is_empty() {
        writeln!(out, "relation cycles ({}):", set.relation_cycles.len()).unwrap();
        for c in &set.relation_cycles {
            let labels: Vec<&str> = c.iter().map(|&a| q.arrow_label(a)).collect();
            writeln!(out, "  {}", labels.join(" ")).unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

fn classify(path: &Path, as_json: bool) -> Result<Outcome, Outcome> {
    let p = load(path)?;
    let (phi, _) = compute_phi(&p).map_err(internal)?;
    // Any classification error here is a broken invariant, not bad input.
    let form = classify_with_phi(&p, &phi).map_err(internal)?;
    let clock = clock_condition(&p).ok();
    if as_json {
        let doc = json!({ "version": VERSION, "normal_form": form, "phi": phi, "cycles": cycle_number(&p), "clock": clock });
        return Ok(Outcome::ok(format!("{doc}\n")));
    }
    let mut out = format!("{form}\n");
    if let Some(c) = clock {
        writeln!(
            out,
            "clock condition: {} clockwise, {} anticlockwise under canonical traversal (difference {})",
            c.clockwise,
            c.anticlockwise,
            c.difference()
        )
        .unwrap();
    }
    Ok(Outcome::ok(out))
}

fn equiv(a: &Path, b: &Path, as_json: bool) -> Result<Outcome, Outcome> {
    let pa = load(a)?;
    let pb = load(b)?;
    let verdict = derived_equivalent(&pa, &pb).map_err(internal)?;
    let code = match verdict {
        EquivVerdict::Equivalent { .. } => exit::OK,
        EquivVerdict::NotEquivalent { .. } => exit::NOT_EQUIVALENT,
        EquivVerdict::Indeterminate { .. } => exit::INDETERMINATE,
    };
    let out = if as_json {
        versioned_json(VERSION, verdict_value(&verdict)) + "\n"
    } else {
        match &verdict {
            EquivVerdict::Equivalent { phi, cycles } => {
                format!("Equivalent: phi = {phi}, cycles = {cycles}\n")
            }
            EquivVerdict::Indeterminate { phi, cycles } => {
                format!("Indeterminate: phi = {phi}, cycles = {cycles}\n")
            }
            EquivVerdict::NotEquivalent { witnesses } => {
                let mut s = "NotEquivalent\n".to_string();
                for w in witnesses {
                    writeln!(s, "  {w}").unwrap();
                }
                s
            }
        }
    };
    Ok(Outcome {
        out,
        err: String::new(),
        code,
    })
}

fn oracle_check(path: &Path) -> Result<Outcome, Outcome> {
    let p = load(path)?;
    let (phi, _) = compute_phi(&p).map_err(internal)?;
    let (n, orbits) = compute_n_orbits(&p).map_err(internal)?;
    let w = build_window(&p, default_depth(&p)).map_err(internal)?;
    let mut out = String::new();
    for o in &orbits {
        let names: Vec<String> = o.elements.iter().map(|&h| display_hat(&p, &w, h)).collect();
        writeln!(
            out,
            "orbit ({},{}) shift {} {}: {}",
            o.pair.0,
            o.pair.1,
            o.shift,
            o.series,
            names.join(", ")
        )
        .unwrap();
    }
    writeln!(out, "phi = {phi}").unwrap();
    writeln!(out, "N   = {n}").unwrap();
    let tau = tau_check(&p).map_err(internal)?;
    if let Some(w) = &tau {
        return Err(Outcome {
            out,
            code: exit::INTERNAL,
            err: format!("tau check fails at {:?}\n", w.element),
        });
    }
    if n != phi {
        return Err(Outcome {
            out,
            code: exit::INTERNAL,
            err: "phi and N disagree\n".into(),
        });
    }
    out.push_str("agree\n");
    Ok(Outcome::ok(out))
}
