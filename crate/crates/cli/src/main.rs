use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nakajima_core::corpus::{self, LookupError};
use nakajima_core::ideal::variable_name;
use nakajima_core::oracle::{full_report, Level};
use nakajima_core::polytope::polytope_vertices;
use nakajima_core::{
    dual_generators, elimination_plan, full_presentation, is_admissible, render, Admissibility,
    Format, FreeParamMatrix, InputDocument,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nakajima",
    version,
    about = "Equations of toric l.c.i. singularities from Nakajima polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structure and admissibility of a parameter matrix.
    Validate {
        /// Input document, or `-` for stdin.
        file: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print the binomial generators.
    Equations {
        file: String,
        /// Eliminate redundant variables first.
        #[arg(long)]
        minimal: bool,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print the dual generators, the eliminated ones and the Hilbert basis.
    Hilbert {
        file: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Print the vertices of the polytope.
    Vertices {
        file: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Run the brute-force verifiers and print a JSON report.
    Verify {
        file: String,
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a built-in example, e.g. `fig3`, `simplex(4,2)` or `box 2 3`.
    Example {
        name: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<i64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Quick,
    Exhaustive,
}

/// A failed command: the exit code and what to tell the user. Negative
/// verdicts and reports go to stdout, plain errors to stderr.
struct Failure {
    code: u8,
    message: String,
    stdout: bool,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
        stdout: false,
    }
}

fn domain(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
        stdout: false,
    }
}

fn negative(message: String) -> Failure {
    Failure {
        code: 1,
        message,
        stdout: true,
    }
}

fn read_document(file: &str) -> Result<InputDocument, Failure> {
    let text = if file == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(file).map_err(|e| usage(format!("cannot read {file}: {e}")))?
    };
    InputDocument::from_json(&text).map_err(|e| usage(format!("{file}: {e}")))
}

fn load(file: &str) -> Result<FreeParamMatrix, Failure> {
    read_document(file)?
        .into_params()
        .map_err(|e| domain(format!("invalid parameter matrix: {e}")))
}

fn load_admissible(file: &str) -> Result<FreeParamMatrix, Failure> {
    let m = load(file)?;
    match is_admissible(&m) {
        Admissibility::Admissible => Ok(m),
        Admissibility::Violation(v) => Err(domain(format!(
            "inadmissible at level {}: epsilon {}, pairing {}",
            v.level,
            tuple(v.epsilon.bits()),
            v.pairing
        ))),
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", strings(v).join(","))
}

fn numbers<T: ToString>(v: &[T]) -> Value {
    // arbitrary_precision keeps huge integers exact.
    Value::Array(
        v.iter()
            .map(|x| serde_json::from_str(&x.to_string()).expect("integer literal"))
            .collect(),
    )
}

fn validate(file: &str, format: OutFormat) -> Result<String, Failure> {
    let m = load(file)?;
    let verdict = is_admissible(&m);
    let text = match (&verdict, format) {
        (Admissibility::Admissible, OutFormat::Text) => {
            format!("d = {}\nrows = {m}\nadmissible", m.d())
        }
        (Admissibility::Violation(v), OutFormat::Text) => format!(
            "d = {}\nrows = {m}\ninadmissible at level {}: epsilon {}, pairing {}",
            m.d(),
            v.level,
            tuple(v.epsilon.bits()),
            v.pairing
        ),
        (Admissibility::Admissible, OutFormat::Json) => {
            json!({ "d": m.d(), "admissible": true, "witness": null }).to_string()
        }
        (Admissibility::Violation(v), OutFormat::Json) => json!({
            "d": m.d(),
            "admissible": false,
            "witness": {
                "level": v.level,
                "epsilon": v.epsilon.bits(),
                "pairing": serde_json::from_str::<Value>(&v.pairing.to_string()).expect("integer"),
            },
        })
        .to_string(),
    };
    if verdict.is_admissible() {
        Ok(text)
    } else {
        Err(negative(text))
    }
}

fn equations(file: &str, minimal: bool, format: OutFormat) -> Result<String, Failure> {
    let m = load_admissible(file)?;
    let mut p = full_presentation(&m).map_err(|e| domain(e.to_string()))?;
    if !minimal {
        p.minimal = None;
    }
    match format {
        OutFormat::Json => Ok(render(&p, Format::Json, minimal)),
        OutFormat::Text if !minimal => Ok(render(&p, Format::Text, false)),
        OutFormat::Text => {
            let mp = p
                .minimal
                .as_ref()
                .expect("built with the minimal embedding");
            if mp.generators.is_empty() {
                return Ok(format!(
                    "smooth: 0 relations, ambient = C^{}",
                    mp.surviving_variables.len()
                ));
            }
            let mut lines: Vec<String> = mp
                .variable_map
                .iter()
                .map(|(&v, &(a, b))| {
                    format!(
                        "eliminated {} = {}*{}",
                        variable_name(v),
                        variable_name(a),
                        variable_name(b)
                    )
                })
                .collect();
            lines.push(render(&p, Format::Text, true));
            Ok(lines.join("\n"))
        }
    }
}

fn hilbert(file: &str, format: OutFormat) -> Result<String, Failure> {
    let m = load_admissible(file)?;
    let d = m.d();
    let gens = dual_generators(&m);
    let plan = elimination_plan(&m);
    let positions: Vec<usize> = plan.hilbert.iter().map(|h| h.position).collect();
    Ok(match format {
        OutFormat::Json => json!({
            "generators": gens.gens.iter().enumerate().map(|(i, g)| json!({
                "variable": variable_name(i + 1),
                "covector": numbers(g),
            })).collect::<Vec<_>>(),
            "q": plan.q_set.iter().map(|(k, g)| (k.to_string(), json!(g))).collect::<serde_json::Map<_, _>>(),
            "r": plan.r_set.iter().map(|(l, g)| (l.to_string(), json!(g))).collect::<serde_json::Map<_, _>>(),
            "hilbert": positions.iter().map(|&p| variable_name(p)).collect::<Vec<_>>(),
            "embedding_dimension": positions.len(),
        })
        .to_string(),
        OutFormat::Text => {
            let mut out = vec!["dual generators:".to_string()];
            for (i, g) in gens.gens.iter().enumerate() {
                let label = if i < d {
                    format!("e{}", i + 1)
                } else {
                    format!("m{} - e{}", i + 1 - d, i + 2 - d)
                };
                out.push(format!("  {:<4} {:<10} {}", variable_name(i + 1), label, tuple(g)));
            }
            out.push(if plan.q_set.is_empty() {
                "Q: none".to_string()
            } else {
                let items: Vec<String> = plan.q_set.iter().map(|(k, g)| format!("e{k} = m{g}")).collect();
                format!("Q: {}", items.join(", "))
            });
            out.push(if plan.r_set.is_empty() {
                "R: none".to_string()
            } else {
                let items: Vec<String> = plan
                    .r_set
                    .iter()
                    .map(|(l, g)| format!("m{l} - e{} = m{g}", l + 1))
                    .collect();
                format!("R: {}", items.join(", "))
            });
            let names: Vec<String> = positions.iter().map(|&p| variable_name(p)).collect();
            out.push(format!("hilbert basis ({}): {}", names.len(), names.join(" ")));
            out.push(format!("embedding dimension: {}", names.len()));
            out.join("\n")
        }
    })
}

fn vertices(file: &str, format: OutFormat) -> Result<String, Failure> {
    let m = load_admissible(file)?;
    let v = polytope_vertices(&m);
    Ok(match format {
        OutFormat::Json => json!({
            "d": m.d(),
            "vertices": v.iter().map(|p| numbers(p)).collect::<Vec<_>>(),
        })
        .to_string(),
        OutFormat::Text => {
            let mut out = vec![format!("vertices ({}):", v.len())];
            out.extend(v.iter().map(|p| format!("  {}", tuple(p))));
            out.join("\n")
        }
    })
}

fn verify(file: &str, level: VerifyLevel, seed: u64) -> Result<String, Failure> {
    let doc = read_document(file)?;
    let level = match level {
        VerifyLevel::Quick => Level::Quick,
        VerifyLevel::Exhaustive => Level::Exhaustive,
    };
    let report = full_report(&doc, level, seed);
    let text = report.to_json();
    if report.all_passed() {
        Ok(text)
    } else {
        Err(negative(text))
    }
}

fn example(name: &str, args: &[i64]) -> Result<String, Failure> {
    match corpus::lookup(name, args) {
        Ok(m) => Ok(m.to_document().to_json()),
        Err(e @ LookupError::Unknown(_)) => Err(domain(format!(
            "{e}; available: {}",
            corpus::NAMES.join(", ")
        ))),
        Err(e) => Err(domain(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file, format } => validate(file, *format),
        Command::Equations {
            file,
            minimal,
            format,
        } => equations(file, *minimal, *format),
        Command::Hilbert { file, format } => hilbert(file, *format),
        Command::Vertices { file, format } => vertices(file, *format),
        Command::Verify { file, level, seed } => verify(file, *level, *seed),
        Command::Example { name, args } => example(name, args),
    };
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure {
            code,
            message,
            stdout,
        }) => {
            if stdout {
                println!("{message}");
            } else {
                eprintln!("nakajima: {message}");
            }
            ExitCode::from(code)
        }
    }
}
