mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use polytorsion::fox::{one_relator_polytope_swapped, FreeWord};
use polytorsion::invariants::rational_json;
use polytorsion::{
    abelianize, fox_derivative, knot_record, l2_torsion_polytope, one_relator_polytope,
    presentation_complex, thurston_data, torsion, universal_torsion_commutative,
    BasedChainComplex, Covector, Error, Presentation, TorsionClass,
};

/// Universal L²-torsion, torsion polytopes and Thurston-norm data of group presentations.
#[derive(Debug, Parser)]
#[command(name = "polytorsion", version)]
struct Cli {
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Presentation file (`gens:` / `rel:` or `crossing:` lines).
    #[arg(conflicts_with = "gens")]
    file: Option<PathBuf>,
    /// Generator names, separated by spaces.
    #[arg(long)]
    gens: Option<String>,
    /// A relator word; repeat for several. Upper case is the inverse.
    #[arg(long, requires = "gens")]
    rel: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fox derivative of a relator and its abelianized image.
    Fox {
        #[command(flatten)]
        input: Input,
        /// Generator to differentiate by.
        #[arg(long)]
        wrt: String,
        /// Which relator, counting from zero.
        #[arg(long, default_value_t = 0)]
        relator: usize,
    },
    /// Free rank, projection and torsion of the abelianization.
    Abelianize {
        #[command(flatten)]
        input: Input,
    },
    /// Torsion polytope class, and the one-relator formula where it applies.
    Polytope {
        #[command(flatten)]
        input: Input,
    },
    /// Torsion class of a presentation complex or of a chain complex in JSON.
    Torsion {
        #[command(flatten)]
        input: Input,
        /// Read a chain complex JSON file instead of a presentation.
        #[arg(long, conflicts_with_all = ["file", "gens"])]
        complex: Option<PathBuf>,
        /// Include the presentation complex in the output.
        #[arg(long)]
        emit_complex: bool,
    },
    /// Full record: torsion, polytope class, seminorm samples and checks.
    Knot {
        #[command(flatten)]
        input: Input,
    },
    /// Candidate Thurston norm `x(φ) = 2·sn(P)(φ)`.
    Norm {
        #[command(flatten)]
        input: Input,
        /// Covector, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        phi: Vec<i64>,
    },
    /// Runs the bundled corpus and a seeded random sample; exits 0 iff all pass.
    Selftest {
        /// Seed for the random sample; POLYTORSION_SEED takes precedence.
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Domain(Value),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut obj = json!({ "kind": e.kind(), "message": e.to_string() });
        if let Error::Parse { line, column, .. } = &e {
            obj["line"] = json!(line);
            obj["column"] = json!(column);
        }
        Failure::Domain(json!({ "error": obj }))
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Domain(json!({
        "error": { "kind": "io", "message": format!("{}: {e}", path.display()) }
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let pretty = cli.pretty;
    let emit = |v: &Value| {
        let s = if pretty {
            serde_json::to_string_pretty(v).expect("json")
        } else {
            v.to_string()
        };
        println!("{s}");
    };
    match run(cli.command, cli.json || pretty) {
        Ok(Output::Json(v)) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s, ok)) => {
            print!("{s}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::JsonStatus(v, ok)) => {
            emit(&v);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(v)) => {
            emit(&v);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum Output {
    Json(Value),
    JsonStatus(Value, bool),
    Text(String, bool),
}

fn read_presentation(input: &Input) -> Result<Presentation, Failure> {
    match (&input.file, &input.gens) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            Ok(Presentation::parse(&text)?)
        }
        (None, Some(gens)) => Ok(Presentation::from_strings(gens, &input.rel)?),
        _ => Err(Failure::Usage("give a presentation file or --gens".into())),
    }
}

fn run(command: Command, json_table: bool) -> Result<Output, Failure> {
    match command {
        Command::Fox {
            input,
            wrt,
            relator,
        } => {
            let p = read_presentation(&input)?;
            let i = p
                .names()
                .iter()
                .position(|n| *n == wrt)
                .ok_or_else(|| Failure::Usage(format!("--wrt {wrt:?} is not a generator")))?;
            let r: &FreeWord = p.relators().get(relator).ok_or_else(|| {
                Failure::Usage(format!("relator {relator} does not exist"))
            })?;
            let d = fox_derivative(r, i, p.generator_count())?;
            let ab = abelianize(&p)?;
            let image = d.abelianize(&ab.projection)?;
            Ok(Output::Json(json!({
                "abelianized": image.to_json(),
                "abelianized_text": image.to_string(),
                "derivative": d.to_json(p.names()),
                "derivative_text": d.display_with(p.names()).to_string(),
                "relator": r.display_with(p.names()).to_string(),
                "wrt": wrt,
            })))
        }
        Command::Abelianize { input } => {
            let p = read_presentation(&input)?;
            let mut v = abelianize(&p)?.to_json();
            v["generators"] = json!(p.names());
            Ok(Output::Json(v))
        }
        Command::Polytope { input } => {
            let p = read_presentation(&input)?;
            let formula = if p.generator_count() == 2 && p.relators().len() == 1 {
                json!({
                    "x_first": one_relator_polytope(&p)?.to_json(),
                    "y_first": one_relator_polytope_swapped(&p)?.to_json(),
                })
            } else {
                Value::Null
            };
            Ok(Output::Json(json!({
                "one_relator": formula,
                "torsion_polytope": l2_torsion_polytope(&p)?.to_json(),
            })))
        }
        Command::Torsion {
            input,
            complex,
            emit_complex,
        } => {
            let (rho, cx): (TorsionClass, Option<Value>) = match complex {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| io_failure(&path, e))?;
                    let v: Value = serde_json::from_str(&text)
                        .map_err(|e| Failure::from(Error::Json(e.to_string())))?;
                    let c = BasedChainComplex::from_json(&v)?;
                    (torsion(&c)?, emit_complex.then(|| c.to_json()))
                }
                None => {
                    let p = read_presentation(&input)?;
                    let cx = if emit_complex {
                        Some(presentation_complex(&p)?.complex.to_json())
                    } else {
                        None
                    };
                    (universal_torsion_commutative(&p)?, cx)
                }
            };
            let mut v = json!({
                "polytope": rho.polytope().to_json(),
                "polytope_of_negative": rho.polytope_of_negative().to_json(),
                "text": rho.to_string(),
                "torsion": rho.to_json(),
            });
            if let Some(c) = cx {
                v["complex"] = c;
            }
            Ok(Output::Json(v))
        }
        Command::Knot { input } => {
            let p = read_presentation(&input)?;
            Ok(Output::Json(knot_record(&p)?))
        }
        Command::Norm { input, phi } => {
            let p = read_presentation(&input)?;
            let data = thurston_data(&p)?;
            let x = data.seminorm(&Covector(phi))?;
            Ok(Output::Json(json!({ "x": rational_json(&x) })))
        }
        Command::Selftest { seed } => {
            let seed = match std::env::var("POLYTORSION_SEED") {
                Ok(s) => s.trim().parse::<u64>().map_err(|_| {
                    Failure::Usage(format!("POLYTORSION_SEED={s:?} is not an unsigned integer"))
                })?,
                Err(_) => seed.unwrap_or(0),
            };
            let report = selftest::run(seed);
            let ok = report.all_passed();
            if json_table {
                Ok(Output::JsonStatus(report.to_json(), ok))
            } else {
                Ok(Output::Text(report.to_table(), ok))
            }
        }
    }
}
