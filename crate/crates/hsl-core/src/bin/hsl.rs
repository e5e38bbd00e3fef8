//! Command-line front end: run script files or inline scripts, or run the
//! regression corpus.
//!
//! Exit codes: 0 success, 1 engine failure, 2 syntax error, 3 corpus
//! mismatch.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hsl_core::corpus;
use hsl_core::script::{parse_field_name, parse_order_name, parse_script, run_script, RunOptions};

#[derive(Parser)]
#[command(
    name = "hsl",
    version = hsl_core::ENGINE_VERSION,
    about = "Homological invariants of modules over graded hypersurface rings"
)]
struct Cli {
    /// Print JSON result documents instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Pair-step budget for the Groebner engine.
    #[arg(long, global = true, value_name = "N")]
    max_steps: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script file.
    Run {
        file: PathBuf,
        /// Replace the coefficient field of every ring declaration (`Q` or `F(p)`).
        #[arg(long)]
        field: Option<String>,
        /// Term order for all computation (`grevlex` or `lex`).
        #[arg(long)]
        order: Option<String>,
    },
    /// Run a script passed as an argument.
    Eval {
        script: String,
        /// Replace the coefficient field of every ring declaration (`Q` or `F(p)`).
        #[arg(long)]
        field: Option<String>,
        /// Term order for all computation (`grevlex` or `lex`).
        #[arg(long)]
        order: Option<String>,
    },
    /// Run the built-in regression corpus.
    Corpus {
        /// Only run cases carrying this tag.
        #[arg(long)]
        tag: Option<String>,
        /// Shuffle execution order deterministically.
        #[arg(long)]
        seed: Option<u64>,
        /// Regenerate the golden files in the source tree.
        #[arg(long)]
        bless: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Run { file, field, order } => match std::fs::read_to_string(&file) {
            Ok(src) => run_source(&src, cli.json, cli.max_steps, field, order),
            Err(e) => {
                eprintln!("cannot read {}: {e}", file.display());
                1
            }
        },
        Cmd::Eval { script, field, order } => {
            run_source(&script, cli.json, cli.max_steps, field, order)
        }
        Cmd::Corpus { tag, seed, bless } => {
            run_corpus(cli.json, cli.max_steps, tag.as_deref(), seed, bless)
        }
    };
    ExitCode::from(code)
}

fn run_source(
    src: &str,
    json: bool,
    max_steps: Option<u64>,
    field: Option<String>,
    order: Option<String>,
) -> u8 {
    let script = match parse_script(src) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let mut opts = RunOptions { max_steps, ..RunOptions::default() };
    if let Some(f) = field {
        match parse_field_name(&f) {
            Ok(f) => opts.field_override = Some(f),
            Err(e) => {
                eprintln!("{e}");
                return 2;
            }
        }
    }
    if let Some(o) = order {
        match parse_order_name(&o) {
            Ok(o) => opts.order_override = Some(o),
            Err(e) => {
                eprintln!("{e}");
                return 2;
            }
        }
    }
    let out = run_script(&script, &opts);
    if json {
        let docs: Vec<Value> = out.documents.iter().map(|d| d.to_value()).collect();
        println!("{}", serde_json::to_string_pretty(&Value::Array(docs)).expect("serializable"));
    } else {
        for doc in &out.documents {
            println!("{}\n", doc.to_text());
        }
    }
    match out.error {
        None => 0,
        Some(e) => {
            eprintln!("{e}");
            if e.is_syntax() {
                2
            } else {
                1
            }
        }
    }
}

fn run_corpus(
    json: bool,
    max_steps: Option<u64>,
    tag: Option<&str>,
    seed: Option<u64>,
    bless: bool,
) -> u8 {
    if bless {
        return match corpus::bless(max_steps) {
            Ok(written) => {
                for path in written {
                    eprintln!("wrote {path}");
                }
                0
            }
            Err(e) => {
                eprintln!("bless failed: {e}");
                1
            }
        };
    }
    let summary = corpus::run_corpus(tag, seed, max_steps);
    if json {
        let cases: Vec<Value> = summary
            .outcomes
            .iter()
            .map(|o| json!({"name": o.name, "passed": o.passed, "diffs": o.diffs}))
            .collect();
        let doc = json!({
            "cases": cases,
            "passed": summary.passed(),
            "failed": summary.failed(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        for o in &summary.outcomes {
            println!("{} {}", if o.passed { "PASS" } else { "FAIL" }, o.name);
            for d in &o.diffs {
                println!("    {d}");
            }
        }
        println!("{} passed, {} failed", summary.passed(), summary.failed());
    }
    if summary.all_passed() {
        0
    } else {
        3
    }
}
