use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;

use segal_core::io::Params;
use segal_core::job::{run_job, split_tokens, JobSpec};

/// Checks Segal-type conditions on finitely presented simplicial objects
/// and runs the constructions they certify.
#[derive(Parser)]
#[command(name = "segal", version, after_help = COMMANDS)]
struct Cli {
    /// Command to run, see the list below.
    command: String,
    /// Positional arguments (builder or functor names, numbers) and input
    /// files; files are recognized by their .json suffix.
    tokens: Vec<String>,
    /// Internal truncation for built objects.
    #[arg(long, default_value_t = 5)]
    truncation: usize,
    /// External truncation / top dimension for checks.
    #[arg(long, default_value_t = 3)]
    up_to: usize,
    /// Extension stages applied before comparing homotopy.
    #[arg(long, default_value_t = 1)]
    ex_stage: usize,
    /// Hard cap on tabulated simplices per construction.
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
    /// Dimension cap for horn-lifting checks inside the oracle.
    #[arg(long, default_value_t = 3)]
    fib_depth: usize,
    /// Also write the report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
}

const COMMANDS: &str = "Commands:
  build {delta N | boundary N | horn N I | circle | bar | w | wbar | borel}
  check-segal-space SPACE.json     check-segal-group SPACE.json
  check-action MAP.json            cross-check MAP.json
  homology X.json                  pi1 X.json
  kan X.json                       fibration MAP.json
  diagonal SPACE.json              dstar X.json
  unstraighten GSPACE.json         straighten MAP.json GROUP.json
  roundtrip GSPACE.json            loops SPACE.json
  audit-functor NAME               apply-functor NAME MAP.json
  tower GSPACE.json [N_MAX]        borel-holim COSPAN.json

Functor names: identity, empty, cosk:N, ex:K, postnikov:N[:K].
Exit codes: 0 certified, 1 refuted, 2 consistent only, 3 input error.";

fn main() {
    let cli = Cli::parse();
    let (args, inputs) = split_tokens(&cli.tokens);
    let spec = JobSpec {
        command: cli.command,
        args,
        inputs,
        params: Params {
            truncation: cli.truncation,
            up_to: cli.up_to,
            ex_stage: cli.ex_stage,
            budget: cli.budget,
            fib_depth: cli.fib_depth,
        },
    };
    let start = Instant::now();
    let out = run_job(&spec);
    eprintln!("segal: {} finished in {:.3}s", spec.command, start.elapsed().as_secs_f64());
    let text = out.report.to_json_string();
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("segal: cannot write {}: {e}", path.display());
            std::process::exit(3);
        }
    }
    print!("{text}");
    std::process::exit(out.exit_code);
}
