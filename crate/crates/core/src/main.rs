use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use idemcodes::cli::{error_json, run, Command, OutputFormat, RunConfig};
use idemcodes::codes::{DistanceMethod, DEFAULT_BUDGET};
use idemcodes::search::DEFAULT_NORMAL_ELEMENTS;

#[derive(Parser)]
#[command(name = "idemcodes", version, about = "Minimal left group codes from primitive idempotents")]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// cyclic(n) | metacyclic(m,n,r) | direct(spec,spec) | cayley(path)
    #[arg(long, global = true, env = "IDEMCODES_GROUP")]
    group: Option<String>,

    /// gf(p^k) or gf(q)
    #[arg(long, global = true, env = "IDEMCODES_FIELD", default_value = "gf(2)")]
    field: String,

    /// Maximum number of codewords enumerated per code.
    #[arg(long, global = true, env = "IDEMCODES_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[arg(long, global = true, env = "IDEMCODES_OUTPUT", value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Directory receiving one generator-matrix file per code.
    #[arg(long, global = true, env = "IDEMCODES_EXPORT")]
    export: Option<PathBuf>,

    /// Worker threads for codeword enumeration (0 = all cores).
    #[arg(long, global = true, env = "IDEMCODES_THREADS", default_value_t = 0)]
    threads: usize,

    /// Normal elements tried per component.
    #[arg(long, global = true, env = "IDEMCODES_NORMAL_ELEMENTS", default_value_t = DEFAULT_NORMAL_ELEMENTS)]
    normal_elements: usize,

    #[arg(long, global = true, env = "IDEMCODES_METHOD", value_enum, default_value_t = Method::Gray)]
    method: Method,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Strong Shoda pairs, one line per pair.
    Ssp,
    /// Wedderburn components and their central idempotents.
    Wedderburn,
    /// Complete sets of orthogonal primitive idempotents.
    Idempotents,
    /// Codes of every primitive idempotent, one construction per component.
    Codes,
    /// Best distance per dimension over every pair and construction.
    Search,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Output {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum Method {
    Gray,
    Exhaustive,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Some(group) = args.group.clone() else {
        eprintln!("error: --group is required (or set IDEMCODES_GROUP)");
        return ExitCode::from(1);
    };
    let command = match args.command {
        Cmd::Ssp => Command::Ssp,
        Cmd::Wedderburn => Command::Wedderburn,
        Cmd::Idempotents => Command::Idempotents,
        Cmd::Codes => Command::Codes,
        Cmd::Search => Command::Search,
    };
    let config = RunConfig {
        group_spec: group,
        field: args.field.clone(),
        command,
        budget: args.budget,
        output: match args.output {
            Output::Text => OutputFormat::Text,
            Output::Json => OutputFormat::Json,
        },
        export_path: args.export.clone(),
        normal_elements: args.normal_elements,
        method: match args.method {
            Method::Gray => DistanceMethod::Gray,
            Method::Exhaustive => DistanceMethod::Exhaustive,
        },
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(&config)) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit_code as u8)
        }
        Err(err) => {
            if args.output == Output::Json {
                print!("{}", error_json(&err));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(1)
        }
    }
}
