use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sphere_envelopes::cli::{self, parse_point, BranchArg, Command, FamilyConfig, Options};
use sphere_envelopes::Vec3;

/// Envelopes of sphere families: classification, envelope and discriminant
/// meshes, evolutes, pedal surfaces and envelope checks.
#[derive(Parser)]
#[command(name = "envelope-tool", version)]
struct Args {
    /// classify, envelope, discriminant, evolute, pedal or verify
    #[arg(value_parser = |s: &str| s.parse::<Command>().map_err(|e| e.to_string()))]
    command: Command,
    /// Family description file
    #[arg(long)]
    config: PathBuf,
    /// plus, minus, unique or custom
    #[arg(long, value_parser = |s: &str| s.parse::<BranchArg>().map_err(|e| e.to_string()))]
    branch: Option<BranchArg>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Base point `x,y,z` of pedal surfaces
    #[arg(long, value_parser = |s: &str| parse_point(s).map_err(|e| e.to_string()))]
    point: Option<Vec3>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let cfg = match FamilyConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::exit_code(&e) as u8);
        }
    };
    let opts = Options {
        branch: args.branch,
        out: args.out,
        point: args.point,
    };
    let outcome = match cli::with_thread_cap(|| cli::run(args.command, &cfg, &opts)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::exit_code(&e) as u8);
        }
    };
    if outcome.code == 0 || outcome.code == 1 {
        print!("{}", outcome.report);
    } else {
        eprint!("{}", outcome.report);
    }
    ExitCode::from(outcome.code as u8)
}
