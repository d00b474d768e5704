use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dglift::dg_module::BidegreeWindow;
use dglift::session::{run_session, RunOptions};

/// Run a dglift session file and report the results.
#[derive(Parser, Debug)]
#[command(name = "dglift", version)]
struct Cli {
    /// Session file with `field`, `base`, `tower`, `module` and `run` sections.
    session: PathBuf,
    /// Write the JSON report to this path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Default window `hmin:hmax:wmax` (or `hmin:hmax:wmin:wmax`) for commands that take one.
    #[arg(long, value_parser = parse_window)]
    window: Option<BidegreeWindow>,
}

fn parse_window(s: &str) -> Result<BidegreeWindow, String> {
    s.parse().map_err(|e: dglift::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.session.display().to_string();
    let text = match std::fs::read_to_string(&cli.session) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{name}: {e}");
            return ExitCode::from(1);
        }
    };
    let options = RunOptions {
        seed: cli.seed,
        window: cli.window,
    };
    let output = match run_session(&text, &options) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{name}:{e}");
            return ExitCode::from(1);
        }
    };
    for r in &output.reports {
        println!("> {}", r.command);
        if let Some(w) = &r.window {
            println!("  window {w}");
        }
        println!("  {}", r.result);
        for c in &r.certificates {
            println!("    {c}");
        }
    }
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, output.to_json()) {
            eprintln!("{}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(output.status.exit_code() as u8)
}
