use std::process::ExitCode;

use atomlab_cli::{run, Cli, ExperimentConfig, Format, RunOptions};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let cfg = ExperimentConfig::from_cli(&cli);
    let opts = RunOptions { verify: cli.global.verify, timing: cli.global.timing };
    match run(&cfg, &opts) {
        Ok(report) => {
            match cli.global.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
