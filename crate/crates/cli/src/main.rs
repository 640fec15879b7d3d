mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Common};
use commands::CliError;

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::PhiCurve(a) => &a.common,
        Command::Isotropy(a) => &a.common,
        Command::Lemma1(a) => &a.common,
        Command::Scenario(a) => &a.common,
        Command::Oracle2d(a) => &a.common,
    }
}

fn dispatch(cmd: &Command) -> Result<String, CliError> {
    match cmd {
        Command::PhiCurve(a) => commands::phi_curve_cmd(a),
        Command::Isotropy(a) => commands::isotropy_cmd(a),
        Command::Lemma1(a) => commands::lemma1_cmd(a),
        Command::Scenario(a) => commands::scenario_cmd(a),
        Command::Oracle2d(a) => commands::oracle_2d_cmd(a),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let opts = common(&cli.command);
    let output = match opts.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Run(e.to_string()))?
            .install(|| dispatch(&cli.command))?,
        None => dispatch(&cli.command)?,
    };
    match &opts.out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| CliError::Run(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(output.as_bytes())
            .map_err(|e| CliError::Run(e.to_string())),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
