use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod io;

use args::Cli;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("regender: error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
