use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use qcore::par::{configure_threads, Exec};
use qkpcli::{run, Cli, CliError, RunConfig};

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let body = msg.split("\n\n").next().unwrap_or("invalid arguments");
            let text = body.trim_start_matches("error: ").split_whitespace().collect::<Vec<_>>().join(" ");
            return fail(&CliError::Argument(text));
        }
    };
    let threads = configure_threads(cli.threads.filter(|&n| n > 0));
    let exec = if threads == 1 { Exec::Sequential } else { Exec::default() };
    let config = RunConfig::from_cli(&cli, threads);
    match run(&cli, &config, exec).and_then(|out| out.emit().map(|()| out.code)) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => fail(&e),
    }
}
