use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use hodgecor_cli::args::Cli;
use hodgecor_cli::report::EXIT_USAGE;

fn write(cli: &Cli, text: &str) -> anyhow::Result<()> {
    if let Some(path) = hodgecor_cli::output_path(cli) {
        std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {path}"))?;
    }
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match hodgecor_cli::run(&cli) {
        Ok((report, code)) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&report)
            } else {
                serde_json::to_string(&report)
            }
            .expect("reports serialize");
            if let Err(e) = write(&cli, &text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
            ExitCode::from(code as u8)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
