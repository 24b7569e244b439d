use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rbcoalg::commands::{render_pretty, run, CliError, Output, EXIT_PARSE};
use rbcoalg::format::{canonical_text, emit};
use rbcoalg::Cli;

fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = run(&cli).and_then(|outcome| {
        match &outcome.output {
            Output::Document(doc) => {
                let text = emit(doc);
                match &cli.global.output {
                    Some(path) => write_file(path, &text)?,
                    None => {
                        let _ = stdout.write_all(text.as_bytes());
                    }
                }
            }
            Output::Report { attachment, .. } => {
                if let (Some(path), Some(doc)) = (&cli.global.output, attachment) {
                    write_file(path, &emit(doc))?;
                }
                let text = if cli.global.pretty {
                    render_pretty(&outcome)
                } else {
                    let v = outcome.report_value().expect("report output");
                    canonical_text(&v)
                };
                let _ = stdout.write_all(text.as_bytes());
            }
        }
        Ok(outcome.code)
    });
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let _ = stdout.write_all(canonical_text(&e.to_value()).as_bytes());
            e.exit_code()
        }
    };
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_PARSE as u8))
}
