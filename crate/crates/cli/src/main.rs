use std::io::Write;
use std::process::ExitCode;

use autoseq_cli::{execute, Cli, Output};
use clap::Parser;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = match outcome.output {
                Output::Text(text) => text,
                Output::Json(value) => {
                    serde_json::to_string_pretty(&value).expect("json output serializes")
                }
            };
            let mut stdout = std::io::stdout().lock();
            if !text.is_empty() {
                let _ = writeln!(stdout, "{text}");
            }
            let _ = stdout.flush();
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.status as u8)
        }
    }
}
