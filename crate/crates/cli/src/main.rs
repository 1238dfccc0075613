use std::io::Write;

use clap::Parser;
use qcliff_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("values serialize")
            } else {
                out.text
            };
            // a closed pipe on the reader side is not an error of ours
            let _ = writeln!(std::io::stdout(), "{body}");
            if out.failed {
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}
