use std::process::ExitCode;

use clap::Parser;
use invlim_cli::RunConfig;

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // clap would exit 2, which is reserved for hypothesis failures.
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    invlim_cli::run(&config)
}
