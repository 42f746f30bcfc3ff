use std::io::Write;
use std::process::ExitCode;

use manin_cli::{run, Verbosity};

fn main() -> ExitCode {
    let outcome = run(std::env::args(), Verbosity::from_env());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
