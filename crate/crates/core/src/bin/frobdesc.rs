use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;
use frobenius_descent::cli::{self, Cli, DEGREE_CAP_ENV};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // only block on stdin for commands that take documents
    let mut input = String::new();
    if let Ok(parsed) = Cli::try_parse_from(&args) {
        if cli::needs_input(&parsed.command) && std::io::stdin().read_to_string(&mut input).is_err()
        {
            eprintln!("malformed input: stdin is not valid UTF-8");
            return ExitCode::from(2);
        }
    }
    let env_cap = std::env::var(DEGREE_CAP_ENV).ok();
    let out = cli::run(&args, &input, env_cap.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
