use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = golodlab::cli::run(std::env::args_os(), &mut io::stdin().lock(), &mut out, &mut io::stderr());
    if out.flush().is_err() {
        return ExitCode::from(golodlab::cli::EXIT_INPUT);
    }
    ExitCode::from(code)
}
