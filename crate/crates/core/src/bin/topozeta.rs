use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (status, out, err) = topozeta::cli::run(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    ExitCode::from(status as u8)
}
