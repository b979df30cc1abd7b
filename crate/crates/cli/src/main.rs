use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = liaison_cli::run_command(std::env::args_os());
    if code == liaison_cli::EXIT_USAGE {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    ExitCode::from(code as u8)
}
