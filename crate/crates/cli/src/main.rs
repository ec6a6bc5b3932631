use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(wgrate_cli::run(std::env::args_os()))
}
