use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(equigeo::cli::run(std::env::args_os()) as u8)
}
