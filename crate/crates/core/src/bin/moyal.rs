use std::process::ExitCode;

fn main() -> ExitCode {
    moyal_geom::cli::main_with_args(std::env::args_os())
}
