use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(pairbath::cli::run() as u8)
}
