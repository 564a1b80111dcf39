//! Thin CLI wrapper; all logic lives in the library.

fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(2)
}
