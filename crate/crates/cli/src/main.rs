use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    // Behave like a classic Unix filter on a closed pipe: die quietly
    // instead of panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = realcy_cli::Cli::parse();
    match realcy_cli::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
