use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let threads = std::env::var("PRYM_THREADS").ok();
    let code = prym_cli::run(
        std::env::args_os(),
        threads.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
