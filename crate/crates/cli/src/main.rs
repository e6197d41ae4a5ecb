use std::io::Write;
use std::process::ExitCode;

use spectral_extremal_cli::{execute, exit_code, parse_invocation, EXIT_USAGE};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let inv = match parse_invocation(std::env::args_os().skip(1)) {
        Ok(inv) => inv,
        Err(e) => {
            // help and version requests are not usage errors
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };

    if let Some(jobs) = inv.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            log::error!("cannot start {jobs} workers: {e}");
            return ExitCode::from(1);
        }
    }

    match execute(&inv) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(outcome.report.as_bytes()).and_then(|_| out.flush()) {
                log::error!("cannot write report: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            log::error!("{} failed: {e}", inv.command.name());
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
