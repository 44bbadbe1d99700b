use std::process::ExitCode;

fn main() -> ExitCode {
    match csd_sim::cli::run_from(std::env::args_os()) {
        Err(e) => {
            // usage errors and --help/--version
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            ExitCode::from(code)
        }
        Ok(Ok(outcome)) => {
            println!("{}", outcome.summary);
            ExitCode::from(outcome.exit_code as u8)
        }
        Ok(Err(err)) => {
            let record = err.record();
            eprintln!(
                "{}",
                serde_json::to_string(&record).unwrap_or_else(|_| err.to_string())
            );
            ExitCode::from(record.exit_code as u8)
        }
    }
}
