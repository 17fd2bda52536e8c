use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qcert::Cli::parse();
    let stdout = std::io::stdout();
    let report = match qcert::run(&cli, &mut stdout.lock()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.json {
        if let Err(e) = report.write(path) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
