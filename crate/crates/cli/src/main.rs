use std::process::ExitCode;

use clap::Parser;

use popmatch_cli::{run, Cli};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap uses 0 for --help/--version and 2 for usage errors.
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let (report, code) = run(&cli, argv.into_iter().skip(1).collect());
    println!("{}", report.to_json());
    if let Some(err) = &report.error {
        eprintln!("error: {err}");
    }
    ExitCode::from(code)
}
