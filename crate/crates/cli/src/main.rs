use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use lorentz_cauchy_cli::args::Cli;
use lorentz_cauchy_cli::{config, run};

const INPUT_ERROR: u8 = 3;

fn parse(argv: &[String]) -> Result<Cli, clap::Error> {
    Cli::try_parse_from(argv)
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(INPUT_ERROR)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let mut cli = match parse(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(INPUT_ERROR);
        }
    };
    if let Some(path) = config::config_path(&argv) {
        let merged = config::load(Path::new(&path)).and_then(|t| config::apply(&argv, &t, cli.command.slug()));
        cli = match merged.map(|a| parse(&a)) {
            Ok(Ok(cli)) => cli,
            Ok(Err(e)) => return fail(e),
            Err(e) => return fail(format!("{e:#}")),
        };
    }

    let start = Instant::now();
    let mut outcome = run(&cli.command, &cli.global);
    outcome.report.timing.wall_seconds = start.elapsed().as_secs_f64();

    match &cli.global.out {
        Some(dir) => {
            if let Err(e) = std::fs::create_dir_all(dir) {
                return fail(format!("{}: {e}", dir.display()));
            }
            let slug = cli.command.slug();
            let mut files = vec![(format!("{slug}.json"), outcome.report.to_json())];
            files.extend(outcome.artifacts.iter().cloned());
            for (name, contents) in files {
                if let Err(e) = std::fs::write(dir.join(&name), contents) {
                    return fail(format!("{}: {e}", dir.join(&name).display()));
                }
            }
            print!("{}", outcome.report.to_table());
        }
        None => print!("{}", outcome.report.to_json()),
    }
    ExitCode::from(outcome.exit_code as u8)
}
