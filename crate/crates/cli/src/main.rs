use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use transverse_cli::{parse_field, parse_input, render_report, run, CliError, Format};

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Runs one job document: exit 0 on success, 1 on a certified failure, 2 on bad input.
#[derive(Parser)]
#[command(name = "transverse", version)]
struct Args {
    /// Job document; reads stdin when absent or `-`.
    job: Option<PathBuf>,
    /// Output format, overriding the document.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Coefficient field: rational, prime or prime:<p>.
    #[arg(long)]
    field: Option<String>,
    /// Worker threads for strand computations.
    #[arg(long)]
    threads: Option<usize>,
    /// Homological truncation (or verification degree bound) for the command.
    #[arg(long)]
    bound: Option<usize>,
}

fn read_job(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn execute(args: &Args) -> Result<(String, i32), CliError> {
    let document = read_job(args.job.as_ref()).map_err(|e| {
        CliError::Job(transverse_cli::JobError::Field {
            field: "input".into(),
            message: e.to_string(),
        })
    })?;
    let mut spec = parse_input(&document)?;
    if let Some(f) = &args.field {
        spec.ring = spec.ring.with_field(parse_field(f)?);
    }
    if let Some(b) = args.bound {
        spec.command.set_bound(b);
    }
    if let Some(f) = args.format {
        spec.format = match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        };
    }
    let report = run(&spec)?;
    Ok((
        render_report(&report, spec.format),
        report.status.exit_code(),
    ))
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&args) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
