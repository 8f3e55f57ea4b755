use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use kenmotsu::cli::{self, Command, Manifest, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Exact curvature and soliton checks for frame-presented manifolds.
#[derive(Debug, Parser)]
#[command(name = "kenmotsu", version)]
struct Args {
    /// Manifest file (JSON).
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    manifest: Option<PathBuf>,
    /// Built-in manifest: kenmotsu5, kenmotsu3 or euclidean3.
    #[arg(long)]
    builtin: Option<String>,
    /// verify, curvature, soliton, classify, theorems or all.
    #[arg(long, default_value = "all")]
    command: String,
    /// Field for `classify` (a manifest field name or `zeta`).
    #[arg(long)]
    field: Option<String>,
    /// Soliton convention preset, overriding the manifest.
    #[arg(long)]
    preset: Option<String>,
    /// Bind a parameter, e.g. `kappa=1/2` or `θ=2`. Repeatable.
    #[arg(long = "bind", value_parser = cli::parse_bind)]
    binds: Vec<(String, kenmotsu::Rational)>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let manifest = match (&args.manifest, &args.builtin) {
        (Some(path), _) => match std::fs::read_to_string(path) {
            Ok(text) => Manifest::parse(&text),
            Err(e) => return usage(format!("{}: {e}", path.display())),
        },
        (None, Some(name)) => cli::builtin(name),
        (None, None) => return usage("one of --manifest or --builtin is required"),
    };
    let manifest = match manifest {
        Ok(m) => m,
        Err(e) => return usage(e),
    };
    let mut text = args.command.clone();
    if let Some(f) = &args.field {
        text = format!("{text} {f}");
    }
    let command: Command = match text.parse() {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let opts = Options {
        preset: args.preset.clone(),
        binds: args.binds.into_iter().collect(),
    };
    let report = match cli::run(&command, &manifest, &opts) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    match args.format {
        Format::Text => print!("{}", report.text()),
        Format::Structured => print!("{}", report.structured()),
    }
    ExitCode::from(report.exit_code() as u8)
}
