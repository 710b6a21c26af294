#![allow(clippy::neg_cmp_op_on_partial_ord)]
use clap::{Parser, Subcommand};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use surfloss::commands::{self, CliError, Output, SweepSpec};
use surfloss::config::{ConfigError, DesignConfig, RawConfig};
use surfloss::report::Format;

#[derive(Debug, Parser)]
#[command(name = "surfloss", version, about = "Surface participation, solver checks and TLS estimates for qubit layouts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Also write every table to this directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Participation ratios and loss of every structure in a design.
    Analyze {
        #[arg(long)]
        config: PathBuf,
    },
    /// Closed forms against the surface-charge solver.
    Verify {
        /// coax, flat-coax, corner, ribbon-ground, cyl-wire, flat-wire or all.
        suites: Vec<String>,
        /// Divides element sizes; 2 doubles the mesh density.
        #[arg(long, default_value_t = 1.0)]
        mesh_scale: f64,
    },
    /// Re-evaluate the design while stepping numeric settings.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Dotted path such as structure.0.c; repeat to move several together.
        #[arg(long, required = true)]
        param: Vec<String>,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Logarithmic spacing.
        #[arg(long)]
        log: bool,
    },
    /// Optimal junction-wire taper slope.
    Taper {
        #[arg(long)]
        config: PathBuf,
        /// Also evaluate this slope.
        #[arg(long)]
        slope: Option<f64>,
    },
    /// Largest observable TLS splittings and their density.
    Tls {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        span_ghz: Option<f64>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<RawConfig, CliError> {
    RawConfig::parse(&read(path)?).map_err(|e| CliError::Config(ConfigError { message: format!("{}: {}", path.display(), e.message), ..e }))
}

fn emit(out: &Output, format: Format, dir: Option<&Path>) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Io(e.to_string());
    let stdout = io::stdout();
    let mut w = stdout.lock();
    for (i, t) in out.tables.iter().enumerate() {
        if format == Format::Table && i > 0 {
            writeln!(w).map_err(io_err)?;
        }
        t.write(&mut w, format).map_err(io_err)?;
    }
    if format == Format::Table {
        for n in &out.notes {
            writeln!(w, "{n}").map_err(io_err)?;
        }
    }
    for warn in &out.warnings {
        eprintln!("warning: {warn}");
    }
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let ff = if format == Format::Table { Format::Csv } else { format };
        for t in out.tables.iter().chain(&out.files) {
            let path = dir.join(format!("{}.{}", t.name, ff.extension()));
            let mut f = io::BufWriter::new(fs::File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?);
            t.write(&mut f, ff).map_err(io_err)?;
            f.flush().map_err(io_err)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Analyze { config } => emit(&commands::analyze(&DesignConfig::from_raw(&load(&config)?)?)?, cli.format, out),
        Command::Verify { suites, mesh_scale } => {
            let suites = commands::parse_suites(&suites)?;
            let (report, failed) = commands::verify(&suites, mesh_scale)?;
            emit(&report, cli.format, out)?;
            if failed > 0 {
                return Err(CliError::Verification(failed));
            }
            Ok(())
        }
        Command::Sweep { config, param, from, to, steps, log } => {
            let spec = SweepSpec { params: param, from, to, steps, log };
            emit(&commands::sweep(&load(&config)?, &spec)?, cli.format, out)
        }
        Command::Taper { config, slope } => emit(&commands::taper(&DesignConfig::from_raw(&load(&config)?)?, slope)?, cli.format, out),
        Command::Tls { config, span_ghz } => emit(&commands::tls(&DesignConfig::from_raw(&load(&config)?)?, span_ghz)?, cli.format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = match &e {
                CliError::Config(ConfigError { line: Some(l), .. }) => format!(" line={l}"),
                _ => String::new(),
            };
            let msg = match &e {
                CliError::Config(c) => c.message.clone(),
                other => other.to_string(),
            };
            eprintln!("error: code={} kind={}{line} message={msg}", e.exit_code(), e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
