use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use relent::{DirectionConvention, MaximizeOptions, SpinFamily};
use relent_cli::chsh::{self, ChshConfig};
use relent_cli::parse::{parse_angle, parse_direction, Range};
use relent_cli::scan::{self, Family, Format, FrameSpec, Partition, ScanConfig};
use relent_cli::{wigner_angle_report, CliError};

#[derive(Parser)]
#[command(
    name = "relent",
    version,
    about = "Entanglement and CHSH tests for Wigner-rotated spin-momentum qubits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Wigner angle for particle rapidity η and observer rapidity ξ.
    WignerAngle {
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[arg(long, allow_hyphen_values = true)]
        xi: f64,
    },
    /// Scan entanglement over a parameter grid.
    Scan(ScanArgs),
    /// Evaluate or maximise the CHSH value.
    Chsh(ChshArgs),
}

fn range(s: &str) -> Result<Range, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn angle(s: &str) -> Result<f64, String> {
    parse_angle(s).map_err(|e| e.to_string())
}

fn direction(s: &str) -> Result<[f64; 3], String> {
    parse_direction(s).map_err(|e| e.to_string())
}

#[derive(Clone)]
struct Partitions(Vec<Partition>);

fn partitions(s: &str) -> Result<Partitions, String> {
    if s == "all" {
        return Ok(Partitions(Partition::ALL.to_vec()));
    }
    s.split(',')
        .map(|p| p.trim().parse::<Partition>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()
        .map(Partitions)
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "csv", value_parser = |s: &str| s.parse::<Format>().map_err(|e| e.to_string()))]
    format: Format,
    /// File to write to; `-` or `stdout` for standard output.
    #[arg(long, default_value = "stdout")]
    out: String,
}

impl Output {
    fn write(&self, bytes: &[u8]) -> Result<(), CliError> {
        if self.out == "-" || self.out == "stdout" {
            let mut so = std::io::stdout().lock();
            so.write_all(bytes)?;
            so.flush()?;
        } else {
            std::fs::write(PathBuf::from(&self.out), bytes)?;
        }
        Ok(())
    }
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value = "bell", value_parser = |s: &str| s.parse::<Family>().map_err(|e| e.to_string()))]
    family: Family,
    /// Comma-separated list, or `all`.
    #[arg(long, default_value = "one-vs-three-diff", value_parser = partitions)]
    partition: Partitions,
    #[arg(long, default_value = "0", value_parser = range, allow_hyphen_values = true)]
    alpha: Range,
    #[arg(long, value_parser = range, allow_hyphen_values = true, conflicts_with_all = ["theta", "phi"])]
    beta: Option<Range>,
    #[arg(long, value_parser = range, allow_hyphen_values = true)]
    theta: Option<Range>,
    #[arg(long, value_parser = range, allow_hyphen_values = true)]
    phi: Option<Range>,
    #[arg(long, value_parser = range, allow_hyphen_values = true, conflicts_with_all = ["eta", "xi"])]
    delta: Option<Range>,
    #[arg(long, value_parser = range, requires = "xi")]
    eta: Option<Range>,
    #[arg(long, value_parser = range, requires = "eta")]
    xi: Option<Range>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ChshArgs {
    #[arg(long, default_value = "bell", value_parser = |s: &str| s.parse::<Family>().map_err(|e| e.to_string()))]
    family: Family,
    #[arg(long, default_value = "0", value_parser = angle, allow_hyphen_values = true)]
    alpha: f64,
    /// Defaults to the singlet, −π/4.
    #[arg(long, value_parser = angle, allow_hyphen_values = true, conflicts_with_all = ["theta", "phi"])]
    beta: Option<f64>,
    #[arg(long, value_parser = angle, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, value_parser = angle, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    eta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    xi: f64,
    /// Use the source-frame direction components unchanged in the moving frame.
    #[arg(long)]
    verbatim: bool,
    /// Alice's first direction, `x,y,z`.
    #[arg(long, value_parser = direction, allow_hyphen_values = true, requires_all = ["a_prime", "b", "b_prime"])]
    a: Option<[f64; 3]>,
    #[arg(long, value_parser = direction, allow_hyphen_values = true)]
    a_prime: Option<[f64; 3]>,
    #[arg(long, value_parser = direction, allow_hyphen_values = true)]
    b: Option<[f64; 3]>,
    #[arg(long, value_parser = direction, allow_hyphen_values = true)]
    b_prime: Option<[f64; 3]>,
    #[arg(long, conflicts_with = "a")]
    optimize: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[command(flatten)]
    output: Output,
}

fn run_scan(args: ScanArgs) -> Result<(), CliError> {
    let spin = match args.family {
        Family::Bell => {
            if args.theta.is_some() {
                return Err(CliError::Usage(
                    "--theta applies to the triplet family only".into(),
                ));
            }
            args.beta.unwrap_or(Range::single(0.0))
        }
        Family::Triplet => {
            if args.beta.is_some() {
                return Err(CliError::Usage(
                    "--beta applies to the bell family only".into(),
                ));
            }
            args.theta.unwrap_or(Range::single(0.0))
        }
    };
    let frame = match (args.delta, args.eta, args.xi) {
        (Some(d), _, _) => FrameSpec::Delta(d),
        (None, Some(eta), Some(xi)) => FrameSpec::Rapidities { eta, xi },
        _ => FrameSpec::Delta(Range::single(0.0)),
    };
    let config = ScanConfig {
        family: args.family,
        alpha: args.alpha,
        spin,
        phi: args.phi.unwrap_or(Range::single(0.0)),
        frame,
        partitions: args.partition.0,
        format: args.output.format,
    };
    let rows = scan::scan(&config)?;
    let mut buf = Vec::new();
    scan::write_rows(&rows, config.format, &mut buf)?;
    args.output.write(&buf)
}

fn run_chsh(args: ChshArgs) -> Result<(), CliError> {
    let spin = match args.family {
        Family::Bell => {
            if args.theta.is_some() || args.phi.is_some() {
                return Err(CliError::Usage(
                    "--theta/--phi apply to the triplet family only".into(),
                ));
            }
            args.beta
                .map_or(SpinFamily::singlet(), |beta| SpinFamily::BellPsi { beta })
        }
        Family::Triplet => {
            if args.beta.is_some() {
                return Err(CliError::Usage(
                    "--beta applies to the bell family only".into(),
                ));
            }
            SpinFamily::Triplet {
                theta: args.theta.unwrap_or(0.0),
                phi: args.phi.unwrap_or(0.0),
            }
        }
    };
    let setup = match (args.a, args.a_prime, args.b, args.b_prime) {
        (Some(a), Some(ap), Some(b), Some(bp)) => Some([a, ap, b, bp]),
        (None, None, None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "give all of --a, --a-prime, --b, --b-prime or none".into(),
            ))
        }
    };
    let config = ChshConfig {
        alpha: args.alpha,
        spin,
        eta: args.eta,
        xi: args.xi,
        directions: if args.verbatim {
            DirectionConvention::Verbatim
        } else {
            DirectionConvention::Transformed
        },
        setup,
        optimize: args.optimize.then(|| MaximizeOptions {
            restarts: args.restarts,
            seed: args.seed,
            ..MaximizeOptions::default()
        }),
    };
    let outcome = chsh::run(&config)?;
    let text = match args.output.format {
        Format::Csv => outcome.text(),
        Format::Json => serde_json::to_string_pretty(&outcome.json()).expect("json") + "\n",
    };
    args.output.write(text.as_bytes())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::WignerAngle { eta, xi } => wigner_angle_report(eta, xi).map(|s| print!("{s}")),
        Command::Scan(args) => run_scan(args),
        Command::Chsh(args) => run_chsh(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
