use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bellclone_core::claims::{self, ClaimRecord};
use bellclone_core::measures::{ed_rho2n, ed_rho_m, sigma_curve, MeasureReport};
use bellclone_core::protocols::cloning::FourInput;
use bellclone_core::protocols::runner::{run, Channel, Engine, Protocol, RunDescriptor, RunResult};
use bellclone_core::BellLabel;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod render;

#[derive(Parser)]
#[command(
    name = "bellclone",
    version,
    about = "Exact LOCC cloning, teleportation and distillation of Bell states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CloneSet {
    Two,
    Four,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Symbolic,
    Dense,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Symbolic => Engine::Symbolic,
            EngineArg::Dense => Engine::Dense,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Smolin,
    Ideal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Curve {
    Sigma,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateFamily {
    #[value(name = "rhoM")]
    RhoM,
    #[value(name = "rho2N")]
    Rho2N,
}

#[derive(Subcommand)]
enum Command {
    /// Clone a Bell state 1 -> n.
    Clone(CloneArgs),
    /// Prepare the uniform correlated mixture on m pairs.
    Prepare {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "both")]
        engine: EngineArg,
    },
    /// Teleport a Bell state through a two-pair channel.
    Teleport {
        #[arg(long, value_enum, default_value = "smolin")]
        channel: ChannelArg,
        #[arg(long)]
        input: BellLabel,
    },
    /// Distill a correlated Bell mixture Σ p_i P[B_i^⊗n].
    Distill {
        #[arg(long, value_parser = parse_probabilities)]
        p: [f64; 4],
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "both")]
        engine: EngineArg,
    },
    /// Evaluate entanglement formulas.
    Measures(MeasuresArgs),
    /// Run the full claims suite.
    VerifyAll,
}

#[derive(Args)]
struct CloneArgs {
    #[arg(long, value_enum)]
    set: CloneSet,
    /// The declared pair of labels, for `--set two`.
    #[arg(long, value_parser = parse_pair)]
    pair: Option<[BellLabel; 2]>,
    #[arg(long, conflicts_with = "p")]
    input: Option<BellLabel>,
    /// Bell-diagonal input distribution, for `--set four`.
    #[arg(long, value_parser = parse_probabilities)]
    p: Option<[f64; 4]>,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "both")]
    engine: EngineArg,
}

#[derive(Args)]
struct MeasuresArgs {
    #[arg(
        long,
        value_enum,
        conflicts_with = "state",
        required_unless_present = "state"
    )]
    curve: Option<Curve>,
    #[arg(long, value_enum)]
    state: Option<StateFamily>,
    /// Copies for the curve, or an inclusive range `a..b` for `rho2N`.
    #[arg(long)]
    n: Option<String>,
    /// Inclusive range `a..b` (or a single value) for `rhoM`.
    #[arg(long)]
    m: Option<String>,
    /// Interior grid points: p = k / (grid + 1).
    #[arg(long, default_value_t = 99)]
    grid: usize,
}

fn parse_pair(s: &str) -> Result<[BellLabel; 2], String> {
    let labels: Vec<BellLabel> = s
        .split(',')
        .map(|t| t.trim().parse::<BellLabel>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match labels[..] {
        [a, b] if a != b => Ok([a, b]),
        [_, _] => Err("the two labels must differ".into()),
        _ => Err(format!(
            "expected two comma-separated labels, got {}",
            labels.len()
        )),
    }
}

fn parse_probabilities(s: &str) -> Result<[f64; 4], String> {
    let values: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 probabilities, got {}", v.len()))
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => {
            let v = parse(s)?;
            Ok(v..=v)
        }
    }
}

/// A failure that is the caller's fault (exit 2) or a failed check (exit 1).
enum Failure {
    Usage(String),
    Verification,
}

impl From<bellclone_core::Error> for Failure {
    fn from(e: bellclone_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn emit(cli_output: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    match cli_output {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct RunReport<'a> {
    #[serde(flatten)]
    descriptor: &'a RunDescriptor,
    passed: bool,
    #[serde(flatten)]
    result: &'a RunResult,
}

fn run_protocol(
    descriptor: RunDescriptor,
    format: Format,
    output: &Option<PathBuf>,
) -> Result<(), Failure> {
    let result = run(&descriptor)?;
    let body = match format {
        Format::Json => to_json(&RunReport {
            descriptor: &descriptor,
            passed: result.passed(),
            result: &result,
        }),
        Format::Text => render::run_text(&result),
        Format::Csv => render::checks_csv(&result.checks),
    };
    emit(output, &body)?;
    if result.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn clone_descriptor(args: CloneArgs) -> Result<RunDescriptor, Failure> {
    let protocol = match args.set {
        CloneSet::Two => {
            let pair = args
                .pair
                .ok_or_else(|| usage("--set two requires --pair"))?;
            let input = args
                .input
                .ok_or_else(|| usage("--set two requires --input"))?;
            Protocol::ClonePair {
                pair,
                input,
                n: args.n,
            }
        }
        CloneSet::Four => {
            if args.pair.is_some() {
                return Err(usage("--pair applies to --set two only"));
            }
            let input = match (args.input, args.p) {
                (Some(l), None) => FourInput::Label(l),
                (None, Some(p)) => FourInput::Distribution(p),
                _ => return Err(usage("--set four requires --input or --p")),
            };
            Protocol::CloneFour { input, n: args.n }
        }
    };
    Ok(RunDescriptor {
        protocol,
        engine: args.engine.into(),
    })
}

fn measures(args: MeasuresArgs, format: Format, output: &Option<PathBuf>) -> Result<(), Failure> {
    if let Some(Curve::Sigma) = args.curve {
        let n = match &args.n {
            Some(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|e| usage(format!("--n: {e}")))?,
            None => 1,
        };
        let rows = sigma_curve(n, args.grid)?;
        let body = match format {
            Format::Json => to_json(&rows),
            Format::Csv | Format::Text => render::sigma_csv(&rows),
        };
        return emit(output, &body);
    }
    let (family, range) = match args.state {
        Some(StateFamily::RhoM) => {
            let m = args
                .m
                .as_deref()
                .ok_or_else(|| usage("--state rhoM requires --m"))?;
            ("rhoM", parse_range(m).map_err(usage)?)
        }
        Some(StateFamily::Rho2N) => {
            let n = args
                .n
                .as_deref()
                .ok_or_else(|| usage("--state rho2N requires --n"))?;
            ("rho2N", parse_range(n).map_err(usage)?)
        }
        None => return Err(usage("one of --curve or --state is required")),
    };
    let reports: Vec<MeasureReport> = range
        .map(|k| {
            let value = if family == "rhoM" {
                ed_rho_m(k)?
            } else {
                ed_rho2n(k)?
            };
            Ok(MeasureReport::formula(
                "distillable-entanglement",
                format!("{family}({k})"),
                value,
            ))
        })
        .collect::<Result<_, Failure>>()?;
    let body = match format {
        Format::Json => to_json(&reports),
        Format::Csv | Format::Text => render::reports_csv(&reports),
    };
    emit(output, &body)
}

fn verify_all(format: Format, output: &Option<PathBuf>) -> Result<(), Failure> {
    let records: Vec<ClaimRecord> = claims::verify_all();
    let body = match format {
        Format::Json => to_json(&records),
        Format::Text => render::claims_text(&records),
        Format::Csv => render::claims_csv(&records),
    };
    emit(output, &body)?;
    let failed: Vec<&str> = records
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.id.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        eprintln!("failed claims: {}", failed.join(", "));
        Err(Failure::Verification)
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let output = &cli.output;
    let format = cli.format;
    match cli.command {
        Command::Clone(args) => run_protocol(
            clone_descriptor(args)?,
            format.unwrap_or(Format::Text),
            output,
        ),
        Command::Prepare { m, engine } => run_protocol(
            RunDescriptor {
                protocol: Protocol::Prepare { m },
                engine: engine.into(),
            },
            format.unwrap_or(Format::Text),
            output,
        ),
        Command::Teleport { channel, input } => {
            let channel = match channel {
                ChannelArg::Smolin => Channel::Smolin,
                ChannelArg::Ideal => Channel::Ideal,
            };
            run_protocol(
                RunDescriptor {
                    protocol: Protocol::Teleport { channel, input },
                    engine: Engine::Dense,
                },
                format.unwrap_or(Format::Text),
                output,
            )
        }
        Command::Distill { p, n, engine } => run_protocol(
            RunDescriptor {
                protocol: Protocol::Distill { p, n },
                engine: engine.into(),
            },
            format.unwrap_or(Format::Text),
            output,
        ),
        Command::Measures(args) => measures(args, format.unwrap_or(Format::Csv), output),
        Command::VerifyAll => verify_all(format.unwrap_or(Format::Json), output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..8").unwrap(), 2..=8);
        assert_eq!(parse_range("2..=8").unwrap(), 2..=8);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("8..2").is_err());
        assert!(parse_range("x..2").is_err());
    }

    #[test]
    fn pairs_and_probabilities() {
        assert_eq!(parse_pair("B1,B3").unwrap(), [BellLabel::B1, BellLabel::B3]);
        assert!(parse_pair("B1,B1").is_err());
        assert!(parse_pair("B1").is_err());
        assert_eq!(
            parse_probabilities("0.4,0.1,0.3,0.2").unwrap(),
            [0.4, 0.1, 0.3, 0.2]
        );
        assert!(parse_probabilities("0.5,0.5").is_err());
    }
}
