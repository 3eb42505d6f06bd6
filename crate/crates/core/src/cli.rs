//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative answer (invalid network, collisions,
//! infeasible budget), 2 strategy does not apply, 64 usage error, 65 bad input.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::error::{Error, ParseErrorKind};
use crate::exact::{generate_grid, has_schedule_within, min_delay};
use crate::io::{export_cliquer, parse_network_bytes, write_network};
use crate::model::{is_regular, validate_schedule, Rational, Schedule, TrainNetwork};
use crate::schedulers::{schedule_with, SchedulerStrategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Parser)]
#[command(name = "trains", version, about = "Collision-free schedules for regular lattice train networks")]
struct Cli {
    /// Read the network from this file instead of standard input.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Only print results; no diagnostics on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse the network and check that no tracks overlap.
    Validate,
    /// Compute a schedule with a constant-delay scheduler.
    Schedule {
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Check a delays file of "<label> <delay>" lines against the network.
    Check { delays: PathBuf },
    /// Print the minimum integer delay and a witness schedule.
    MinDelay,
    /// Print a schedule with delay at most D, or INFEASIBLE.
    Feasible { max_delay: u64 },
    /// Write the Cliquer graph for delay budget D.
    Export { max_delay: u64 },
    /// Write the positive grid network with train length ELL.
    Grid { ell: u64 },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Positive,
    #[value(name = "2d")]
    TwoD,
    #[value(name = "3d-unit")]
    ThreeDUnit,
    Auto,
}

impl From<StrategyArg> for SchedulerStrategy {
    fn from(arg: StrategyArg) -> Self {
        match arg {
            StrategyArg::Positive => SchedulerStrategy::PositiveLines,
            StrategyArg::TwoD => SchedulerStrategy::TwoD,
            StrategyArg::ThreeDUnit => SchedulerStrategy::ThreeDUnit,
            StrategyArg::Auto => SchedulerStrategy::Auto,
        }
    }
}

/// Failure carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported { .. } | Error::NotRegular => EXIT_UNSUPPORTED,
            Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_DATA, e.to_string())
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut out = Vec::new();
    let code = match execute(&cli, stdin, &mut out) {
        Ok(code) => code,
        Err(failure) => {
            if !cli.quiet {
                let _ = writeln!(stderr, "error: {}", failure.message);
            }
            failure.code
        }
    };
    if stdout.write_all(&out).and_then(|_| stdout.flush()).is_err() {
        return EXIT_DATA;
    }
    code
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<Vec<u8>, Failure> {
    match &cli.file {
        Some(path) => fs::read(path).map_err(|e| Failure::new(EXIT_DATA, format!("{}: {e}", path.display()))),
        None => {
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn read_network(cli: &Cli, stdin: &mut dyn Read) -> Result<TrainNetwork, Failure> {
    parse_network_bytes(&read_input(cli, stdin)?).map_err(|e| Failure::new(EXIT_DATA, e.to_string()))
}

fn write_assignment(out: &mut Vec<u8>, net: &TrainNetwork, schedule: &Schedule) -> std::io::Result<()> {
    for (label, delay) in net.labels().iter().zip(schedule.delays()) {
        writeln!(out, "{label} {delay}")?;
    }
    Ok(())
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut Vec<u8>) -> Result<i32, Failure> {
    match &cli.command {
        Command::Grid { ell } => {
            let net = generate_grid(*ell)?;
            out.extend_from_slice(write_network(&net).as_bytes());
            return Ok(EXIT_OK);
        }
        Command::Validate => {
            return match parse_network_bytes(&read_input(cli, stdin)?) {
                Ok(net) => {
                    writeln!(out, "valid")?;
                    writeln!(out, "lines {}", net.len())?;
                    writeln!(out, "dimension {}", net.dimension())?;
                    writeln!(out, "regular {}", is_regular(&net))?;
                    Ok(EXIT_OK)
                }
                Err(e) if matches!(e.kind, ParseErrorKind::OverlappingTracks { .. }) => {
                    writeln!(out, "invalid")?;
                    Err(Failure::new(EXIT_NO, e.to_string()))
                }
                Err(e) => Err(Failure::new(EXIT_DATA, e.to_string())),
            };
        }
        _ => {}
    }
    let net = read_network(cli, stdin)?;
    match &cli.command {
        Command::Schedule { strategy } => {
            let outcome = schedule_with(&net, (*strategy).into())?;
            write_assignment(out, &net, &outcome.schedule)?;
            writeln!(out, "strategy {}", outcome.strategy)?;
            writeln!(out, "bound {}", outcome.bound)?;
            Ok(EXIT_OK)
        }
        Command::Check { delays } => {
            let text = fs::read_to_string(delays).map_err(|e| Failure::new(EXIT_DATA, format!("{}: {e}", delays.display())))?;
            let entries = parse_delays(&text)?;
            let schedule = Schedule::from_labeled(&net, &entries)?;
            let violations = validate_schedule(&net, &schedule)?;
            if violations.is_empty() {
                writeln!(out, "ok")?;
                return Ok(EXIT_OK);
            }
            for v in &violations {
                writeln!(out, "{v}")?;
            }
            Ok(EXIT_NO)
        }
        Command::MinDelay => {
            let (delay, witness) = min_delay(&net)?;
            writeln!(out, "{delay}")?;
            write_assignment(out, &net, &witness)?;
            Ok(EXIT_OK)
        }
        Command::Feasible { max_delay } => match has_schedule_within(&net, *max_delay)? {
            Some(witness) => {
                write_assignment(out, &net, &witness)?;
                Ok(EXIT_OK)
            }
            None => {
                writeln!(out, "INFEASIBLE")?;
                Ok(EXIT_NO)
            }
        },
        Command::Export { max_delay } => {
            out.extend_from_slice(export_cliquer(&net, *max_delay)?.as_bytes());
            Ok(EXIT_OK)
        }
        Command::Validate | Command::Grid { .. } => unreachable!("handled above"),
    }
}

/// Reads "<label> <delay>" lines; delays are integers, fractions `p/q` or
/// decimals.
fn parse_delays(text: &str) -> Result<Vec<(String, Rational)>, Failure> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Failure::new(EXIT_DATA, format!("delays line {}: expected \"<label> <delay>\", got {line:?}", i + 1));
        let mut tokens = line.split_whitespace();
        let (Some(label), Some(value), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(bad());
        };
        let delay = parse_rational(value).ok_or_else(bad)?;
        if delay < Rational::zero() {
            return Err(bad());
        }
        entries.push((label.to_string(), delay));
    }
    Ok(entries)
}

fn parse_rational(token: &str) -> Option<Rational> {
    if let Some((num, den)) = token.split_once('/') {
        let den: i64 = den.parse().ok()?;
        let num: i64 = num.parse().ok()?;
        return (den != 0).then(|| Rational::new(num, den));
    }
    if let Some((whole, frac)) = token.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: i64 = if whole.is_empty() || whole == "-" { 0 } else { whole.parse().ok()? };
        let scale = 10i64.pow(frac.len() as u32);
        let frac: i64 = frac.parse().ok()?;
        let magnitude = Rational::from_integer(whole.abs()) + Rational::new(frac, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    token.parse().ok().map(Rational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_tokens() {
        assert_eq!(parse_rational("3"), Some(Rational::from_integer(3)));
        assert_eq!(parse_rational("1/2"), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational("2.75"), Some(Rational::new(11, 4)));
        assert_eq!(parse_rational(".5"), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational("-0.5"), Some(Rational::new(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1."), None);
    }

    #[test]
    fn delays_file() {
        let entries = parse_delays("# witness\nA 3\nB 0\n\nC 1/2\n").unwrap();
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[2], ("C".to_string(), Rational::new(1, 2)));
        assert!(parse_delays("A").is_err());
        assert!(parse_delays("A -1").is_err());
        assert!(parse_delays("A 1 2").is_err());
    }
}
