use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wigner3nj::harness::{self, Family, SweepSpec};
use wigner3nj::{evaluate, HalfInt, HarnessError, SymbolArgs, SymbolKind};

#[derive(Parser)]
#[command(name = "wigner", about = "Exact and asymptotic Wigner 3nj symbols", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact value of a 6j, 9j, 12j or 15j symbol.
    Exact {
        #[arg(long, value_enum)]
        kind: ExactKind,
        /// Entries row-major, comma separated (`51/2`, `25.5` or `26`).
        #[arg(long, allow_hyphen_values = true)]
        entries: String,
        /// Working precision in bits.
        #[arg(long)]
        precision: Option<u32>,
        /// Significant digits to print; `all` prints every certified digit.
        #[arg(long, default_value = "30")]
        digits: Digits,
    },
    /// Asymptotic approximation at one point.
    Asym {
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        entries: String,
    },
    /// Sweep one entry and write exact and asymptotic values as CSV.
    Sweep {
        #[arg(long)]
        kind: String,
        /// Fixed entries as `role=value,...`.
        #[arg(long)]
        fixed: String,
        /// Role that runs over its allowed range.
        #[arg(long)]
        free: String,
        /// Inclusive `lo:hi` sub-range of the free entry.
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        precision: Option<u32>,
        /// Write every certified digit of the exact values.
        #[arg(long)]
        full_precision: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Error summary of a sweep CSV.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        /// Fraction of the largest volume below which rows count as near a caustic.
        #[arg(long, default_value_t = 0.5)]
        volume_floor: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExactKind {
    #[value(name = "6j")]
    Six,
    #[value(name = "9j")]
    Nine,
    #[value(name = "12j")]
    Twelve,
    #[value(name = "15j")]
    Fifteen,
}

impl From<ExactKind> for SymbolKind {
    fn from(k: ExactKind) -> Self {
        match k {
            ExactKind::Six => SymbolKind::SixJ,
            ExactKind::Nine => SymbolKind::NineJ,
            ExactKind::Twelve => SymbolKind::TwelveJFirst,
            ExactKind::Fifteen => SymbolKind::FifteenJFirst,
        }
    }
}

#[derive(Clone, Copy)]
enum Digits {
    Count(usize),
    All,
}

impl std::str::FromStr for Digits {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Digits::All),
            _ => s.parse().map(Digits::Count).map_err(|_| format!("`{s}` is not a digit count")),
        }
    }
}

fn invalid(e: impl ToString) -> HarnessError {
    HarnessError::InvalidSpec(e.to_string())
}

fn parse_range(s: &str) -> Result<(HalfInt, HalfInt), HarnessError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| invalid(format!("range `{s}` is not lo:hi")))?;
    Ok((a.trim().parse().map_err(invalid)?, b.trim().parse().map_err(invalid)?))
}

fn run(cmd: Cmd) -> Result<(), HarnessError> {
    match cmd {
        Cmd::Exact {
            kind,
            entries,
            precision,
            digits,
        } => {
            let args = SymbolArgs::new(kind.into(), harness::parse_entries(&entries)?).map_err(invalid)?;
            let v = match precision {
                Some(bits) => wigner3nj::Engine::global().evaluate_with_precision(&args, bits),
                None => evaluate(&args),
            };
            let text = match digits {
                _ if v.is_zero() => "0".to_string(),
                Digits::Count(d) => v.to_scientific(d.min(v.stable_digits() as usize)),
                Digits::All => v.certified(),
            };
            println!("value = {text}");
            println!("precision_bits = {}", v.precision_bits());
            if v.is_zero() {
                println!("stable_digits = exact");
            } else {
                println!("stable_digits = {}", v.stable_digits());
            }
        }
        Cmd::Asym { kind, entries } => {
            let family: Family = kind.parse()?;
            let e = harness::parse_entries(&entries)?;
            let expected = family.roles().len();
            if e.len() != expected {
                return Err(invalid(format!("{family} takes {expected} entries, found {}", e.len())));
            }
            let r = family.asymptotic(&e).map_err(invalid)?;
            println!("value = {:.16e}", r.value);
            if let Some(v) = r.volume {
                println!("volume = {v:.16e}");
            }
            println!("prefactor = {:.16e}", r.components.prefactor);
            if let Some(a) = r.components.cosine_argument {
                println!("cosine_argument = {a:.16e}");
            }
            for (k, d) in r.components.d_factors.iter().enumerate() {
                println!("d_factor[{k}] = {d:.16e}");
            }
        }
        Cmd::Sweep {
            kind,
            fixed,
            free,
            range,
            precision,
            full_precision,
            out,
        } => {
            let spec = SweepSpec {
                family: kind.parse()?,
                fixed: harness::parse_assignments(&fixed)?,
                free_role: free,
                range: range.as_deref().map(parse_range).transpose()?,
                precision_bits: precision,
                full_precision,
            };
            let rows = harness::run_sweep(&spec)?;
            harness::emit_csv(&rows, &out)?;
            for r in rows.iter().filter(|r| r.failure.is_some()) {
                eprintln!("{}: {}", r.free_value.to_decimal(), r.failure.as_deref().unwrap());
            }
            println!("wrote {} rows to {}", rows.len(), out.display());
        }
        Cmd::Report { input, volume_floor } => {
            let rows = harness::read_csv(&input)?;
            println!("{}", harness::error_report(&rows, volume_floor)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                HarnessError::Io { .. } | HarnessError::Csv { .. } => 3,
                HarnessError::InvalidSpec(_) | HarnessError::EmptyInput => 2,
            })
        }
    }
}
