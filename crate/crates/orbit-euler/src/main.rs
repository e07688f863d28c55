use std::process::ExitCode;

use clap::{Parser, Subcommand};

use orbit_euler::cli::{cmd_catalog, cmd_qid, cmd_report, cmd_verify, Format, VerifyOptions};
use orbit_euler::Error;

#[derive(Parser)]
#[command(
    name = "orbit-euler",
    about = "Euler characteristics of orbit categories, p-singular counts, and the Frobenius/Brown/Steinberg/Solomon identity suite",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_prime(t: &str) -> Result<u64, String> {
    let p: u64 = t.trim().parse().map_err(|_| format!("bad prime {t:?}"))?;
    if p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
        return Err(format!("{p} is not prime"));
    }
    Ok(p)
}

#[derive(Subcommand)]
enum Command {
    /// Full p-singular report for one group
    Report {
        /// Group spec: S<n> | A<n> | C<n> | D<2n> | GL(n,q) | SL(n,q) | <spec>x<spec>
        spec: String,
        /// Prime p (must divide the group order)
        #[arg(short = 'p', long = "primes", value_delimiter = ',', value_parser = parse_prime)]
        primes: Vec<u64>,
        /// Output format: text, json, or csv
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run the identity suites over the builtin catalog or one group
    Verify {
        /// Restrict to one catalog group
        #[arg(long)]
        group: Option<String>,
        /// Run the full Lie suite (parabolics, Solomon, Steinberg) for a GL/SL spec
        #[arg(long)]
        lie: Option<String>,
        /// Only run the Steinberg count check
        #[arg(long)]
        steinberg: bool,
        /// Skip builtin groups above this order
        #[arg(long, default_value_t = 400)]
        max_order: u64,
        /// Comma-separated primes; default: every prime dividing each order
        #[arg(short = 'p', long = "primes", value_delimiter = ',', value_parser = parse_prime)]
        primes: Option<Vec<u64>>,
    },
    /// Verify the symbolic q-identities: A, B, witt, 2A-even, 2A-odd, egf, crosschar
    Qid {
        family: String,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(short = 'p', long = "primes", value_delimiter = ',', value_parser = parse_prime)]
        primes: Option<Vec<u64>>,
    },
    /// List the builtin group catalog
    Catalog,
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Report {
            spec,
            primes,
            format,
        } => {
            let format: Format = format.parse()?;
            let mut all_ok = true;
            for p in primes {
                let (out, ok) = cmd_report(&spec, p, format)?;
                print!("{out}");
                all_ok &= ok;
            }
            Ok(u8::from(!all_ok))
        }
        Command::Verify {
            group,
            lie,
            steinberg,
            max_order,
            primes,
        } => {
            let (out, failures) = cmd_verify(&VerifyOptions {
                group,
                lie,
                steinberg,
                max_order,
                primes,
            })?;
            print!("{out}");
            Ok(u8::from(failures > 0))
        }
        Command::Qid {
            family,
            m_max,
            n_max,
            primes,
        } => {
            let (out, failures) = cmd_qid(&family, m_max, n_max, &primes)?;
            print!("{out}");
            Ok(u8::from(failures > 0))
        }
        Command::Catalog => {
            print!("{}", cmd_catalog());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
