use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cliffperm_core::orders::{class_size, clifford_order, inertia_order, pauli_order, phase_centralizer_order};
use cliffperm_core::pauli::MAX_QUBITS;
use cliffperm_core::perm_rep::{phase_class_cached, ExportFormat, DEFAULT_GUARD};
use cliffperm_core::presentations::DEFAULT_MAX_COSETS;
use cliffperm_core::suites::{self, Suite, SuiteConfig};
use cliffperm_core::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

/// Group orders, permutation representations and verification suites for
/// the projective Clifford group.
#[derive(Parser)]
#[command(name = "cliffperm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Qubit count.
    #[arg(short = 'n', default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..))]
    n: u16,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomised checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on orbit sizes while indexing a conjugacy class.
    #[arg(long, default_value_t = DEFAULT_GUARD as u64, value_parser = clap::value_parser!(u64).range(1..))]
    guard: u64,
    /// Cap on the coset table size.
    #[arg(long, default_value_t = DEFAULT_MAX_COSETS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_cosets: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print |C_n|, |IN_n|, |IN_n|/2, |V| and |P_n|.
    Order(#[command(flatten)] Common),
    /// Export the generator permutations on the class of s1 and a manifest.
    Permrep {
        #[command(flatten)]
        common: Common,
        /// Permutation text format: cycles or arrays.
        #[arg(long, default_value = "cycles")]
        format: ExportFormat,
    },
    /// Run a verification suite and print one PASS/FAIL line per check.
    Verify {
        /// relations, centralizers, normalform, rewrite, oracle or all.
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_order(c: &Common) -> Result<u8, Error> {
    let n = c.n as usize;
    if n > MAX_QUBITS {
        return Err(Error::UnsupportedN { n, reason: format!("order supports n <= {MAX_QUBITS}") });
    }
    let text = format!(
        "n {n}\nclifford {}\ninertia {}\nphase_centralizer {}\nclass_size {}\npauli {}\n",
        clifford_order(n),
        inertia_order(n),
        phase_centralizer_order(n),
        class_size(n),
        pauli_order(n)
    );
    emit(c.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_permrep(c: &Common, format: ExportFormat) -> Result<u8, Error> {
    let idx = phase_class_cached(c.n as usize, c.guard as usize)?;
    let generators = idx.export_generators(format)?;
    let manifest = idx.manifest();
    match &c.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("generators.txt"), generators)?;
            fs::write(dir.join("manifest.txt"), manifest)?;
        }
        None => emit(None, &format!("{generators}\n{manifest}"))?,
    }
    Ok(0)
}

fn cmd_verify(suite: Suite, c: &Common) -> Result<u8, Error> {
    let cfg = SuiteConfig { n: c.n as usize, max_cosets: c.max_cosets as usize, seed: c.seed };
    let (report, skipped) = suites::run(suite, &cfg)?;
    for s in skipped {
        eprintln!("skipped {s}: n={} exceeds its limit {}", cfg.n, s.max_n());
    }
    emit(c.out.as_deref(), &report.to_string())?;
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Order(c) => cmd_order(c),
        Command::Permrep { common, format } => cmd_permrep(common, *format),
        Command::Verify { suite, common } => cmd_verify(*suite, common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
