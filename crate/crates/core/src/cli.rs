//! The `blockdeg` command line.
//!
//! Exit status: 0 on success, 1 when a verification or assertion fails, 2 on
//! bad input.

use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Parser, Subcommand};

use crate::blocks::block_partition;
use crate::chartable::{character_table, CharacterTable};
use crate::classifier::{scan_theorem_a, ScanReport, MIN_Q_BOUND};
use crate::error::{Error, Result};
use crate::groups::{fixture_text, resolve_group};
use crate::numtheory::{is_one_or_prime_power, scan_even_neighbors, zsigmondy_prime, Sign};
use crate::partitions::{e_core, unipotent_degree_a, Partition};

pub const THREADS_ENV: &str = "BLOCKDEG_THREADS";

#[derive(Debug, Parser)]
#[command(name = "blockdeg", version, about = "Character tables, p-blocks and principal-block degree checks")]
pub struct Cli {
    /// Worker threads for parallel work (falls back to BLOCKDEG_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute and print a character table.
    Table {
        /// A group name (A5, S4, C6, PSL2(7), SL2(8), PSp4(3), ...) or a generator file.
        group: String,
        /// Also write the full table as JSON to this path ("-" for stdout).
        #[arg(long)]
        json: Option<String>,
    },
    /// Print the p-blocks, defects and principal-block degrees.
    Blocks {
        group: String,
        #[arg(short)]
        p: u64,
        /// Print the block report as JSON instead.
        #[arg(long)]
        json: bool,
    },
    /// Check the PSL2(q) classification for all q up to --qmax.
    ///
    /// Covers every prime power 4 <= q <= qmax except 5 (PSL2(5) is SL2(4)),
    /// with p over the primes dividing the group order. Case (v), PSL2(9),
    /// appears only once qmax >= 9.
    VerifyTheoremA {
        #[arg(long)]
        qmax: u64,
        /// Also decide each pair from the character table.
        #[arg(long)]
        oracle: bool,
        /// Write the verdicts as JSON to this path ("-" for stdout).
        #[arg(long)]
        json: Option<String>,
    },
    /// Least primitive prime divisor of q^n - 1 (sign -) or q^n + 1 (sign +).
    Zsigmondy {
        q: u64,
        n: u32,
        #[arg(allow_hyphen_values = true)]
        sign: String,
    },
    /// The e-core of a partition such as 2,1.
    Ecore { partition: String, e: u32 },
    /// Generic degree of the unipotent character of GL_n(q) (+) or GU_n(q) (-).
    Unideg {
        partition: String,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        eps: String,
    },
    /// Even q = 2^k, k <= max-exp, with both q - 1 and q + 1 primes or prime powers.
    ScanNeighbors {
        #[arg(long, default_value_t = 30)]
        max_exp: u32,
    },
    /// Print the generator file of a named group.
    Gens { name: String },
}

/// Parses arguments, runs the command and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e}");
        return 2;
    }
    let mut out = String::new();
    let status = match run(&cli.command, &mut out) {
        Ok(status) => status,
        Err(e) => {
            print!("{out}");
            eprintln!("error: {e}");
            return if e.is_input_error() { 2 } else { 1 };
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    status
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.trim().parse().map_err(|_| Error::invalid(format!("{THREADS_ENV}={v:?} is not a number")))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(Error::invalid("thread count must be positive"));
        }
        // A pool may already exist when called twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_json(dest: &str, text: &str, out: &mut String) -> Result<()> {
    if dest == "-" {
        out.push_str(text);
        out.push('\n');
    } else {
        std::fs::write(dest, format!("{text}\n"))?;
    }
    Ok(())
}

fn print_table(name: &str, t: &CharacterTable, out: &mut String) {
    let c = &t.classes;
    let _ = writeln!(out, "group: {name}");
    let _ = writeln!(out, "order: {}", t.group_order());
    let _ = writeln!(out, "classes: {}", c.len());
    let _ = writeln!(out, "class sizes: {}", join(&c.sizes));
    let _ = writeln!(out, "element orders: {}", join(&c.orders));
    let _ = writeln!(out, "representatives: {}", join(&c.reps));
    let _ = writeln!(out, "degrees: {}", join(&t.degrees));
    for (chi, row) in t.values.iter().enumerate() {
        let _ = writeln!(out, "chi{chi}: {}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "));
    }
}

fn print_scan(r: &ScanReport, out: &mut String) {
    let _ = writeln!(out, "{:<10} {:>3}  {:<11} {:<8} {:<24} {:<10} case", "group", "p", "method", "verdict", "cd(B0)", "primes");
    for v in &r.verdicts {
        let verdict = match (v.accepted, v.conclusive) {
            (true, _) => "accept",
            (false, true) => "reject",
            (false, false) => "open",
        };
        let cd = format!("{{{}}}", v.cd_b0.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        let primes = format!("{{{}}}", v.prime_divisors.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        let case = v.theorem_a_case.map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(out, "{:<10} {:>3}  {:<11} {:<8} {:<24} {:<10} {case}", v.subject, v.p, v.method.to_string(), verdict, cd, primes);
    }
    let _ = writeln!(out, "pairs: {}", r.verdicts.len());
    let _ = writeln!(out, "accepted: {}", r.accepted.len());
    let _ = writeln!(out, "expected: {}", r.expected.len());
    let _ = writeln!(out, "undecided by closed form alone: {}", r.inconclusive);
    for f in &r.failures {
        let _ = writeln!(out, "FAIL {f}");
    }
    let _ = writeln!(out, "{}", if r.passed() { "result: matches the list" } else { "result: MISMATCH" });
}

/// Runs one command, appending its standard output to `out`.
pub fn run(command: &Command, out: &mut String) -> Result<i32> {
    match command {
        Command::Table { group, json } => {
            let t = character_table(&resolve_group(group)?)?;
            print_table(group, &t, out);
            if let Some(dest) = json {
                write_json(dest, &t.to_json()?, out)?;
            }
        }
        Command::Blocks { group, p, json } => {
            let t = character_table(&resolve_group(group)?)?;
            let b = block_partition(&t, *p)?;
            let report = b.report(&t);
            if *json {
                write_json("-", &serde_json::to_string(&report)?, out)?;
            } else {
                let _ = writeln!(out, "group: {group}");
                let _ = writeln!(out, "p: {p}");
                let _ = writeln!(out, "degrees: {}", join(&t.degrees));
                for (i, members) in report.blocks.iter().enumerate() {
                    let degs: Vec<u64> = members.iter().map(|&c| t.degrees[c]).collect();
                    let _ = writeln!(
                        out,
                        "block {i}: characters {} degrees {} defect {}",
                        join(members),
                        join(degs),
                        members.iter().map(|&c| b.defects[c]).max().unwrap_or(0)
                    );
                }
                let _ = writeln!(out, "cd(B0): {{{}}}", report.cd_b0.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
                let all = report.cd_b0.iter().all(|&d| is_one_or_prime_power(d));
                let _ = writeln!(out, "all prime powers: {}", if all { "yes" } else { "no" });
            }
        }
        Command::VerifyTheoremA { qmax, oracle, json } => {
            if *qmax < MIN_Q_BOUND {
                return Err(Error::invalid(format!("--qmax must be at least {MIN_Q_BOUND}")));
            }
            let report = scan_theorem_a(*qmax, *oracle)?;
            print_scan(&report, out);
            if let Some(dest) = json {
                write_json(dest, &serde_json::to_string_pretty(&report)?, out)?;
            }
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Zsigmondy { q, n, sign } => {
            let sign: Sign = sign.parse()?;
            match zsigmondy_prime(*q, *n, sign)? {
                Some(r) => {
                    let _ = writeln!(out, "{r}");
                }
                None => {
                    let _ = writeln!(out, "none (exception)");
                }
            }
        }
        Command::Ecore { partition, e } => {
            let lambda: Partition = partition.parse()?;
            let _ = writeln!(out, "{}", e_core(&lambda, *e)?);
        }
        Command::Unideg { partition, q, eps } => {
            let lambda: Partition = partition.parse()?;
            let _ = writeln!(out, "{}", unipotent_degree_a(&lambda, *q, eps.parse()?)?);
        }
        Command::ScanNeighbors { max_exp } => {
            let _ = writeln!(out, "{}", join(scan_even_neighbors(*max_exp)?));
        }
        Command::Gens { name } => out.push_str(&fixture_text(name)?),
    }
    Ok(0)
}
