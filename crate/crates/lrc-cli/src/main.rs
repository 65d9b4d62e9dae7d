//! Command-line front end for the `lrc` library: code construction,
//! encoding, erasure simulation, repair planning and execution,
//! tolerance verification, repair-set search, and bound tables.
//!
//! One command per invocation. Exit codes: 0 on success (or a verified
//! property), 1 on operational failure (bad input data, stuck plans,
//! failed checks), 2 on usage errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lrc::analysis::{self, VerifyMode, VerifyOptions};
use lrc::bounds;
use lrc::{BitWord, CodeParams, Coord, MaskedWord, PlanOutcome};

#[derive(Parser)]
#[command(
    name = "lrc",
    version,
    about = "Binary locally repairable codes built as products of single-parity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Code parameters shared by most commands.
#[derive(Args)]
struct CodeArgs {
    /// Locality: each repair reads at most r symbols.
    #[arg(short = 'r', value_parser = clap::value_parser!(u32).range(2..))]
    r: u32,

    /// Axes: the code is an m-fold product, length (r+1)^m.
    #[arg(short = 'm', value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
}

impl CodeArgs {
    /// Builds the parameter set; rejections here are configuration
    /// mistakes, so they use the usage exit code.
    fn params(&self) -> CodeParams {
        match CodeParams::new(self.r, self.m) {
            Ok(p) => p,
            Err(err) => {
                eprintln!("error: {err}");
                std::process::exit(2);
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Every pattern of every size up to the maximum.
    Exhaustive,
    /// Seeded uniform samples at each size.
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Print "n k t": length, dimension, and erasure tolerance.
    Params(CodeArgs),

    /// Print the parity-check matrix in its text format.
    Matrix {
        #[command(flatten)]
        code: CodeArgs,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Encode k information bits into an n-bit codeword.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        /// Input file with k bits as '0'/'1' (stdin if absent).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Exit 0 if the input word is a codeword, 1 otherwise.
    Check {
        #[command(flatten)]
        code: CodeArgs,
        /// Input file with n bits (stdin if absent).
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },

    /// Replace the coordinates of an erasure pattern with '?'.
    Erase {
        #[command(flatten)]
        code: CodeArgs,
        /// File of whitespace-separated coordinates to erase.
        #[arg(long)]
        pattern: PathBuf,
        /// Input file with n bits (stdin if absent).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Produce a sequential repair plan for an erasure pattern.
    Plan {
        #[command(flatten)]
        code: CodeArgs,
        /// File of whitespace-separated coordinates to repair.
        #[arg(long)]
        pattern: PathBuf,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Fill in the '?' positions of a masked codeword.
    Repair {
        #[command(flatten)]
        code: CodeArgs,
        /// Input file with n characters of '0'/'1'/'?' (stdin if absent).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Certify that every erasure pattern up to a size has a repair.
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        /// Largest pattern size to check (default: the tolerance t).
        #[arg(long)]
        max_size: Option<usize>,
        /// Pattern selection strategy.
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Samples per pattern size in random mode.
        #[arg(long, default_value_t = analysis::DEFAULT_SAMPLES_PER_SIZE)]
        samples: u64,
        /// Seed for random mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: one per CPU).
        #[arg(long)]
        jobs: Option<usize>,
        /// Refuse runs that would visit more patterns than this.
        #[arg(long, default_value_t = analysis::DEFAULT_PATTERN_BUDGET)]
        budget: u64,
        /// Output file for the report (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// For each erased coordinate, report an axis whose line avoids the
    /// pattern, or "blocked". Exit 0 only if nothing is blocked.
    ParallelCheck {
        #[command(flatten)]
        code: CodeArgs,
        /// File of whitespace-separated erased coordinates.
        #[arg(long)]
        pattern: PathBuf,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// For each erased coordinate, search for a smallest repair set among
    /// the live coordinates, or report "none". Exit 0 only if every
    /// coordinate has one.
    Oracle {
        #[command(flatten)]
        code: CodeArgs,
        /// File of whitespace-separated erased coordinates.
        #[arg(long)]
        pattern: PathBuf,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Print the length and rate bounds evaluated at these parameters.
    Bounds(CodeArgs),

    /// Print the comparison tables (1, 2, or both).
    Tables {
        /// Which table; both when absent.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: Option<u8>,
        /// Emit CSV instead of aligned text.
        #[arg(long)]
        csv: bool,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Print the exact minimum distance by brute force.
    Mindist(CodeArgs),
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            Ok(buf)
        }
    }
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout"),
    }
}

fn read_word(path: Option<&Path>) -> Result<BitWord> {
    Ok(read_text(path)?.trim().parse::<BitWord>()?)
}

fn read_pattern(p: &CodeParams, path: &Path) -> Result<lrc::ErasurePattern> {
    let text = read_text(Some(path))?;
    Ok(p.parse_pattern(&text)?)
}

fn coord_line(p: &CodeParams, coords: &[Coord]) -> String {
    coords
        .iter()
        .map(|c| p.coord_token(c))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Params(code) => {
            let p = code.params();
            println!("{} {} {}", p.n(), p.k(), p.t());
            Ok(0)
        }

        Command::Matrix { code, out } => {
            let p = code.params();
            write_text(out.as_deref(), &p.build_parity_check().to_string())?;
            Ok(0)
        }

        Command::Encode { code, input, out } => {
            let p = code.params();
            let info = read_word(input.as_deref())?;
            let word = p.encode(&info)?;
            write_text(out.as_deref(), &format!("{word}\n"))?;
            Ok(0)
        }

        Command::Check { code, input } => {
            let p = code.params();
            let word = read_word(input.as_deref())?;
            if p.is_codeword(&word)? {
                Ok(0)
            } else {
                eprintln!("not a codeword");
                Ok(1)
            }
        }

        Command::Erase {
            code,
            pattern,
            input,
            out,
        } => {
            let p = code.params();
            let word = read_word(input.as_deref())?;
            let e = read_pattern(&p, &pattern)?;
            let masked = MaskedWord::new(&word, e.ranks())?;
            write_text(out.as_deref(), &format!("{masked}\n"))?;
            Ok(0)
        }

        Command::Plan { code, pattern, out } => {
            let p = code.params();
            let e = read_pattern(&p, &pattern)?;
            match p.plan_sequential(&e) {
                PlanOutcome::Complete(plan) => {
                    write_text(out.as_deref(), &plan.to_text(&p))?;
                    Ok(0)
                }
                PlanOutcome::Stuck { plan, remaining } => {
                    eprintln!(
                        "stuck after {} steps: no repair order covers {}",
                        plan.len(),
                        coord_line(&p, &remaining)
                    );
                    Ok(1)
                }
            }
        }

        Command::Repair { code, input, out } => {
            let p = code.params();
            let masked: MaskedWord = read_text(input.as_deref())?.trim().parse()?;
            let e = p.pattern_from_ranks(masked.erased_positions())?;
            if e.is_empty() {
                let word = masked.to_word().expect("no erasures left");
                write_text(out.as_deref(), &format!("{word}\n"))?;
                return Ok(0);
            }
            match p.plan_sequential(&e) {
                PlanOutcome::Complete(plan) => {
                    let word = p.execute_plan(&masked, &plan)?;
                    write_text(out.as_deref(), &format!("{word}\n"))?;
                    Ok(0)
                }
                PlanOutcome::Stuck { plan, remaining } => {
                    eprintln!(
                        "stuck after {} steps: no repair order covers {}",
                        plan.len(),
                        coord_line(&p, &remaining)
                    );
                    Ok(1)
                }
            }
        }

        Command::Verify {
            code,
            max_size,
            mode,
            samples,
            seed,
            jobs,
            budget,
            out,
        } => {
            let p = code.params();
            let max_size = max_size.unwrap_or(p.t() as usize);
            let opts = VerifyOptions {
                mode: match mode {
                    Mode::Exhaustive => VerifyMode::Exhaustive,
                    Mode::Random => VerifyMode::Random {
                        samples_per_size: samples,
                        seed,
                    },
                },
                max_size,
                budget,
                jobs,
            };
            let report = analysis::verify_elrc(&p, &opts)?;
            write_text(out.as_deref(), &report.to_string())?;
            Ok(if report.is_failure_free() { 0 } else { 1 })
        }

        Command::ParallelCheck { code, pattern, out } => {
            let p = code.params();
            let e = read_pattern(&p, &pattern)?;
            let check = p.parallel_repairable(&e);
            let mut text = String::new();
            for c in p.pattern_coords(&e) {
                let token = p.coord_token(&c);
                match check.witnesses().iter().find(|(w, _)| *w == c) {
                    Some((_, axis)) => {
                        text.push_str(&format!("{token} axis {axis}\n"))
                    }
                    None => text.push_str(&format!("{token} blocked\n")),
                }
            }
            write_text(out.as_deref(), &text)?;
            Ok(if check.is_repairable() { 0 } else { 1 })
        }

        Command::Oracle { code, pattern, out } => {
            let p = code.params();
            let e = read_pattern(&p, &pattern)?;
            let live: Vec<Coord> = p
                .coords()
                .filter(|c| !e.contains_rank(p.coord_rank(c).expect("own coord")))
                .collect();
            let mut text = String::new();
            let mut all_found = true;
            for c in p.pattern_coords(&e) {
                let token = p.coord_token(&c);
                match analysis::general_repair_set_oracle(&p, &c, &live)? {
                    Some(set) => text.push_str(&format!(
                        "{token} from {}\n",
                        coord_line(&p, &set)
                    )),
                    None => {
                        all_found = false;
                        text.push_str(&format!("{token} none\n"));
                    }
                }
            }
            write_text(out.as_deref(), &text)?;
            Ok(if all_found { 0 } else { 1 })
        }

        Command::Bounds(code) => {
            let p = code.params();
            let row = bounds::bounds_row(p.r() as u64, p.t(), p.k() as u64);
            println!("r {}", p.r());
            println!("m {}", p.m());
            println!("n {}", p.n());
            println!("k {}", p.k());
            println!("t {}", p.t());
            println!("rate {}/{}", p.k(), p.n());
            println!("n_min_parallel {}", row.n_min_parallel);
            println!("availability_rate_bound {}", row.availability_rate_bound);
            println!("n_min_t2 {}", row.n_min_t2);
            println!("n_min_t3 {}", row.n_min_t3);
            Ok(0)
        }

        Command::Tables { which, csv, out } => {
            let text = match (which, csv) {
                (Some(1), false) => bounds::table1_text(),
                (Some(1), true) => bounds::table1_csv(),
                (Some(2), false) => bounds::table2_text(),
                (Some(2), true) => bounds::table2_csv(),
                (None, false) => format!("{}\n{}", bounds::table1_text(), bounds::table2_text()),
                (None, true) => format!("{}\n{}", bounds::table1_csv(), bounds::table2_csv()),
                (Some(_), _) => unreachable!("range-checked by the parser"),
            };
            write_text(out.as_deref(), &text)?;
            Ok(0)
        }

        Command::Mindist(code) => {
            let p = code.params();
            println!("{}", analysis::min_distance_bruteforce(&p)?);
            Ok(0)
        }
    }
}

fn main() {
    match run(Cli::parse()) {
        Ok(code) => std::process::exit(code.into()),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
