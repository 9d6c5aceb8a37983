//! The `spacecode` command line.
//!
//! Exit codes: 0 success, 2 invalid input or arguments, 3 malformed stream,
//! 4 oracle budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{self, BenchSpec, Family};
use crate::bounds::full_report;
use crate::codec::{encode, CodeTrie, StreamDecoder};
use crate::format::{round_sig, to_json, CodebookFile, DistributionFile};
use crate::oracle::{Oracle, SearchSpace, DEFAULT_NODE_BUDGET};
use crate::radix::assign_one_to_one;
use crate::source_model::{SourceDistribution, ZeroPolicy};
use crate::space_code::build_space_code;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "spacecode",
    version,
    about = "Prefix-free codes with an end-only space symbol"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a codebook for a distribution file.
    Construct {
        #[command(flatten)]
        dist: DistArgs,
        /// Emit the optimal one-to-one code instead of the space code.
        #[arg(long)]
        one_to_one: bool,
        /// With --one-to-one, also use the empty word.
        #[arg(long, requires = "one_to_one")]
        epsilon: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Encode whitespace-separated 1-based symbol indices.
    Encode {
        /// Codebook JSON file.
        codebook: PathBuf,
        /// Message file; stdin when absent or `-`.
        #[arg(long, short)]
        input: Option<PathBuf>,
        /// Message given inline, e.g. "1 3".
        #[arg(long, short, conflicts_with = "input")]
        message: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decode a stream into 1-based symbol indices, one per line.
    Decode {
        /// Codebook JSON file.
        codebook: PathBuf,
        /// Stream file; stdin when absent or `-`.
        #[arg(long, short)]
        input: Option<PathBuf>,
        /// Stream given inline.
        #[arg(long, short, conflicts_with = "input")]
        stream: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Report every bound and reference length.
    Bounds {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Find an optimal space code by exhaustive search (small inputs only).
    Oracle {
        #[command(flatten)]
        dist: DistArgs,
        /// Longest candidate string; defaults to the longest one-to-one
        /// codeword plus one.
        #[arg(long)]
        max_len: Option<u32>,
        /// Search node budget.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Only search prefix-closed string sets.
        #[arg(long)]
        prefix_closed: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a comparison table over a source family and print CSV.
    Bench {
        #[arg(long, value_enum, default_value_t = FamilyArg::Zipf)]
        family: FamilyArg,
        /// Weights file for `--family custom`.
        #[arg(long, required_if_eq("family", "custom"))]
        dist: Option<PathBuf>,
        #[arg(short, long, default_value_t = 10)]
        n: usize,
        #[arg(short, long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 1.0)]
        param: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Relative random noise applied to each weight per trial.
        #[arg(long, default_value_t = 0.0)]
        perturbation: f64,
        /// Run the oracle when n is at most this.
        #[arg(long, default_value_t = 8)]
        oracle_max_n: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Distribution file (JSON or CSV).
    pub dist: PathBuf,
    /// Code alphabet size; overrides the file.
    #[arg(short, long)]
    pub k: Option<u32>,
    /// Drop zero weights instead of rejecting them.
    #[arg(long)]
    pub drop_zeros: bool,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Zipf,
    Geometric,
    Uniform,
    Custom,
}

/// Maps an error to its process exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::MalformedStream { .. } => EXIT_MALFORMED,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Messages go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    match run(
        cli,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    ) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(path: &Path, e: io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<Vec<u8>> {
    match path {
        Some(p) if p != Path::new("-") => fs::read(p).map_err(|e| io_err(p, e)),
        _ => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| Error::Io(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn check_output(out: &OutArgs) -> Result<()> {
    if let Some(path) = &out.output {
        let parent = path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(Error::Io(format!(
                "{}: output directory does not exist",
                parent.display()
            )));
        }
    }
    Ok(())
}

fn write_output(out: &OutArgs, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, bytes).map_err(|e| io_err(path, e)),
        None => stdout
            .write_all(bytes)
            .and_then(|()| stdout.flush())
            .map_err(|e| Error::Io(format!("stdout: {e}"))),
    }
}

fn load_dist(args: &DistArgs) -> Result<SourceDistribution> {
    let zeros = if args.drop_zeros {
        ZeroPolicy::Drop
    } else {
        ZeroPolicy::Reject
    };
    DistributionFile::parse(&read_file(&args.dist)?)?.distribution(args.k, zeros)
}

fn load_codebook(path: &Path) -> Result<CodebookFile> {
    CodebookFile::parse(&read_file(path)?)
}

fn parse_message(text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| Error::InvalidSpec(format!("{tok:?} is not a symbol index")))
        })
        .collect()
}

#[derive(Serialize)]
struct OracleMetadata {
    n: usize,
    k: u32,
    optimal_length: f64,
    instances_searched: u64,
    nodes_visited: u64,
    max_len: u32,
    prefix_closed: bool,
}

#[derive(Serialize)]
struct OracleOutput {
    codebook: CodebookFile,
    metadata: OracleMetadata,
}

/// Executes a parsed command against the given streams.
pub fn run(
    cli: Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    match cli.command {
        Command::Construct {
            dist,
            one_to_one,
            epsilon,
            out,
        } => {
            check_output(&out)?;
            let d = load_dist(&dist)?;
            let (file, length, spaces) = if one_to_one {
                let code = assign_one_to_one(&d, epsilon);
                (
                    CodebookFile::from_one_to_one(&code),
                    code.average_length(&d)?,
                    0,
                )
            } else {
                let code = build_space_code(&d);
                (
                    CodebookFile::from_space_code(&code),
                    code.average_length(&d)?,
                    code.space_count(),
                )
            };
            let json = serde_json::to_string(&file.in_input_order(&d))
                .map_err(|e| Error::Io(e.to_string()))?;
            write_output(&out, format!("{json}\n").as_bytes(), stdout)?;
            let _ = writeln!(
                stderr,
                "n={} k={} L={} spaces={spaces}",
                d.len(),
                d.k(),
                round_sig(length, crate::format::JSON_DIGITS)
            );
            Ok(())
        }
        Command::Encode {
            codebook,
            input,
            message,
            out,
        } => {
            check_output(&out)?;
            let code = load_codebook(&codebook)?.to_space_code()?;
            let text = match message {
                Some(m) => m,
                None => String::from_utf8(read_input(input.as_deref(), stdin)?)
                    .map_err(|_| Error::InvalidSpec("message is not UTF-8".into()))?,
            };
            let stream = encode(&code, &parse_message(&text)?)?;
            write_output(&out, stream.as_bytes(), stdout)
        }
        Command::Decode {
            codebook,
            input,
            stream,
            out,
        } => {
            check_output(&out)?;
            let code = load_codebook(&codebook)?.to_space_code()?;
            let bytes = match stream {
                Some(s) => s.into_bytes(),
                None => read_input(input.as_deref(), stdin)?,
            };
            let trie = CodeTrie::build(&code)?;
            let mut decoder = StreamDecoder::new(&trie);
            let mut text = String::new();
            for b in bytes {
                if let Some(symbol) = decoder.push(b)? {
                    text.push_str(&symbol.to_string());
                    text.push('\n');
                }
            }
            decoder.finish()?;
            write_output(&out, text.as_bytes(), stdout)
        }
        Command::Bounds { dist, format, out } => {
            check_output(&out)?;
            let report = full_report(&load_dist(&dist)?);
            let text = match format {
                Format::Json => to_json(&report)? + "\n",
                Format::Csv => {
                    let mut text = String::from("formula_id,kind,target,value,strict\n");
                    for r in &report.records {
                        text.push_str(&format!(
                            "{},{},{},{},{}\n",
                            r.formula_id,
                            r.kind,
                            r.target,
                            round_sig(r.value, bench::CSV_DIGITS),
                            r.strict
                        ));
                    }
                    text
                }
            };
            write_output(&out, text.as_bytes(), stdout)
        }
        Command::Oracle {
            dist,
            max_len,
            budget,
            prefix_closed,
            out,
        } => {
            check_output(&out)?;
            let d = load_dist(&dist)?;
            let space = if prefix_closed {
                SearchSpace::PrefixClosed
            } else {
                SearchSpace::AllSets
            };
            let res = Oracle {
                max_len,
                node_budget: budget,
                space,
            }
            .run(&d)?;
            let output = OracleOutput {
                codebook: CodebookFile::from_space_code(&res.witness),
                metadata: OracleMetadata {
                    n: d.len(),
                    k: d.k(),
                    optimal_length: res.optimal_length,
                    instances_searched: res.instances_searched,
                    nodes_visited: res.nodes_visited,
                    max_len: res.max_len,
                    prefix_closed,
                },
            };
            write_output(&out, (to_json(&output)? + "\n").as_bytes(), stdout)
        }
        Command::Bench {
            family,
            dist,
            n,
            k,
            param,
            seed,
            trials,
            perturbation,
            oracle_max_n,
            budget,
            out,
        } => {
            check_output(&out)?;
            let (family, n) = match family {
                FamilyArg::Zipf => (Family::Zipf, n),
                FamilyArg::Geometric => (Family::Geometric, n),
                FamilyArg::Uniform => (Family::Uniform, n),
                FamilyArg::Custom => {
                    let path = dist.expect("clap requires --dist for custom");
                    let weights = DistributionFile::parse(&read_file(&path)?)?.probs;
                    let len = weights.len();
                    (Family::Custom(weights), len)
                }
            };
            let spec = BenchSpec {
                family,
                n,
                k,
                param,
                seed,
                trials,
                perturbation,
                oracle_max_n,
                oracle_budget: budget,
            };
            let rows = bench::run(&spec)?;
            let mut buf = Vec::new();
            bench::write_csv(&rows, &mut buf)?;
            write_output(&out, &buf, stdout)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], stdin: &str) -> (Result<()>, String, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("spacecode").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let res = run(cli, &mut stdin.as_bytes(), &mut out, &mut err);
        (
            res,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn temp_file(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("spacecode-cli-unit-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        fs::write(&path, body).unwrap();
        path
    }

    #[test]
    fn construct_and_codec() {
        let dist = temp_file("four.csv", "prob\n1\n1\n1\n1\n");
        let (res, out, err) = run_args(&["construct", dist.to_str().unwrap()], "");
        res.unwrap();
        assert_eq!(
            out,
            "{\"kind\":\"space_prefix\",\"k\":2,\"codewords\":[\"1\",\"0_\",\"01\",\"00\"]}\n"
        );
        assert_eq!(err, "n=4 k=2 L=1.75 spaces=1\n");

        let book = temp_file("four.json", &out);
        let (res, stream, _) = run_args(&["encode", book.to_str().unwrap()], "2 4 1\n");
        res.unwrap();
        assert_eq!(stream, "0_001");
        let (res, symbols, _) = run_args(&["decode", book.to_str().unwrap()], &stream);
        res.unwrap();
        assert_eq!(symbols, "2\n4\n1\n");
        let (res, _, _) = run_args(&["decode", book.to_str().unwrap(), "--stream", "1_"], "");
        assert_eq!(exit_code(&res.unwrap_err()), EXIT_MALFORMED);
    }

    #[test]
    fn bounds_csv_names() {
        let dist = temp_file("two.json", r#"{"k": 2, "probs": [1, 1]}"#);
        let (res, out, _) = run_args(&["bounds", dist.to_str().unwrap(), "--format", "csv"], "");
        res.unwrap();
        assert!(out.starts_with("formula_id,kind,target,value,strict\nlb_eps_plain,lower,L_eps,"));
        assert_eq!(out.lines().count(), 17);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::BudgetExceeded { searched: 1 }),
            EXIT_BUDGET
        );
        assert_eq!(exit_code(&Error::InvalidAlphabet(1)), EXIT_INVALID);
        let (res, _, _) = run_args(&["construct", "/nonexistent/dist.csv"], "");
        assert_eq!(exit_code(&res.unwrap_err()), EXIT_INVALID);
    }
}
