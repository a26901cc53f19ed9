//! Command-line front end: `shuffle`, `test` and `bench`.
//!
//! Exit codes: 0 on success or a passing test, 1 on a failing test or a
//! runtime failure such as unreadable input, 2 on a usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, Algorithm, OutputFormat, SuiteConfig};
use crate::bijection::DEFAULT_ROUNDS;
use crate::error::{Error, Result};
use crate::shuffle::{shuffle_indices, shuffle_values, ShuffleConfig, Variant, Workers};
use crate::stats::{
    chi_squared_test, mmd_test, BijectiveSampler, FisherYatesSampler, MmdThreshold, PermutationSource,
    TestReport, DEFAULT_ALPHA, DEFAULT_LAMBDA,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bijective-shuffle", version, about = "Deterministic parallel shuffling and uniformity tests")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a shuffled index sequence or the shuffled lines of a file.
    Shuffle(ShuffleArgs),
    /// Run a uniformity test and print its report as JSON.
    Test(TestArgs),
    /// Benchmark shuffle throughput and print CSV or JSON records.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SeedArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Draw the seed from the operating system instead of --seed.
    #[arg(long)]
    pub entropy: bool,
    #[arg(long, default_value_t = DEFAULT_ROUNDS)]
    pub rounds: usize,
    /// Worker threads for the shuffle (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

impl SeedArgs {
    fn seed(&self, stderr: &mut dyn Write) -> u64 {
        if self.entropy {
            let seed = rand::random();
            let _ = writeln!(stderr, "seed: {seed}");
            seed
        } else {
            self.seed
        }
    }

    fn shuffle_config(&self, variant: Variant, stderr: &mut dyn Write) -> ShuffleConfig {
        ShuffleConfig::new(self.seed(stderr))
            .with_variant(variant)
            .with_rounds(self.rounds)
            .with_workers(self.workers.map_or(Workers::Auto, Workers::Fixed))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Philox,
    Lcg,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Philox => Variant::VariablePhilox,
            VariantArg::Lcg => Variant::Lcg,
        }
    }
}

#[derive(Debug, Args)]
pub struct ShuffleArgs {
    /// Print a random permutation of 0..M, one index per line.
    #[arg(long, value_name = "M", conflicts_with = "input")]
    pub indices: Option<u64>,
    /// File whose lines are shuffled; `-` reads standard input.
    #[arg(required_unless_present = "indices")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "philox")]
    pub variant: VariantArg,
    #[command(flatten)]
    pub seed: SeedArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Chi2,
    MmdHoeffding,
    MmdNormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Philox,
    Lcg,
    FisherYates,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[arg(long, value_enum, default_value = "mmd-normal")]
    pub kind: KindArg,
    #[arg(long = "gen", value_enum, default_value = "philox")]
    pub generator: GeneratorArg,
    /// Permutation length (chi2 supports only 5; MMD defaults to 100).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    pub lambda: f64,
    #[command(flatten)]
    pub seed: SeedArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated input sizes (default: 2^w+1 for w in min..=max log2).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<u64>,
    /// Comma-separated algorithms: bijective, gather, sort-shuffle, fisher-yates.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    pub algos: Vec<Algorithm>,
    #[arg(long, default_value_t = bench::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = bench::DEFAULT_MIN_LOG2)]
    pub min_log2: u32,
    #[arg(long, default_value_t = bench::DEFAULT_MAX_LOG2)]
    pub max_log2: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Write records here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub seed: SeedArgs,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(stderr, "{}", rendered.ansi())
            } else {
                write!(stdout, "{}", rendered.ansi())
            };
            return e.exit_code();
        }
    };
    let outcome = match &cli.command {
        Command::Shuffle(args) => cmd_shuffle(args, stdout, stderr),
        Command::Test(args) => cmd_test(args, stdout, stderr),
        Command::Bench(args) => cmd_bench(args, stdout, stderr),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Parameter(_) | Error::Domain { .. } | Error::OutOfRange(_) => EXIT_USAGE,
                _ => EXIT_FAIL,
            }
        }
    }
}

pub fn cmd_shuffle(args: &ShuffleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let config = args.seed.shuffle_config(args.variant.into(), stderr);
    config.validate()?;
    let mut out = BufWriter::new(stdout);
    if let Some(m) = args.indices {
        for r in shuffle_indices(m, &config)?.ranks() {
            writeln!(out, "{r}")?;
        }
    } else {
        let path = args.input.as_ref().expect("clap requires input without --indices");
        let text = read_input(path).map_err(|e| {
            Error::Io(io::Error::new(e.kind(), format!("cannot read {}: {e}", path.display())))
        })?;
        let lines: Vec<&str> = text.lines().collect();
        for line in shuffle_values(&lines, &config)? {
            writeln!(out, "{line}")?;
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
    }
}

pub fn cmd_test(args: &TestArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let seed = args.seed.seed(stderr);
    let variant = match args.generator {
        GeneratorArg::Lcg => Variant::Lcg,
        _ => Variant::VariablePhilox,
    };
    let shuffle = ShuffleConfig::new(seed)
        .with_variant(variant)
        .with_rounds(args.seed.rounds)
        .with_workers(args.seed.workers.map_or(Workers::Auto, Workers::Fixed));
    let source: Box<dyn PermutationSource> = match args.generator {
        GeneratorArg::FisherYates => Box::new(FisherYatesSampler::new(seed)),
        GeneratorArg::Philox | GeneratorArg::Lcg => Box::new(BijectiveSampler::new(shuffle)?),
    };
    let report: TestReport = match args.kind {
        KindArg::Chi2 => {
            if let Some(n) = args.n.filter(|&n| n != crate::stats::chi_squared::CHI_SQUARED_LENGTH) {
                return Err(Error::Parameter(format!("the chi2 test only supports --n 5, got {n}")));
            }
            chi_squared_test(source.as_ref(), args.samples, args.alpha)?
        }
        KindArg::MmdHoeffding | KindArg::MmdNormal => {
            let kind = if args.kind == KindArg::MmdNormal {
                MmdThreshold::Normal
            } else {
                MmdThreshold::Hoeffding
            };
            mmd_test(source.as_ref(), args.n.unwrap_or(100), args.samples, args.alpha, args.lambda, kind)?
        }
    };
    serde_json::to_writer_pretty(&mut *stdout, &report)?;
    writeln!(stdout)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    if args.min_log2 > args.max_log2 || args.max_log2 > 40 {
        return Err(Error::Parameter(format!(
            "invalid size grid {}..={}",
            args.min_log2, args.max_log2
        )));
    }
    let seed = args.seed.seed(stderr);
    let config = SuiteConfig {
        sizes: if args.sizes.is_empty() {
            bench::default_sizes(args.min_log2, args.max_log2)
        } else {
            args.sizes.clone()
        },
        algorithms: if args.algos.is_empty() {
            Algorithm::ALL.to_vec()
        } else {
            args.algos.clone()
        },
        trials: args.trials,
        seed,
        shuffle: args.seed.shuffle_config(Variant::VariablePhilox, stderr).with_seed(seed),
    };
    config.shuffle.validate()?;
    if config.trials == 0 || config.sizes.contains(&0) {
        return Err(Error::Parameter("sizes and trials must be positive".into()));
    }
    let format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };
    match &args.output {
        Some(path) => {
            let mut file = BufWriter::new(fs::File::create(path)?);
            bench::run_suite(&config, &mut file, format)?;
            file.flush()?;
        }
        None => {
            bench::run_suite(&config, stdout, format)?;
        }
    }
    Ok(EXIT_OK)
}
