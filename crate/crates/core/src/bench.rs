//! Throughput harness comparing the bijective shuffle with baseline shuffles.
//!
//! Every measurement validates the algorithm's output once (during an
//! untimed warm-up run) and then reports the mean wall-clock time of `trials`
//! timed runs. Buffer allocation and one-time parameter setup such as index
//! generation for the gather baseline are excluded from the timed region.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bijection::mix64;
use crate::error::{param, Error, Result};
use crate::permutation::is_permutation;
use crate::shuffle::{shuffle_indices, shuffle_values_into, ShuffleConfig};
use crate::stats::sampler::fisher_yates;

pub const CSV_HEADER: [&str; 5] = ["algorithm", "input_size", "trials", "runtime_s", "throughput_mitems_s"];

pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_MIN_LOG2: u32 = 8;
pub const DEFAULT_MAX_LOG2: u32 = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Bijective,
    Gather,
    SortShuffle,
    FisherYates,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Bijective,
        Algorithm::Gather,
        Algorithm::SortShuffle,
        Algorithm::FisherYates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bijective => "bijective",
            Algorithm::Gather => "gather",
            Algorithm::SortShuffle => "sort-shuffle",
            Algorithm::FisherYates => "fisher-yates",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .map_or_else(|| param(format!("unknown algorithm {s:?}")), Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub input_size: u64,
    pub trials: usize,
    /// Mean runtime of one trial in seconds.
    pub runtime_s: f64,
    /// Millions of items per second.
    pub throughput_mitems_s: f64,
}

impl BenchRecord {
    fn from_timings(algorithm: Algorithm, input_size: u64, timings: &[f64]) -> Self {
        let runtime_s = timings.iter().sum::<f64>() / timings.len() as f64;
        Self {
            algorithm: algorithm.name().to_string(),
            input_size,
            trials: timings.len(),
            runtime_s,
            throughput_mitems_s: input_size as f64 / runtime_s / 1e6,
        }
    }
}

fn check_args(size: u64, trials: usize) -> Result<usize> {
    if size == 0 {
        return param("benchmark size must be at least 1");
    }
    if trials == 0 {
        return param("benchmark needs at least one trial");
    }
    usize::try_from(size).map_err(|_| Error::Parameter(format!("size {size} does not fit in memory")))
}

fn time_trials(trials: usize, mut run: impl FnMut()) -> Vec<f64> {
    (0..trials)
        .map(|_| {
            let start = Instant::now();
            run();
            start.elapsed().as_secs_f64()
        })
        .collect()
}

fn validate(algorithm: Algorithm, out: &[u64]) -> Result<()> {
    if !is_permutation(out) {
        return param(format!("{algorithm} produced an invalid permutation"));
    }
    Ok(())
}

fn keys(size: usize) -> Vec<u64> {
    (0..size as u64).into_par_iter().collect()
}

/// Parallel gather `out[i] = input[index[i]]`.
pub fn gather(input: &[u64], index: &[u64], out: &mut [u64]) {
    out.par_iter_mut()
        .zip(index.par_iter())
        .for_each(|(o, &i)| *o = input[i as usize]);
}

/// Random gather through a precomputed permutation: the bandwidth bound for
/// any shuffle that reads each input once.
pub fn bench_gather(size: u64, trials: usize, seed: u64) -> Result<BenchRecord> {
    let len = check_args(size, trials)?;
    let input = keys(len);
    let mut out = vec![0u64; len];

    let identity = keys(len);
    gather(&input, &identity, &mut out);
    if out != input {
        return param("identity gather did not copy its input");
    }
    drop(identity);

    let index = shuffle_indices(size, &ShuffleConfig::new(seed))?.into_ranks();
    gather(&input, &index, &mut out);
    validate(Algorithm::Gather, &out)?;
    let timings = time_trials(trials, || gather(&input, &index, &mut out));
    Ok(BenchRecord::from_timings(Algorithm::Gather, size, &timings))
}

/// The bijective shuffle of 64-bit keys.
pub fn bench_bijective(size: u64, trials: usize, seed: u64, config: &ShuffleConfig) -> Result<BenchRecord> {
    let len = check_args(size, trials)?;
    let input = keys(len);
    let mut out = vec![0u64; len];
    let config = config.clone().with_seed(seed);
    shuffle_values_into(&input, &mut out, &config)?;
    validate(Algorithm::Bijective, &out)?;
    let mut failure = None;
    let timings = time_trials(trials, || {
        if let Err(e) = shuffle_values_into(&input, &mut out, &config) {
            failure = Some(e);
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(BenchRecord::from_timings(Algorithm::Bijective, size, &timings))
}

/// Sort-based shuffle: draw a random 64-bit key per item, sort the
/// (key, value) pairs in parallel and read the values back.
pub fn sort_shuffle(input: &[u64], pairs: &mut [(u64, u64)], out: &mut [u64], seed: u64) {
    let salt = mix64(seed);
    pairs
        .par_iter_mut()
        .zip(input.par_iter())
        .enumerate()
        .for_each(|(i, (pair, &v))| *pair = (mix64(salt ^ i as u64), v));
    pairs.par_sort_unstable_by_key(|p| p.0);
    out.par_iter_mut()
        .zip(pairs.par_iter())
        .for_each(|(o, p)| *o = p.1);
}

pub fn bench_sort_shuffle(size: u64, trials: usize, seed: u64) -> Result<BenchRecord> {
    let len = check_args(size, trials)?;
    let input = keys(len);
    let mut pairs = vec![(0u64, 0u64); len];
    let mut out = vec![0u64; len];
    sort_shuffle(&input, &mut pairs, &mut out, seed);
    validate(Algorithm::SortShuffle, &out)?;
    let timings = time_trials(trials, || sort_shuffle(&input, &mut pairs, &mut out, seed));
    Ok(BenchRecord::from_timings(Algorithm::SortShuffle, size, &timings))
}

/// Single-threaded in-place Fisher-Yates, the sequential reference.
pub fn bench_fisher_yates(size: u64, trials: usize, seed: u64) -> Result<BenchRecord> {
    let len = check_args(size, trials)?;
    let mut data = keys(len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    fisher_yates(&mut data, &mut rng);
    validate(Algorithm::FisherYates, &data)?;
    let timings = time_trials(trials, || fisher_yates(&mut data, &mut rng));
    Ok(BenchRecord::from_timings(Algorithm::FisherYates, size, &timings))
}

pub fn bench(algorithm: Algorithm, size: u64, trials: usize, seed: u64, config: &ShuffleConfig) -> Result<BenchRecord> {
    match algorithm {
        Algorithm::Bijective => bench_bijective(size, trials, seed, config),
        Algorithm::Gather => bench_gather(size, trials, seed),
        Algorithm::SortShuffle => bench_sort_shuffle(size, trials, seed),
        Algorithm::FisherYates => bench_fisher_yates(size, trials, seed),
    }
}

/// Worst-case sizes `2^w + 1` for `w` in `min_log2..=max_log2`.
pub fn default_sizes(min_log2: u32, max_log2: u32) -> Vec<u64> {
    (min_log2..=max_log2).map(|w| (1u64 << w) + 1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => param(format!("unknown output format {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub sizes: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    pub trials: usize,
    pub seed: u64,
    pub shuffle: ShuffleConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            sizes: default_sizes(DEFAULT_MIN_LOG2, DEFAULT_MAX_LOG2),
            algorithms: Algorithm::ALL.to_vec(),
            trials: DEFAULT_TRIALS,
            seed: 0,
            shuffle: ShuffleConfig::default(),
        }
    }
}

/// Benchmarks every (size, algorithm) pair in order, streaming CSV rows to
/// `sink` as they complete, or writing one JSON array at the end.
pub fn run_suite(config: &SuiteConfig, sink: &mut dyn Write, format: OutputFormat) -> Result<Vec<BenchRecord>> {
    let mut csv_writer = match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut *sink);
            w.write_record(CSV_HEADER)?;
            w.flush()?;
            Some(w)
        }
        OutputFormat::Json => None,
    };
    let mut records = Vec::with_capacity(config.sizes.len() * config.algorithms.len());
    for &size in &config.sizes {
        for &algorithm in &config.algorithms {
            let record = bench(algorithm, size, config.trials, config.seed, &config.shuffle)?;
            if let Some(w) = csv_writer.as_mut() {
                w.serialize(&record)?;
                w.flush()?;
            }
            records.push(record);
        }
    }
    drop(csv_writer);
    if format == OutputFormat::Json {
        serde_json::to_writer_pretty(&mut *sink, &records)?;
        writeln!(sink)?;
    }
    Ok(records)
}

pub fn write_csv(records: &[BenchRecord], sink: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(source: impl Read) -> Result<Vec<BenchRecord>> {
    let mut reader = csv::Reader::from_reader(source);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return param(format!("unexpected benchmark CSV header {header:?}"));
    }
    reader.deserialize().map(|r| r.map_err(Error::from)).collect()
}
