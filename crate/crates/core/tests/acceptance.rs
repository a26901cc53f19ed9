//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits nonzero when any criterion fails, except a throughput criterion that
//! is defined for multicore hosts and is run on a single core; that one still
//! prints its FAIL line and measurements.

mod common;

use std::collections::{HashMap, HashSet};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use bijective_shuffle::bench::{bench_bijective, bench_gather, bench_sort_shuffle, BenchRecord};
use bijective_shuffle::stats::{
    chi_squared_test, kendall_distance, mallows_expectation, mallows_variance, mmd_test, BijectiveSampler,
    IdentitySampler, MmdThreshold,
};
use bijective_shuffle::{
    compact_permutation, shuffle_indices, LcgParams, Permutation, ShuffleConfig, Variant, VariablePhiloxParams,
    Workers,
};
use common::{all_permutations, brute_kendall, enumerated_kernel_moments, factorial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_bijective-shuffle");

type Criterion = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the criterion's stated host requirement is not met.
    waived: Option<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into(), waived: None }
    }
}

fn within(limit: Duration, start: Instant, mut outcome: Outcome) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed > limit {
        outcome.pass = false;
    }
    outcome.detail = format!("{}; {:.1}s (limit {}s)", outcome.detail, elapsed.as_secs_f64(), limit.as_secs());
    outcome
}

fn covers_domain(bits: u32, f: impl Fn(u64) -> u64) -> bool {
    let size = 1usize << bits;
    let mut seen = vec![false; size];
    for x in 0..size as u64 {
        let y = f(x) as usize;
        if y >= size || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

fn bijectivity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut violations = Vec::new();
    let mut checked = 0;
    for bits in 2..=16 {
        for _ in 0..20 {
            let seed: u64 = rng.random();
            let philox = VariablePhiloxParams::new(bits, seed, 24).unwrap();
            if !covers_domain(bits, |x| philox.apply(x).unwrap()) {
                violations.push(format!("philox bits={bits} seed={seed}"));
            }
            checked += 1;
        }
    }
    for bits in 1..=16 {
        for _ in 0..20 {
            let seed: u64 = rng.random();
            let lcg = LcgParams::from_seed(bits, seed).unwrap();
            if !covers_domain(bits, |x| lcg.apply(x).unwrap()) {
                violations.push(format!("lcg bits={bits} seed={seed}"));
            }
            checked += 1;
        }
    }
    let detail = format!("{checked} bijections, {} violations {violations:?}", violations.len());
    within(Duration::from_secs(60), start, Outcome::new(violations.is_empty(), detail))
}

fn inversion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0u64;
    let mut points = 0u64;
    for bits in 2..=12 {
        for _ in 0..5 {
            let p = VariablePhiloxParams::new(bits, rng.random(), 24).unwrap();
            for x in 0..1u64 << bits {
                violations += (p.invert(p.apply(x).unwrap()).unwrap() != x) as u64;
                points += 1;
            }
        }
    }
    let p = VariablePhiloxParams::new(63, rng.random(), 24).unwrap();
    for _ in 0..100_000 {
        let x = rng.random::<u64>() >> 1;
        violations += (p.invert(p.apply(x).unwrap()).unwrap() != x) as u64;
        points += 1;
    }
    Outcome::new(violations == 0, format!("{points} points, {violations} violations"))
}

fn compaction_fibers() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=6u64 {
        let all = all_permutations(n as usize);
        for m in 0..=n {
            let mut fibers: HashMap<Vec<u64>, u64> = HashMap::new();
            for w in &all {
                let tau = compact_permutation(&Permutation::new(w.clone()).unwrap(), m).unwrap();
                *fibers.entry(tau.into_ranks()).or_default() += 1;
            }
            let expected = factorial(n) / factorial(m);
            if fibers.len() as u64 != factorial(m) || fibers.values().any(|&c| c != expected) {
                bad.push((n, m));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("n<=6, all m<=n; mismatched (n, m): {bad:?}"))
}

fn moments() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        for lambda in [1.0, 5.0] {
            let (mean, var) = enumerated_kernel_moments(n, lambda);
            worst = worst
                .max((mallows_expectation(n, lambda).unwrap() - mean).abs())
                .max((mallows_variance(n, lambda).unwrap() - var).abs());
        }
    }
    Outcome::new(worst <= 1e-12, format!("max abs error {worst:.3e} (tol 1e-12)"))
}

fn kendall() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = 0;
    for _ in 0..10_000 {
        let n = rng.random_range(0..=200);
        let a = common::oracle_shuffle(n, &mut rng);
        let b = common::oracle_shuffle(n, &mut rng);
        let fast = kendall_distance(&Permutation::new(a.clone()).unwrap(), &Permutation::new(b.clone()).unwrap());
        mismatches += (fast.unwrap() != brute_kendall(&a, &b)) as u32;
    }
    Outcome::new(mismatches == 0, format!("10000 pairs, {mismatches} mismatches"))
}

fn chi_squared() -> Outcome {
    let start = Instant::now();
    let philox = BijectiveSampler::new(ShuffleConfig::new(2024).with_rounds(24)).unwrap();
    let good = chi_squared_test(&philox, 100_000, 0.05).unwrap();
    let lcg = BijectiveSampler::new(ShuffleConfig::new(2024).with_variant(Variant::Lcg)).unwrap();
    let bad = chi_squared_test(&lcg, 100_000, 0.05).unwrap();
    let pass = good.pass && (good.threshold - 145.5).abs() < 0.1 && bad.statistic > 10.0 * bad.threshold;
    let detail = format!(
        "philox statistic {:.2} < threshold {:.2}; lcg statistic {:.0} ({:.0}x threshold)",
        good.statistic,
        good.threshold,
        bad.statistic,
        bad.statistic / bad.threshold
    );
    within(Duration::from_secs(120), start, Outcome::new(pass, detail))
}

fn mmd() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, seed) in [(5, 11), (100, 12), (1000, 13)] {
        let sampler = BijectiveSampler::new(ShuffleConfig::new(seed)).unwrap();
        let good = mmd_test(&sampler, n, 10_000, 0.05, 5.0, MmdThreshold::Normal).unwrap();
        let bad = mmd_test(&IdentitySampler, n, 10_000, 0.05, 5.0, MmdThreshold::Normal).unwrap();
        pass &= good.pass && !bad.pass;
        parts.push(format!(
            "n={n}: |{:.2e}| vs {:.2e}, identity {:.2e}",
            good.statistic, good.threshold, bad.statistic
        ));
    }
    within(Duration::from_secs(300), start, Outcome::new(pass, parts.join("; ")))
}

fn determinism() -> Outcome {
    let cfg = ShuffleConfig::new(7);
    let runs: Vec<Permutation> = [1, 2, 8]
        .into_iter()
        .map(|w| shuffle_indices(1_000_001, &cfg.clone().with_workers(Workers::Fixed(w))).unwrap())
        .collect();
    let valid = common::is_rearrangement(runs[0].ranks());
    let pass = valid && runs.iter().all(|r| r == &runs[0]);
    Outcome::new(pass, "m=1000001, seed=7, workers {1, 2, 8}")
}

fn rate(r: &BenchRecord) -> f64 {
    r.throughput_mitems_s
}

fn throughput_gather() -> Outcome {
    let cfg = ShuffleConfig::new(0);
    let mut pass = true;
    let mut parts = Vec::new();
    for w in [20, 22, 24] {
        let size = (1u64 << w) + 1;
        let gather = bench_gather(size, 5, 0).unwrap();
        let bijective = bench_bijective(size, 5, 0, &cfg).unwrap();
        pass &= rate(&gather) >= rate(&bijective);
        parts.push(format!("2^{w}+1: gather {:.1} vs bijective {:.1} M/s", rate(&gather), rate(&bijective)));
    }
    Outcome::new(pass, parts.join("; "))
}

fn throughput_sort() -> Outcome {
    let size = (1u64 << 24) + 1;
    let bijective = bench_bijective(size, 5, 0, &ShuffleConfig::new(0)).unwrap();
    let sort = bench_sort_shuffle(size, 5, 0).unwrap();
    let ratio = rate(&bijective) / rate(&sort);
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut outcome = Outcome::new(
        ratio >= 5.0,
        format!(
            "2^24+1: bijective {:.1} vs sort-shuffle {:.1} M/s = {ratio:.2}x (need >= 5x), {cores} core(s)",
            rate(&bijective),
            rate(&sort)
        ),
    );
    if cores < 2 {
        outcome.waived = Some("stated for multicore hosts; this host has 1 core".into());
    }
    outcome
}

fn throughput_padding() -> Outcome {
    let cfg = ShuffleConfig::new(0);
    let mut pass = true;
    let mut parts = Vec::new();
    for w in [20, 24] {
        let best = bench_bijective(1 << w, 5, 0, &cfg).unwrap();
        let worst = bench_bijective((1 << w) + 1, 5, 0, &cfg).unwrap();
        let ratio = (rate(&best) / rate(&worst)).max(rate(&worst) / rate(&best));
        pass &= ratio < 2.5;
        parts.push(format!("2^{w}: {:.1} vs 2^{w}+1: {:.1} M/s ({ratio:.2}x)", rate(&best), rate(&worst)));
    }
    Outcome::new(pass, parts.join("; "))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).stdin(Stdio::null()).output().expect("run cli binary");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn cli_contract() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    let (code, out) = run_cli(&["shuffle", "--indices", "1"]);
    check("shuffle --indices 1", code == 0 && out == "0\n");
    let first = run_cli(&["shuffle", "--indices", "8", "--seed", "7"]);
    let second = run_cli(&["shuffle", "--indices", "8", "--seed", "7"]);
    check("shuffle --indices 8 twice", first.0 == 0 && first == second && first.1.lines().count() == 8);
    let (code, out) = run_cli(&["shuffle", "--indices", "100", "--seed", "7"]);
    let mut values: Vec<u64> = out.lines().map(|l| l.parse().unwrap()).collect();
    values.sort_unstable();
    check("shuffle --indices 100 | sort", code == 0 && values == (0..100).collect::<Vec<_>>());

    let report = |out: &str| serde_json::from_str::<serde_json::Value>(out).ok();
    let (code, out) = run_cli(&["test", "--kind", "chi2", "--gen", "philox", "--rounds", "24", "--samples", "100000"]);
    check("test chi2 philox", code == 0 && report(&out).is_some_and(|r| r["pass"] == true));
    let (code, out) = run_cli(&["test", "--kind", "chi2", "--gen", "lcg", "--samples", "100000"]);
    check("test chi2 lcg", code == 1 && report(&out).is_some_and(|r| r["pass"] == false));
    let (code, out) =
        run_cli(&["test", "--kind", "mmd-normal", "--gen", "fisher-yates", "--n", "100", "--samples", "10000"]);
    check("test mmd-normal fisher-yates", code == 0 && report(&out).is_some_and(|r| r["pass"] == true));

    // The default grid runs to 2^26+1; bounded here to keep the suite short.
    let (code, out) = run_cli(&["bench", "--trials", "1", "--max-log2", "12"]);
    let mut lines = out.lines();
    let header_ok = lines.next() == Some("algorithm,input_size,trials,runtime_s,throughput_mitems_s");
    let pairs: HashSet<(String, String)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].to_string())
        })
        .collect();
    check("bench default", code == 0 && header_ok && pairs.len() == 4 * 5 && out.lines().count() == 21);
    let (code, out) = run_cli(&["bench", "--format", "json", "--trials", "1", "--sizes", "1025,4097"]);
    let parsed: Option<Vec<BenchRecord>> = serde_json::from_str(&out).ok();
    check("bench --format json", code == 0 && parsed.is_some_and(|r| r.len() == 8));
    let (code, out) = run_cli(&["bench", "--algos", "bijective,gather", "--sizes", "1048577"]);
    check("bench --algos bijective,gather", code == 0 && out.lines().count() == 3);

    Outcome::new(failures.is_empty(), format!("9 invocations; failing: {failures:?}"))
}

fn main() {
    let criteria: [(&str, Criterion); 12] = [
        ("1  bijectivity", bijectivity),
        ("2  inversion", inversion),
        ("3  compaction fibers", compaction_fibers),
        ("4  kernel moments", moments),
        ("5  kendall distance", kendall),
        ("6  chi-squared", chi_squared),
        ("7  mmd normal", mmd),
        ("8  determinism", determinism),
        ("9a gather >= bijective", throughput_gather),
        ("9b bijective >= 5x sort", throughput_sort),
        ("9c power-of-two padding", throughput_padding),
        ("10 cli contract", cli_contract),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        match &outcome.waived {
            Some(reason) if !outcome.pass => println!("{verdict} {name}: {} [not counted: {reason}]", outcome.detail),
            _ => {
                println!("{verdict} {name}: {}", outcome.detail);
                failed += !outcome.pass as usize;
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
