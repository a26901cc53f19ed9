// Throughput of the shuffle against gather, sort-based shuffling and
// sequential Fisher-Yates, written as CSV.
//
// ```bash
// cargo run --release --example benchmark -- 20
// ```

use bijective_shuffle::bench::{default_sizes, run_suite, Algorithm, OutputFormat, SuiteConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    benchmark(12, 1)
}

fn benchmark(max_log2: u32, trials: usize) -> Result<(), Box<dyn std::error::Error>> {
    let config = SuiteConfig {
        sizes: default_sizes(8, max_log2),
        algorithms: Algorithm::ALL.to_vec(),
        trials,
        ..SuiteConfig::default()
    };
    run_suite(&config, &mut std::io::stdout().lock(), OutputFormat::Csv)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_log2 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20);
    benchmark(max_log2, 5)
}
