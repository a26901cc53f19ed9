// Chi-squared goodness of fit over the 120 permutations of length 5.
//
// ```bash
// cargo run --release --example uniformity_chi2
// ```

use bijective_shuffle::stats::{chi_squared_test, BijectiveSampler, FisherYatesSampler, PermutationSource};
use bijective_shuffle::{ShuffleConfig, Variant};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sources: [(&str, Box<dyn PermutationSource>); 4] = [
        ("philox, 24 rounds", Box::new(BijectiveSampler::new(ShuffleConfig::new(0))?)),
        ("philox, 3 rounds", Box::new(BijectiveSampler::new(ShuffleConfig::new(0).with_rounds(3))?)),
        ("lcg", Box::new(BijectiveSampler::new(ShuffleConfig::new(0).with_variant(Variant::Lcg))?)),
        ("fisher-yates", Box::new(FisherYatesSampler::new(0))),
    ];
    for (name, source) in &sources {
        let report = chi_squared_test(source.as_ref(), 100_000, 0.05)?;
        println!(
            "{name:<18} statistic {:>12.2}  threshold {:.2}  {}",
            report.statistic,
            report.threshold,
            if report.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
