// How a bijection on a padded domain becomes a permutation of 0..m.
//
// ```bash
// cargo run --example compaction
// ```

use bijective_shuffle::{compact_permutation, padded_domain, shuffle_indices, Permutation, ShuffleConfig, Variant};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = 5;
    let config = ShuffleConfig::new(1);
    let bijection = config.bijection_for(m)?;
    let n = padded_domain(m, Variant::VariablePhilox);
    println!("m = {m} is padded to n = {n} = 2^{}", bijection.domain_bits());

    // Evaluate the bijection over the padded domain, then drop the values >= m.
    let full: Vec<u64> = (0..n).map(|x| bijection.apply(x)).collect::<Result<_, _>>()?;
    println!("bijection over 0..{n}: {full:?}");
    let sigma = compact_permutation(&Permutation::new(full)?, m)?;
    println!("compacted:              {:?}", sigma.ranks());
    assert_eq!(sigma, shuffle_indices(m, &config)?);

    // Scatter puts values[i] at slot sigma(i); gather reads slot k from values[sigma(k)].
    let values = ["a", "b", "c", "d", "e"];
    println!("scatter: {:?}", sigma.scatter(&values)?);
    println!("gather:  {:?}", sigma.gather(&values)?);
    assert_eq!(sigma.inverse().scatter(&values)?, sigma.gather(&values)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
