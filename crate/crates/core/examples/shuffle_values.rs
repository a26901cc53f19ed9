// Shuffle a slice deterministically from a seed.
//
// ```bash
// cargo run --example shuffle_values
// ```

use bijective_shuffle::{shuffle_indices, shuffle_values, ShuffleConfig, Workers};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let deck: Vec<String> = ["A", "2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K"]
        .iter()
        .flat_map(|rank| ["♠", "♥", "♦", "♣"].map(|suit| format!("{rank}{suit}")))
        .collect();

    let config = ShuffleConfig::new(42);
    let shuffled = shuffle_values(&deck, &config)?;
    println!("first hand: {}", shuffled[..5].join(" "));

    // Same seed, same order, whatever the thread count.
    let serial = shuffle_values(&deck, &config.clone().with_workers(Workers::Fixed(1)))?;
    assert_eq!(shuffled, serial);

    // The index form: out[k] = deck[sigma[k]].
    let sigma = shuffle_indices(deck.len() as u64, &config)?;
    assert_eq!(sigma.gather(&deck)?, shuffled);

    let reshuffled = shuffle_values(&deck, &config.with_seed(43))?;
    println!("seed 43:    {}", reshuffled[..5].join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
