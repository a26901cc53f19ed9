// Keyed bijections on power-of-two domains: evaluate, invert, inspect.
//
// ```bash
// cargo run --example bijections
// ```

use bijective_shuffle::{derive_round_keys, Bijection, LcgParams, VariablePhiloxParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // 5 bits = 2 + 3 split; odd widths are fine.
    let philox = VariablePhiloxParams::new(5, 7, 24)?;
    println!(
        "philox on 2^{}: {} left bits, {} right bits, {} rounds",
        philox.total_bits(),
        philox.left_side_bits(),
        philox.right_side_bits(),
        philox.num_rounds()
    );
    let image: Vec<u64> = (0..32).map(|x| philox.apply(x)).collect::<Result<_, _>>()?;
    println!("image of 0..32: {image:?}");
    for (x, &y) in image.iter().enumerate() {
        assert_eq!(philox.invert(y)?, x as u64);
    }

    // Wide domains are evaluated pointwise; nothing is materialised.
    let wide = VariablePhiloxParams::new(63, 7, 24)?;
    let y = wide.apply(123_456_789)?;
    println!("2^63 domain: 123456789 -> {y} -> {}", wide.invert(y)?);

    // Explicit keys, e.g. for interop with another implementation.
    let keys = derive_round_keys(7, 24);
    assert_eq!(VariablePhiloxParams::with_round_keys(5, keys)?, philox);

    let lcg = LcgParams::from_seed(5, 7)?;
    println!("lcg: x -> {} x + {} mod 32", lcg.multiplier(), lcg.increment());

    for b in [Bijection::from(philox), Bijection::from(lcg)] {
        let mut seen = vec![false; b.domain_size() as usize];
        for x in 0..b.domain_size() {
            seen[b.apply(x)? as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
