// Kendall tau distance and the Mallows kernel with its exact moments.
//
// ```bash
// cargo run --example kendall_mallows
// ```

use bijective_shuffle::stats::{kendall_distance, mallows_kernel, MallowsParams};
use bijective_shuffle::{shuffle_indices, Permutation, ShuffleConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let identity = Permutation::identity(n);
    let reversed = Permutation::reversed(n);
    println!("n_dis(id, rev) = {} = C({n}, 2)", kendall_distance(&identity, &reversed)?);

    let sigma = shuffle_indices(n as u64, &ShuffleConfig::new(3))?;
    println!("sigma = {:?}", sigma.ranks());
    println!("n_dis(id, sigma) = {}", kendall_distance(&identity, &sigma)?);
    println!("K(id, sigma) = {:.6}", mallows_kernel(&identity, &sigma, 5.0)?);

    for n in [5, 100, 1000] {
        let params = MallowsParams::new(n, 5.0)?;
        println!(
            "n = {n:>4}: E[K] = {:.6}, Var[K] = {:.3e}",
            params.expectation, params.variance
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
