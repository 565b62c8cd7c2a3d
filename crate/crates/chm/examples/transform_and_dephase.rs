//! Monomial transforms: apply a seeded random orbit, dephase it back to a
//! ones border, and watch which census data survives.
//!
//! ```bash
//! cargo run -p chm --example transform_and_dephase
//! ```

use chm::constructions::order6_max_real;
use chm::equivalence::{corpus_rng, dephase, random_permutation_transform, random_transform};
use chm::matrix::OrthoCheck;

fn main() {
    let g = order6_max_real();
    println!("start: real_count={}", g.census().unwrap().real_count);

    let mut rng = corpus_rng(12);

    // permutations preserve the census
    let p = random_permutation_transform(&mut rng, 6);
    let shuffled = p.apply(&g).unwrap();
    println!("permuted: real_count={}", shuffled.census().unwrap().real_count);

    // general monomial transforms change it, but never the Hadamard property
    let t = random_transform(&mut rng, 6, 24);
    let orbit = t.apply(&g).unwrap();
    assert!(orbit.is_chm(OrthoCheck::Exact).unwrap());
    println!("random orbit: real_count={}", orbit.census().unwrap().real_count);

    // dephasing pins 2n-1 ones in the first row and column
    let (dephased, witness) = dephase(&orbit);
    assert_eq!(witness.apply(&orbit).unwrap(), dephased);
    println!("dephased:");
    print!("{dephased}");
    println!("real_count={}", dephased.census().unwrap().real_count);
}
