//! The vanishing-sum oracles and the structural predicate suite.
//!
//! ```bash
//! cargo run --release -p chm --example zero_sum_oracles
//! ```

use chm::constructions::order6_max_real;
use chm::matrix::UnitMatrix;
use chm::search::{applicable_predicates, predicate_check, sum3_oracle, sum4_oracle};

fn main() {
    // every zero sum of three unit roots is a rotated cube-root triple
    println!("sum3 over 36th roots: {}", sum3_oracle(36));
    // every zero sum of four unit roots cancels in pairs
    println!("sum4 over 24th roots: {}", sum4_oracle(24));

    for (name, m) in [
        ("max-real order 6", order6_max_real()),
        ("fourier(6)", UnitMatrix::fourier(6)),
        ("fourier(5)", UnitMatrix::fourier(5)),
    ] {
        println!("{name}:");
        for id in applicable_predicates(m.order()) {
            let outcome = predicate_check(&m, id).unwrap();
            println!("  {:<24} {}", id.name(), if outcome.is_pass() { "pass" } else { "VIOLATION" });
        }
    }
}
