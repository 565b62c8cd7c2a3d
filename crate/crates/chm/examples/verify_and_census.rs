//! Build the stock order-six matrices, verify them exactly, and census
//! their real entries.
//!
//! ```bash
//! cargo run -p chm --example verify_and_census
//! ```

use chm::constructions::order6_max_real;
use chm::matrix::{OrthoCheck, UnitMatrix};

fn main() {
    for (name, m) in [
        ("fourier(6)", UnitMatrix::fourier(6)),
        ("max-real order 6", order6_max_real()),
        ("fourier(2) x fourier(3)", UnitMatrix::fourier(2).kron(&UnitMatrix::fourier(3))),
    ] {
        let verified = m.is_chm(OrthoCheck::Exact).unwrap();
        let census = m.census().unwrap();
        println!("{name}:");
        print!("{m}");
        println!(
            "  verified={verified} real_count={} imaginary_array={:?}",
            census.real_count, census.imaginary_array
        );
        println!();
    }
}
