//! Screen order-six matrices against the two exclusion tests for membership
//! in a set of four mutually unbiased bases, and check unbiasedness against
//! the identity basis.
//!
//! ```bash
//! cargo run -p chm --example unbiased_screening
//! ```

use chm::constructions::{order6_max_real, order6_with_count};
use chm::matrix::UnitMatrix;
use chm::mubscreen::{is_unbiased, screen, Basis, Verdict, UNBIASED_TOLERANCE};

fn main() {
    let identity = Basis::identity(6);
    for (name, m) in [
        ("max-real order 6 (30 reals)", order6_max_real()),
        ("fourier(6) (20 reals)", UnitMatrix::fourier(6)),
        ("zero-real witness", order6_with_count(0).unwrap()),
    ] {
        let unbiased =
            is_unbiased(&identity, &Basis::hadamard(m.clone()), UNBIASED_TOLERANCE).unwrap();
        let verdict = screen(&m).unwrap();
        let tag = match verdict.verdict {
            Verdict::ExcludedByRealCount { count } => format!("excluded: {count} > 22 real entries"),
            Verdict::ExcludedByRealSubmatrix { rows, cols } => {
                format!("excluded: all-real 3x2 block at rows {rows:?}, cols {cols:?}")
            }
            Verdict::NotExcluded => "not excluded by these tests".to_string(),
        };
        println!("{name}: unbiased-to-identity={unbiased}; {tag}");
    }
}
