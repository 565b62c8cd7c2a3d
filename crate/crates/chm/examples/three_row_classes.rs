//! Enumerate the order-six three-row systems whose second and third rows
//! carry exactly two non-real entries each, and reduce them to their four
//! classes.
//!
//! ```bash
//! cargo run --release -p chm --example three_row_classes
//! ```

use chm::constructions::three_row_prefix;
use chm::search::{classify_three_rows, three_rows_equivalent};

fn main() {
    let classes = classify_three_rows(12);
    println!("{} classes over the 12th roots:", classes.len());
    for (idx, block) in classes.iter().enumerate() {
        println!("class {idx}:");
        for r in 0..block.row_count() {
            let row: Vec<String> = block.row(r).iter().map(ToString::to_string).collect();
            println!("  {}", row.join(" "));
        }
        for k in 1..=4 {
            if three_rows_equivalent(block, &three_row_prefix(k), 12) {
                println!("  = canonical prefix {k}");
            }
        }
    }
}
