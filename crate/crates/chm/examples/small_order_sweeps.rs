//! Exhaustively sweep the small orders over modest roots-of-unity grids and
//! print which real-entry counts show up.
//!
//! ```bash
//! cargo run --release -p chm --example small_order_sweeps
//! ```

use chm::search::{grid_sweep, SweepMode};

fn main() {
    for (n, q, mode) in [
        (2usize, 12u32, SweepMode::Full),
        (3, 6, SweepMode::Parameterized),
        (4, 4, SweepMode::FullPruned),
    ] {
        let report = grid_sweep(n, q, mode, 2).unwrap();
        let observed: Vec<String> = report.observed_counts.iter().map(usize::to_string).collect();
        println!(
            "order {n}, {q}th roots, {mode}: {} candidates, counts {{{}}}",
            report.matrices_enumerated,
            observed.join(",")
        );
        for (count, witness) in &report.witnesses {
            let rows: Vec<String> = witness
                .rows()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            println!("  count {count}: [{}]", rows.join(" | "));
        }
    }
}
