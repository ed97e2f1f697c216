//! Runs one benchmark scenario and prints its summary table.
//!
//! ```text
//! cargo run --release --example benchmark_scenario -- I-40 100 1
//! ```
//!
//! Arguments: preset name (default `I-40`), replicates (default 100), seed (default 1).

use std::time::Instant;

use passreg::simbench::{preset, render_table, simulate, summarize};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "I-40".to_string());
    let mut cfg = preset(&name)?;
    if let Some(r) = args.next() {
        cfg.replicates = r.parse()?;
    }
    if let Some(s) = args.next() {
        cfg.master_seed = s.parse()?;
    }
    let start = Instant::now();
    let results = simulate(&cfg)?;
    for r in &results {
        for cell in &r.cells {
            if let Err(e) = &cell.outcome {
                eprintln!("replicate {} {} {}: {e}", r.replicate, cell.criterion, cell.penalty);
            }
        }
    }
    let table = summarize(&cfg, &results);
    print!("{}", render_table(&table));
    eprintln!("elapsed {:.1?}", start.elapsed());
    Ok(())
}
