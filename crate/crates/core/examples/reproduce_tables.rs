//! Every built-in scenario in table order, written as summary CSV to stdout.
//!
//! ```text
//! PASSREG_THREADS=8 cargo run --release --example reproduce_tables -- 100 > tables.csv
//! ```

use passreg::simbench::{scenario_presets, simulate, summarize, write_summary_csv};

fn main() -> anyhow::Result<()> {
    let replicates: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(100);
    if let Ok(t) = std::env::var("PASSREG_THREADS") {
        rayon::ThreadPoolBuilder::new().num_threads(t.parse()?).build_global()?;
    }
    let mut out = std::io::stdout().lock();
    for (k, mut cfg) in scenario_presets().into_iter().enumerate() {
        cfg.replicates = replicates;
        eprintln!("{} ...", cfg.name);
        let table = summarize(&cfg, &simulate(&cfg)?);
        let comments = if k == 0 {
            vec![format!("replicates={replicates} b={} seed={}", cfg.b, cfg.master_seed)]
        } else {
            vec![]
        };
        // one header per scenario keeps each block loadable on its own
        write_summary_csv(&mut out, &table, &comments)?;
    }
    Ok(())
}
