use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simbench::run::{ReplicateResult, SummaryTable};

/// One CSV row per (replicate, criterion, penalty). Metric fields are empty
/// for failed cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRecord {
    pub scenario: String,
    pub criterion: String,
    pub penalty: String,
    pub replicate: usize,
    pub lambda_hat: Option<f64>,
    pub size: Option<usize>,
    pub exact_match: Option<bool>,
    pub c: Option<usize>,
    pub i: Option<usize>,
    pub rpe: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub scenario: String,
    pub n: usize,
    pub p: usize,
    pub criterion: String,
    pub penalty: String,
    pub completed: usize,
    pub failed: usize,
    pub pct: f64,
    pub mean_rpe: f64,
    pub mean_c: f64,
    pub mean_i: f64,
    pub mean_size: f64,
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidInput(format!("csv: {e}"))
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("io: {e}"))
}

fn write_comments<W: Write>(w: &mut W, comments: &[String]) -> Result<()> {
    for c in comments {
        writeln!(w, "# {c}").map_err(io_err)?;
    }
    Ok(())
}

/// Per-replicate records. `comments` are written first as `# ` lines.
pub fn write_replicate_csv<W: Write>(
    mut w: W,
    scenario: &str,
    results: &[ReplicateResult],
    comments: &[String],
) -> Result<()> {
    write_comments(&mut w, comments)?;
    let mut out = csv::Writer::from_writer(w);
    for r in results {
        for cell in &r.cells {
            let m = cell.outcome.as_ref().ok();
            out.serialize(ReplicateRecord {
                scenario: scenario.to_string(),
                criterion: cell.criterion.label().to_string(),
                penalty: cell.penalty.label().to_string(),
                replicate: r.replicate,
                lambda_hat: m.map(|m| m.lambda_hat),
                size: m.map(|m| m.size),
                exact_match: m.map(|m| m.exact_match),
                c: m.map(|m| m.c_zeros),
                i: m.map(|m| m.i_zeros),
                rpe: m.map(|m| m.rpe),
            })
            .map_err(csv_err)?;
        }
    }
    out.flush().map_err(io_err)
}

pub fn summary_records(table: &SummaryTable) -> Vec<SummaryRecord> {
    table
        .cells
        .iter()
        .map(|c| SummaryRecord {
            scenario: table.scenario.clone(),
            n: table.n,
            p: table.p,
            criterion: c.criterion.label().to_string(),
            penalty: c.penalty.label().to_string(),
            completed: c.completed,
            failed: c.failed,
            pct: c.pct,
            mean_rpe: c.mean_rpe,
            mean_c: c.mean_c,
            mean_i: c.mean_i,
            mean_size: c.mean_size,
        })
        .collect()
}

pub fn write_summary_csv<W: Write>(mut w: W, table: &SummaryTable, comments: &[String]) -> Result<()> {
    write_comments(&mut w, comments)?;
    let mut out = csv::Writer::from_writer(w);
    for rec in summary_records(table) {
        out.serialize(rec).map_err(csv_err)?;
    }
    out.flush().map_err(io_err)
}

/// Reads summary rows written by [`write_summary_csv`], skipping `#` lines.
pub fn read_summary_csv<R: Read>(r: R) -> Result<Vec<SummaryRecord>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(r)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_err)
}

/// Aligned text table: one row per penalty, one column pair per criterion,
/// in three blocks (PCT/RPE, C/I, Size/RPE).
pub fn render_table(table: &SummaryTable) -> String {
    let mut criteria = Vec::new();
    let mut penalties = Vec::new();
    for c in &table.cells {
        if !criteria.contains(&c.criterion) {
            criteria.push(c.criterion);
        }
        if !penalties.contains(&c.penalty) {
            penalties.push(c.penalty);
        }
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "scenario {}  n = {}  p = {}  |A| = {}  replicates = {}  seed = {}",
        table.scenario, table.n, table.p, table.true_size, table.replicates, table.master_seed
    );
    type Pick = fn(&crate::simbench::run::CellSummary) -> (f64, f64);
    let blocks: [(&str, &str, Pick); 3] = [
        ("PCT", "RPE", |c| (c.pct, c.mean_rpe)),
        ("C", "I", |c| (c.mean_c, c.mean_i)),
        ("Size", "RPE", |c| (c.mean_size, c.mean_rpe)),
    ];
    for (left, right, pick) in blocks {
        let _ = write!(s, "\n{:<8}", "");
        for c in &criteria {
            let _ = write!(s, "| {:^15}", c.label());
        }
        let _ = write!(s, "\n{:<8}", "Method");
        for _ in &criteria {
            let _ = write!(s, "| {:>7}{:>8}", left, right);
        }
        s.push('\n');
        for pen in &penalties {
            let _ = write!(s, "{:<8}", pen.label());
            for crit in &criteria {
                match table.cell(*crit, *pen) {
                    Some(c) => {
                        let (a, b) = pick(c);
                        let _ = write!(s, "| {:>7.2}{:>8.3}", a, b);
                    }
                    None => {
                        let _ = write!(s, "| {:>15}", "-");
                    }
                }
            }
            s.push('\n');
        }
    }
    let failed = table.failed_cells();
    if failed > 0 {
        let _ = writeln!(s, "\n{failed} cell replicate(s) failed and are excluded from the means");
    }
    s
}
