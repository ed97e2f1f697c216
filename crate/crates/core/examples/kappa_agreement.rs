//! Cohen's kappa between two selected supports, including the degenerate
//! cases where both supports are empty or both are full.

use passreg::model::SupportSet;
use passreg::selection::cohens_kappa;

fn main() -> anyhow::Result<()> {
    let p = 8;
    let pairs = [
        (vec![0, 1, 4], vec![0, 1, 4]),
        (vec![0, 1], vec![0, 2]),
        (vec![0, 1, 4], vec![2, 3, 5, 6, 7]),
        (vec![], vec![0, 1]),
        (vec![], vec![]),
        ((0..p).collect(), (0..p).collect()),
    ];
    for (a, b) in pairs {
        let a = SupportSet::new(a, p)?;
        let b = SupportSet::new(b, p)?;
        println!("{a:<20} {b:<20} kappa = {:+.4}", cohens_kappa(&a, &b)?);
    }
    Ok(())
}
