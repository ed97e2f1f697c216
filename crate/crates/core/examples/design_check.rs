//! Empirical check of the AR(1) design: sample correlations against rho^|j-k|.

use passreg::seed::rng_from_seed;
use passreg::simbench::gen_ar1_design;

fn main() {
    let (n, p, rho) = (20_000, 6, 0.5);
    let x = gen_ar1_design(n, p, rho, &mut rng_from_seed(1));
    let cov = x.transpose() * &x / n as f64;
    for j in 0..p {
        let row: Vec<String> = (0..p)
            .map(|k| format!("{:+.3}", cov[(j, k)] / (cov[(j, j)] * cov[(k, k)]).sqrt()))
            .collect();
        println!("{}", row.join(" "));
    }
    println!("target lag-1 {rho}, lag-2 {}", rho * rho);
}
