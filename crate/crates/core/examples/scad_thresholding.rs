//! Univariate thresholding rules: soft thresholding (LASSO) against the SCAD
//! rule, which leaves large inputs unshrunk.

use passreg::model::{scad_penalty, scad_univariate, soft_threshold, DEFAULT_SCAD_A};

fn main() {
    let lambda = 1.0;
    let a = DEFAULT_SCAD_A;
    println!("lambda = {lambda}, a = {a}");
    println!("{:>6}  {:>8}  {:>8}  {:>10}", "z", "soft", "scad", "pen(z)");
    for k in 0..=20 {
        let z = k as f64 * 0.25;
        println!(
            "{z:>6.2}  {:>8.4}  {:>8.4}  {:>10.4}",
            soft_threshold(z, lambda / 2.0),
            scad_univariate(z, lambda, a),
            scad_penalty(z, lambda, a)
        );
    }
}
