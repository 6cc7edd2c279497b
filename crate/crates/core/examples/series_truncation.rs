//! How the series engine decides where to stop: a non-terminating 1F1, a
//! terminating one (a = -2), and the same series cut short by a tight
//! degree budget.

use kummer_pearson::hypergeom::{hyp_1f1, SeriesResult, TruncationPolicy};
use kummer_pearson::zonal::SpectralInput;

fn show(label: &str, r: &SeriesResult) {
    println!(
        "{label:<28} value {:>18.12}  degree {:>2}  exact {:<5}  converged {:<5}  tail {:.1e}",
        r.value, r.degree_used, r.terminated_exactly, r.converged, r.tail_estimate
    );
}

fn main() -> kummer_pearson::Result<()> {
    let x = SpectralInput::new(vec![0.9, 0.4])?;
    show("1F1(1.5; 3; X)", &hyp_1f1(1.5, 3.0, &x, &TruncationPolicy::default())?);
    // a = -2 with m = 2 terminates at degree m·2 = 4
    show("1F1(-2; 3; X)", &hyp_1f1(-2.0, 3.0, &x, &TruncationPolicy::default())?);
    show("1F1(1.5; 3; X), degree <= 4", &hyp_1f1(1.5, 3.0, &x, &TruncationPolicy::with_max_degree(4))?);

    let r = hyp_1f1(1.5, 3.0, &x, &TruncationPolicy::default())?;
    println!("per-degree contributions:");
    for (t, c) in r.degree_contributions.iter().enumerate().take(10) {
        println!("  t = {t:>2}: {c:.3e}");
    }
    Ok(())
}
