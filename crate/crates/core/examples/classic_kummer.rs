//! The matrix Kummer relation 1F1(a; c; X) = etr(X) 1F1(c − a; c; −X) on a
//! few spectra, including indefinite ones.

use kummer_pearson::hypergeom::TruncationPolicy;
use kummer_pearson::kummer::kummer_classic_check;
use kummer_pearson::zonal::SpectralInput;

fn main() -> kummer_pearson::Result<()> {
    let policy = TruncationPolicy::default();
    for eigs in [vec![0.3], vec![0.5, -0.5], vec![-0.2, 0.1, 0.45]] {
        let x = SpectralInput::new(eigs.clone())?;
        let report = kummer_classic_check(1.5, 3.25, &x, &policy)?;
        println!(
            "eigs {eigs:?}: lhs {:.15} rhs {:.15} rel_diff {:.1e} (degrees {} / {})",
            report.lhs,
            report.rhs,
            report.rel_diff,
            report.lhs_diagnostics.degree_used,
            report.rhs_diagnostics.degree_used
        );
    }
    Ok(())
}
