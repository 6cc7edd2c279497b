//! Zonal polynomials of degree 3: the coefficient table in the monomial
//! basis, and a check that the degree-t polynomials sum to (tr X)^t.

use kummer_pearson::zonal::{build_zonal_table, SpectralInput};
use kummer_pearson::{enumerate_partitions, zonal_eval, Partition};

fn main() -> kummer_pearson::Result<()> {
    let table = build_zonal_table(3)?;
    println!("C_kappa in the monomial basis, degree 3:");
    for kappa in table.partitions() {
        let row: Vec<String> = table
            .partitions()
            .iter()
            .map(|lambda| format!("{:>8.4}", table.coefficient(kappa, lambda)))
            .collect();
        println!("  {:<10} {}", format!("{:?}", kappa.parts()), row.join(" "));
    }

    let x = SpectralInput::new(vec![0.7, 0.2, 1.1])?;
    let mut total = 0.0;
    for tau in enumerate_partitions(3, x.dim()) {
        let v = zonal_eval(&tau, &x)?;
        total += v;
        println!("C_{:?}(X) = {v:.12}", tau.parts());
    }
    println!("sum = {total:.12}, (tr X)^3 = {:.12}", x.trace().powi(3));

    // more parts than eigenvalues vanish
    println!("C_(1,1,1,1)(X) = {}", zonal_eval(&Partition::new(vec![1, 1, 1, 1])?, &x)?);
    Ok(())
}
