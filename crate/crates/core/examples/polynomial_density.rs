//! The noncentral Pearson VII configuration density of a five-landmark
//! planar figure. With N = 5 and K = 2 the transformed series is a
//! polynomial of degree 2 in the latent roots, so it is summed exactly.

use nalgebra::DMatrix;

use kummer_pearson::hypergeom::TruncationPolicy;
use kummer_pearson::shape::{
    configuration_coords, density_polynomial, density_series, helmert_reduce, model_params, polynomial_degree,
    ConfigurationModel, LandmarkSet,
};

fn main() -> kummer_pearson::Result<()> {
    let figure = LandmarkSet::new(DMatrix::from_row_slice(5, 2, &[0.0, 0.0, 1.0, 0.1, 1.2, 1.0, 0.4, 1.5, -0.3, 0.8]))?;
    let u = configuration_coords(&helmert_reduce(&figure))?;
    println!("configuration coordinates U:{u}");

    let mu = DMatrix::from_row_slice(4, 2, &[0.8, 0.0, 0.0, 0.8, 0.3, 0.3, 0.2, -0.2]);
    let model = ConfigurationModel::isotropic(mu, 5.5, 3.0)?;
    let params = model_params(&model, &u)?;
    println!(
        "a = {}, c = {}, b = {}, d = {:.6}, latent roots {:?}",
        params.a,
        params.c,
        params.b,
        params.d,
        params.x.eigenvalues()
    );
    println!("polynomial degree: {:?}", polynomial_degree(5, 2));

    let poly = density_polynomial(&params)?;
    let series = density_series(&params, &TruncationPolicy::default())?;
    println!("polynomial form {:.15e} (degree {}, exact {})", poly.value, poly.degree_used, poly.terminated_exactly);
    println!("series form     {:.15e} (degree {})", series.value, series.degree_used);

    // six landmarks in the plane: no polynomial form
    println!("N = 6, K = 2 polynomial degree: {:?}", polynomial_degree(6, 2));
    Ok(())
}
