//! Derivative-free maximization with the Nelder–Mead simplex.

use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub struct NelderMeadOptions {
    /// Maximum number of objective evaluations.
    pub max_evals: usize,
    /// Edge length of the starting simplex, relative to `max(|x_i|, 1)`.
    pub initial_step: f64,
    /// Stop once the simplex values span less than this.
    pub f_tol: f64,
    /// ... and its vertices lie within this distance of the best one.
    pub x_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { max_evals: 5000, initial_step: 0.25, f_tol: 1e-10, x_tol: 1e-8 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub iterations: usize,
    pub converged: bool,
    /// `(evaluations so far, best value so far)` after each iteration.
    pub trace: Vec<(usize, f64)>,
}

struct Objective<'a> {
    f: &'a mut dyn FnMut(&[f64]) -> f64,
    evals: usize,
}

impl Objective<'_> {
    // non-finite values rank below everything
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evals += 1;
        let v = (self.f)(x);
        if v.is_finite() { v } else { f64::NEG_INFINITY }
    }
}

/// Maximizes `f` from `x0`. With a budget smaller than the simplex size the
/// starting point is returned unconverged.
pub fn maximize(f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult {
    let n = x0.len();
    let mut obj = Objective { f, evals: 0 };
    let f0 = obj.eval(x0);
    let mut trace = vec![(1, f0)];
    if opts.max_evals < n + 1 || n == 0 {
        return NelderMeadResult { x: x0.to_vec(), value: f0, evals: obj.evals, iterations: 0, converged: false, trace };
    }

    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.to_vec(), f0)];
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step * x0[i].abs().max(1.0);
        let v = obj.eval(&x);
        simplex.push((x, v));
    }

    let (alpha, gamma, rho, shrink) = (1.0, 2.0, 0.5, 0.5);
    let mut iterations = 0;
    let mut converged = false;
    loop {
        // best first
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let best = simplex[0].1;
        trace.push((obj.evals, best));
        let spread = best - simplex[n].1;
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.is_finite() && spread <= opts.f_tol && size <= opts.x_tol.max(opts.x_tol * norm_inf(&simplex[0].0)) {
            converged = true;
            break;
        }
        if obj.evals + 2 > opts.max_evals {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> =
            (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64).collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> { (0..n).map(|j| centroid[j] + t * (worst.0[j] - centroid[j])).collect() };

        let xr = along(-alpha);
        let fr = obj.eval(&xr);
        if fr > simplex[0].1 {
            let xe = along(-gamma);
            let fe = obj.eval(&xe);
            simplex[n] = if fe > fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr > simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr > worst.1 {
            let xc = along(-rho);
            let fc = obj.eval(&xc);
            (xc, fc)
        } else {
            let xc = along(rho);
            let fc = obj.eval(&xc);
            (xc, fc)
        };
        if fc > worst.1.max(if fr > worst.1 { fr } else { f64::NEG_INFINITY }) {
            simplex[n] = (xc, fc);
            continue;
        }
        if obj.evals + n > opts.max_evals {
            break;
        }
        let best_x = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = (0..n).map(|j| best_x[j] + shrink * (vertex.0[j] - best_x[j])).collect();
            let v = obj.eval(&x);
            *vertex = (x, v);
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (x, value) = simplex.swap_remove(0);
    if trace.last().map(|t| t.1) != Some(value) {
        trace.push((obj.evals, value));
    }
    NelderMeadResult { x, value, evals: obj.evals, iterations, converged, trace }
}

fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}
