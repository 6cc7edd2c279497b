use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde_json::{json, Value};

use kummer_pearson::inference::{fit_mu, initial_mu_guess, simulate_figures, Dataset, PreparedDataset};
use kummer_pearson::kummer::{integral_check, kummer_classic_check, pearson_relation_check, PearsonSeriesParams};
use kummer_pearson::landmarks::{read_landmark_file, write_landmark_csv};
use kummer_pearson::shape::{helmert_reduce, configuration_coords, log_density, model_params};
use kummer_pearson::zonal;
use kummer_pearson::{zonal_eval, ConfigurationModel, DensityForm, Error, LandmarkSet, Partition, SpectralInput, TruncationPolicy};

const SCHEMA: u32 = 1;

/// Matrix-argument hypergeometric series, Kummer-Pearson VII checks and
/// polynomial configuration densities.
#[derive(Parser, Debug)]
#[command(name = "kpvii", version)]
struct Cli {
    /// Seed for every random stream; echoed in the output record.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Args, Debug)]
struct PolicyArgs {
    /// Highest series degree before giving up.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Relative size below which a degree counts as negligible.
    #[arg(long, global = true)]
    rel_tolerance: Option<f64>,
    /// Negligible degrees in a row needed to stop.
    #[arg(long, global = true)]
    small_terms: Option<u32>,
    /// Consecutive growing degrees that count as divergence.
    #[arg(long, global = true)]
    divergence_horizon: Option<u32>,
}

impl PolicyArgs {
    fn apply(&self, mut policy: TruncationPolicy) -> Result<TruncationPolicy, Error> {
        if let Some(v) = self.max_degree {
            policy.max_degree = v;
            if v > zonal::degree_ceiling() {
                zonal::set_degree_ceiling(v);
            }
        }
        if let Some(v) = self.rel_tolerance {
            policy.rel_tolerance = v;
        }
        if let Some(v) = self.small_terms {
            policy.consecutive_small_terms = v;
        }
        if let Some(v) = self.divergence_horizon {
            policy.divergence_horizon = v;
        }
        policy.validate()?;
        Ok(policy)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate C_tau(X) from the eigenvalues of X.
    Zonal {
        /// Partition parts, e.g. 2,1.
        #[arg(long, value_delimiter = ',', required = true)]
        tau: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        eigs: Vec<f64>,
    },
    /// Check one of the Kummer relations numerically.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Configuration densities of landmark figures.
    Density {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = FormArg::Polynomial)]
        form: FormArg,
        /// Landmark CSV files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Simulate landmark figures and write them as CSV.
    Simulate {
        #[arg(long)]
        landmarks: usize,
        #[arg(long)]
        dimension: usize,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Maximum-likelihood fit of the location with Sigma, s and R fixed.
    Fit {
        #[command(flatten)]
        model: ModelArgs,
        /// Starting location; defaults to a rescaled mean configuration.
        #[arg(long, allow_hyphen_values = true)]
        init: Option<String>,
        /// Likelihood evaluations allowed.
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    /// 1F1(a;c;X) = etr(X) 1F1(c-a;c;-X).
    Kummer {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// The Pearson VII form of the Kummer relation.
    Pearson {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        d: f64,
        /// Relative tolerance; ten times the reported tail is always allowed.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Monte Carlo evaluation of the matrix Beta integral against the series.
    Integral {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        /// Allowed distance in standard errors.
        #[arg(long, default_value_t = 3.0)]
        sigmas: f64,
    },
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    eigs: Vec<f64>,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Location rows separated by ';', entries by ',' (default: zero).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Scale matrix in the same notation (default: identity).
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    /// Pearson VII exponent (default: the matrix-t value (K(N-1)+R)/2).
    #[arg(long)]
    s: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
}

impl ModelArgs {
    fn build(&self, n: usize, k: usize) -> Result<ConfigurationModel, Failure> {
        let mu = match &self.mu {
            Some(text) => parse_matrix(text, n - 1, k, "--mu")?,
            None => DMatrix::zeros(n - 1, k),
        };
        let sigma = match &self.sigma {
            Some(text) => parse_matrix(text, n - 1, n - 1, "--sigma")?,
            None => DMatrix::identity(n - 1, n - 1),
        };
        let s = self.s.unwrap_or(((k * (n - 1)) as f64 + self.r) / 2.0);
        Ok(ConfigurationModel::new(mu, sigma, s, self.r)?)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Series,
    Polynomial,
}

impl From<FormArg> for DensityForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Series => DensityForm::Series,
            FormArg::Polynomial => DensityForm::Polynomial,
        }
    }
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Io(_) | Error::InvalidPartition(_) => Failure::Usage(e.to_string()),
            other => Failure::Numerical(other.to_string()),
        }
    }
}

fn parse_matrix(text: &str, rows: usize, cols: usize, flag: &str) -> Result<DMatrix<f64>, Failure> {
    let parsed: Result<Vec<Vec<f64>>, _> =
        text.split(';').map(|row| row.split(',').map(|v| v.trim().parse::<f64>()).collect()).collect();
    let parsed = parsed.map_err(|e| Failure::Usage(format!("{flag}: {e}")))?;
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        return Err(Failure::Usage(format!("{flag}: expected a {rows}x{cols} matrix")));
    }
    Ok(DMatrix::from_row_iterator(rows, cols, parsed.into_iter().flatten()))
}

fn matrix_json(m: &DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|r| json!(m.row(r).iter().collect::<Vec<_>>())).collect())
}

fn load_figures(inputs: &[PathBuf]) -> Result<Vec<(String, LandmarkSet)>, Failure> {
    let mut all = Vec::new();
    for path in inputs {
        for fig in read_landmark_file(path)? {
            all.push((path.display().to_string(), fig));
        }
    }
    let (n, k) = (all[0].1.landmarks(), all[0].1.dimension());
    if let Some((file, f)) = all.iter().find(|(_, f)| (f.landmarks(), f.dimension()) != (n, k)) {
        return Err(Failure::Usage(format!(
            "{file}: figure is {}x{}, the first figure is {n}x{k}",
            f.landmarks(),
            f.dimension()
        )));
    }
    Ok(all)
}

/// Returns the output record and whether the check passed.
fn run(cli: &Cli) -> Result<(Value, bool), Failure> {
    let seed = cli.seed;
    match &cli.command {
        Command::Zonal { tau, eigs } => {
            let tau = Partition::new(tau.clone())?;
            let x = SpectralInput::new(eigs.clone())?;
            let value = zonal_eval(&tau, &x)?;
            Ok((json!({ "command": "zonal", "tau": tau.parts(), "eigenvalues": eigs, "value": value }), true))
        }
        Command::Verify { kind } => verify(kind, &cli.policy, seed),
        Command::Density { model, form, inputs } => {
            let figures = load_figures(inputs)?;
            let (n, k) = (figures[0].1.landmarks(), figures[0].1.dimension());
            let model = model.build(n, k)?;
            let policy = cli.policy.apply(TruncationPolicy::default())?;
            let form = DensityForm::from(*form);
            let mut records = Vec::new();
            let mut total = 0.0;
            for (i, (file, fig)) in figures.iter().enumerate() {
                let u = configuration_coords(&helmert_reduce(fig))?;
                let params = model_params(&model, &u)?;
                let ln = log_density(&params, form, &policy)?;
                total += ln;
                records.push(json!({ "file": file, "index": i, "log_density": ln, "density": ln.exp() }));
            }
            Ok((
                json!({
                    "command": "density",
                    "form": form,
                    "landmarks": n,
                    "dimension": k,
                    "s": model.s,
                    "r": model.r,
                    "figures": records,
                    "loglik": total,
                }),
                true,
            ))
        }
        Command::Simulate { landmarks, dimension, model, count, output } => {
            if *dimension == 0 || *landmarks < dimension + 2 {
                return Err(Failure::Usage(format!("need N >= K + 2, got N = {landmarks}, K = {dimension}")));
            }
            let model = model.build(*landmarks, *dimension)?;
            let figures = simulate_figures(&model, *count, seed)?;
            std::fs::write(output, write_landmark_csv(&figures)).map_err(Error::from)?;
            Ok((
                json!({
                    "command": "simulate",
                    "output": output.display().to_string(),
                    "count": count,
                    "landmarks": landmarks,
                    "dimension": dimension,
                    "mu": matrix_json(&model.mu),
                    "s": model.s,
                    "r": model.r,
                }),
                true,
            ))
        }
        Command::Fit { model, init, budget, inputs } => {
            let figures = load_figures(inputs)?;
            let (n, k) = (figures[0].1.landmarks(), figures[0].1.dimension());
            let model = model.build(n, k)?;
            let sets: Vec<LandmarkSet> = figures.into_iter().map(|(_, f)| f).collect();
            let data = Dataset::from_landmarks(&sets)?;
            let init = match init {
                Some(text) => parse_matrix(text, n - 1, k, "--init")?,
                None => initial_mu_guess(&data, &model.sigma, model.s, model.r)?,
            };
            let fit = fit_mu(&data, &model.sigma, model.s, model.r, &init, *budget)?;
            let prepared = PreparedDataset::new(&data, &model.sigma)?;
            let at_zero = prepared.loglik(
                &DMatrix::zeros(n - 1, k),
                model.s,
                model.r,
                DensityForm::Polynomial,
                &TruncationPolicy::default(),
            )?;
            Ok((
                json!({
                    "command": "fit",
                    "observations": data.len(),
                    "landmarks": n,
                    "dimension": k,
                    "s": model.s,
                    "r": model.r,
                    "budget": budget,
                    "init": matrix_json(&init),
                    "loglik_at_zero": at_zero,
                    "fit": fit,
                }),
                true,
            ))
        }
    }
}

fn verify(kind: &VerifyKind, policy_args: &PolicyArgs, seed: u64) -> Result<(Value, bool), Failure> {
    match kind {
        VerifyKind::Kummer { series, tol } => {
            let x = SpectralInput::new(series.eigs.clone())?;
            let policy = policy_args.apply(TruncationPolicy::with_max_degree(120))?;
            let report = kummer_classic_check(series.a, series.c, &x, &policy)?;
            let pass = report.rel_diff <= *tol;
            Ok((json!({ "command": "verify", "kind": "kummer", "a": series.a, "c": series.c,
                "eigenvalues": series.eigs, "tolerance": tol, "pass": pass, "report": report }), pass))
        }
        VerifyKind::Pearson { series, b, d, tol } => {
            let x = SpectralInput::new(series.eigs.clone())?;
            let params = PearsonSeriesParams { a: series.a, c: series.c, b: *b, d: *d };
            let policy = policy_args.apply(params.verification_policy(x.dim()))?;
            let report = pearson_relation_check(&params, &x, &policy)?;
            let allowed = tol.max(10.0 * report.relative_tail());
            let pass = report.rel_diff <= allowed;
            Ok((json!({ "command": "verify", "kind": "pearson", "params": params, "eigenvalues": series.eigs,
                "tolerance": allowed, "pass": pass, "report": report }), pass))
        }
        VerifyKind::Integral { series, b, d, samples, sigmas } => {
            let x = SpectralInput::new(series.eigs.clone())?;
            let params = PearsonSeriesParams { a: series.a, c: series.c, b: *b, d: *d };
            let policy = policy_args.apply(params.verification_policy(x.dim()))?;
            let report = integral_check(&params, &x, *samples, seed, &policy)?;
            let pass = report.within(*sigmas);
            Ok((json!({ "command": "verify", "kind": "integral", "params": params, "eigenvalues": series.eigs,
                "sigmas": sigmas, "pass": pass, "report": report }), pass))
        }
    }
}

fn has_null(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Array(items) => items.iter().any(has_null),
        Value::Object(map) => map.values().any(has_null),
        _ => false,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((mut record, pass)) => {
            // serde_json turns NaN and infinities into null
            if has_null(&record) {
                eprintln!("error: non-finite value in the result");
                return ExitCode::from(3);
            }
            let map = record.as_object_mut().expect("records are objects");
            map.insert("schema".into(), json!(SCHEMA));
            map.insert("seed".into(), json!(cli.seed));
            let text = match cli.format {
                Format::Json => serde_json::to_string(&record),
                Format::Pretty => serde_json::to_string_pretty(&record),
            }
            .expect("serializable");
            println!("{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
