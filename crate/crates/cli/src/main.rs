//! Batch command-line frontend: every toolkit operation over CSV/JSON files
//! with explicit seeds and machine-readable, byte-reproducible output.

mod io;
mod json;

use clap::{Parser, Subcommand, ValueEnum};
use fusekit::characteristics as ch;
use fusekit::exemplar as ex;
use fusekit::fitting as fit;
use fusekit::informetric as info;
use fusekit::integrals as integ;
use fusekit::means;
use fusekit::multivariate as mv;
use fusekit::strings as st;
use fusekit::{Generator, RealVector, WeightVector};
use json::Value;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fusekit",
    about = "Data-fusion toolkit: aggregation, fuzzy integrals, weight fitting, \
             medians and depths, string consensus, and numerical characteristics",
    version
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for stochastic commands; such commands refuse to run without it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Convergence tolerance override where applicable.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a univariate fusion function over a vector file.
    Aggregate {
        /// amean|qmean|hmean|gmean|pmean|emean|median|min|max|sum|prod|
        /// lukasiewicz-tnorm|lukasiewicz-tconorm|drastic-tconorm|mode|
        /// three-pi|os|trimmed|winsorized|quantile|owa|wqam|gini
        #[arg(long)]
        kind: String,
        /// Exponent for pmean / gamma for emean.
        #[arg(long)]
        r: Option<f64>,
        /// Order-statistic index or trim depth.
        #[arg(long)]
        k: Option<usize>,
        /// Quantile order.
        #[arg(long)]
        alpha: Option<f64>,
        /// Quantile parameterization, 1..9.
        #[arg(long)]
        qtype: Option<u8>,
        /// Weight file for owa/wqam/gini.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Generator for wqam: identity|square|reciprocal|log|power:R|exp:G.
        #[arg(long)]
        generator: Option<String>,
        /// Exponents for the gini mean.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        input: PathBuf,
    },
    /// Discrete fuzzy integral of a vector with respect to a measure.
    Integral {
        /// choquet|sugeno|shilkret
        #[arg(long)]
        kind: String,
        /// Measure: counting | table:FILE.json | additive:FILE.csv |
        /// symmetric:FILE.csv (phi over 0..=n)
        #[arg(long, default_value = "counting")]
        measure: String,
        input: PathBuf,
    },
    /// Fit weighted-mean weights to exemplar data (CSV with header,
    /// feature columns then one target column).
    Fit {
        /// wam-lse|wam-lad|wam-lmd|wam-rank|wam-reg|wqam|wqam-linearized|
        /// wqam-lad|powmean
        method: String,
        data: PathBuf,
        /// Rank-preservation penalty.
        #[arg(long)]
        p: Option<f64>,
        /// Rank criterion: lad|lse.
        #[arg(long)]
        criterion: Option<String>,
        /// Regularization strength.
        #[arg(long)]
        lambda: Option<f64>,
        /// Generator for wqam fits.
        #[arg(long)]
        generator: Option<String>,
        /// Smoothing epsilon for wqam-lad.
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        /// Multi-start count for wqam-lad.
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        /// Exponent search interval for powmean.
        #[arg(long, default_value_t = 0.1)]
        pmin: f64,
        #[arg(long, default_value_t = 10.0)]
        pmax: f64,
        /// Sort each exemplar first, fitting OWA weights instead.
        #[arg(long, default_value_t = false)]
        owa: bool,
    },
    /// Data depth of a query point relative to a point cloud
    /// (CSV, one observation per row).
    Depth {
        /// tukey|liu|oja
        #[arg(long)]
        kind: String,
        /// Query point as comma-separated coordinates.
        #[arg(long)]
        point: String,
        /// tukey evaluation: exact | mc
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Direction samples for mc mode.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        input: PathBuf,
    },
    /// Multivariate medians and centers of a point cloud.
    Median {
        /// centroid|cwmedian|weiszfeld|medoid|seb|tukey|orthomedian
        #[arg(long)]
        kind: String,
        /// Weight file for centroid/weiszfeld.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Metric for medoid: euclidean|manhattan|chebyshev|minkowski:P.
        #[arg(long, default_value = "euclidean")]
        metric: String,
        /// Convergence threshold for weiszfeld.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        #[arg(long, default_value_t = 10000)]
        max_iter: usize,
        /// Projection directions for the orthomedian.
        #[arg(long, default_value_t = 720)]
        directions: usize,
        input: PathBuf,
    },
    /// Distance between two strings.
    Strdist {
        /// hamming|levenshtein|lcs|osa|dl|qgram|jaccard|rank
        metric: String,
        a: String,
        b: String,
        /// Gram length for qgram/jaccard.
        #[arg(long, default_value_t = 2)]
        q: usize,
        /// Weighted edit costs as insert,delete,replace.
        #[arg(long)]
        costs: Option<String>,
    },
    /// Median (consensus) string of a file of strings.
    Strmedian {
        /// hamming (exact, equal lengths) | levenshtein (genetic search)
        #[arg(long, default_value = "hamming")]
        metric: String,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long)]
        population: Option<usize>,
        input: PathBuf,
    },
    /// Closest (center) string minimizing the farthest distance.
    Strcenter {
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long)]
        population: Option<usize>,
        input: PathBuf,
    },
    /// Impact functions of nonincreasing producer records (ragged CSV;
    /// one record per row, each reported separately).
    Impact {
        /// sum|h|g|w|h2|maxprod|model
        #[arg(long)]
        kind: String,
        /// Elementwise transform for the model:
        /// identity|floor|sqrt|sqrt-floor|log1p|g-transform|w-transform.
        #[arg(long, default_value = "identity")]
        phi: String,
        /// Measure transform for the model: identity|power:Q.
        #[arg(long, default_value = "identity")]
        mu: String,
        /// Integral for the model: choquet|sugeno|shilkret.
        #[arg(long, default_value = "choquet")]
        integral: String,
        /// Output map for the model: identity|sqrt.
        #[arg(long, default_value = "identity")]
        eta: String,
        input: PathBuf,
    },
    /// Centroid or 1-median of variable-length records (ragged CSV).
    Infocentroid {
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Compute the componentwise 1-median rather than the centroid.
        #[arg(long, default_value_t = false)]
        median: bool,
        input: PathBuf,
    },
    /// Spread, relative-spread, and shape measures of a vector.
    Spread {
        /// var|sd|range|iqr|mad|mean-error|gini-md|wd2wam|wd1wam|wdinfwam|
        /// nwd2wam|nwd1wam|gini|cv|skewness|kurtosis
        #[arg(long)]
        kind: String,
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Data interval as a,b (required by normalized kinds).
        #[arg(long)]
        interval: Option<String>,
        /// Quantile parameterization for iqr.
        #[arg(long, default_value_t = 7)]
        qtype: u8,
        input: PathBuf,
    },
    /// Orness of a named idempotent function or an OWA weight vector.
    Orness {
        /// min|max|amean|gmean|qmean|hmean|median|owa
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        n: usize,
        /// mc | owa-exact
        #[arg(long, default_value = "mc")]
        method: String,
        #[arg(long, default_value_t = 100000)]
        samples: usize,
        /// Weight file for owa.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Shannon entropy of a weighting vector.
    Entropy { weights: PathBuf },
    /// Exemplar (medoid/seboid) search over points, strings, or a
    /// precomputed distance matrix.
    Exemplar {
        /// exact|pruned|approx
        #[arg(long, default_value = "exact")]
        algo: String,
        /// sum|max|sumsq
        #[arg(long, default_value = "sum")]
        fold: String,
        /// euclidean|manhattan|chebyshev|minkowski:P|levenshtein|precomputed
        #[arg(long, default_value = "euclidean")]
        metric: String,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 15)]
        restarts: usize,
        input: PathBuf,
    },
}

/// Errors carrying the process exit code: 1 for usage/file problems, 2 for
/// computation statuses such as infeasibility or non-convergence.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn computation(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<io::ParseError> for CliError {
    fn from(e: io::ParseError) -> Self {
        CliError::usage(e.message)
    }
}

impl From<fusekit::Error> for CliError {
    fn from(e: fusekit::Error) -> Self {
        match e {
            fusekit::Error::Infeasible
            | fusekit::Error::Unbounded
            | fusekit::Error::NoConvergence(_)
            | fusekit::Error::Solver(_) => CliError::computation(e.to_string()),
            other => CliError::usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut digest_bytes: Vec<u8> = Vec::new();
    match run(&cli, &mut digest_bytes) {
        Ok(result) => {
            let mut envelope = Value::object();
            envelope.insert(
                "command".into(),
                Value::Str(command_name(&cli.command).into()),
            );
            envelope.insert(
                "input_digest".into(),
                Value::Str(json::digest(&digest_bytes)),
            );
            envelope.insert(
                "seed".into(),
                cli.seed.map_or(Value::Null, |s| Value::Int(s as i64)),
            );
            envelope.insert("result".into(), Value::Object(result));
            let text = match cli.format {
                Format::Json => json::render(envelope),
                Format::Csv => json::render_csv(&envelope),
            };
            match &cli.output {
                None => print!("{text}"),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: {}: {}", path.display(), e);
                        return ExitCode::from(1);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Aggregate { .. } => "aggregate",
        Command::Integral { .. } => "integral",
        Command::Fit { .. } => "fit",
        Command::Depth { .. } => "depth",
        Command::Median { .. } => "median",
        Command::Strdist { .. } => "strdist",
        Command::Strmedian { .. } => "strmedian",
        Command::Strcenter { .. } => "strcenter",
        Command::Impact { .. } => "impact",
        Command::Infocentroid { .. } => "infocentroid",
        Command::Spread { .. } => "spread",
        Command::Orness { .. } => "orness",
        Command::Entropy { .. } => "entropy",
        Command::Exemplar { .. } => "exemplar",
    }
}

fn load(path: &Path, digest: &mut Vec<u8>) -> Result<String, CliError> {
    let text = io::read_file(path)?;
    digest.extend_from_slice(text.as_bytes());
    Ok(text)
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64, CliError> {
    seed.ok_or_else(|| CliError::usage(format!("{what} is stochastic; pass --seed")))
}

fn parse_generator(spec: &str) -> Result<Generator, CliError> {
    let bad = || CliError::usage(format!("unknown generator {spec:?}"));
    Ok(match spec {
        "identity" => Generator::Identity,
        "square" => Generator::Square,
        "reciprocal" => Generator::Reciprocal,
        "log" => Generator::Log,
        _ => {
            let (name, arg) = spec.split_once(':').ok_or_else(bad)?;
            let value: f64 = arg.parse().map_err(|_| bad())?;
            match name {
                "power" => Generator::Power(value),
                "exp" => Generator::Exp(value),
                _ => return Err(bad()),
            }
        }
    })
}

fn parse_point(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad coordinate {c:?}")))
        })
        .collect()
}

fn load_weights(path: &Path, digest: &mut Vec<u8>) -> Result<WeightVector, CliError> {
    let text = load(path, digest)?;
    let raw = io::parse_vector(path, &text)?;
    Ok(WeightVector::new(raw)?)
}

fn point_result(point: &[f64]) -> BTreeMap<String, Value> {
    let mut r = Value::object();
    r.insert("point".into(), Value::floats(point));
    r
}

fn run(cli: &Cli, digest: &mut Vec<u8>) -> Result<BTreeMap<String, Value>, CliError> {
    match &cli.command {
        Command::Aggregate {
            kind,
            r,
            k,
            alpha,
            qtype,
            weights,
            generator,
            p,
            q,
            input,
        } => {
            let text = load(input, digest)?;
            let data = io::parse_vector(input, &text)?;
            let x = RealVector::new(data)?;
            let mut result = Value::object();
            let value = match kind.as_str() {
                "owa" => {
                    let w = load_weights(
                        weights
                            .as_deref()
                            .ok_or_else(|| CliError::usage("owa needs --weights"))?,
                        digest,
                    )?;
                    means::owa(&w, &x)?
                }
                "wqam" => {
                    let w = load_weights(
                        weights
                            .as_deref()
                            .ok_or_else(|| CliError::usage("wqam needs --weights"))?,
                        digest,
                    )?;
                    let gen = parse_generator(
                        generator
                            .as_deref()
                            .ok_or_else(|| CliError::usage("wqam needs --generator"))?,
                    )?;
                    means::wqa_mean(gen, &w, &x)?
                }
                "gini" => {
                    let w = match weights {
                        Some(path) => load_weights(path, digest)?,
                        None => WeightVector::uniform(x.len())?,
                    };
                    let p = p.ok_or_else(|| CliError::usage("gini needs --p"))?;
                    let q = q.ok_or_else(|| CliError::usage("gini needs --q"))?;
                    means::gini_mean(p, q, &w, &x)?
                }
                "trimmed" => {
                    means::trimmed_mean(k.ok_or_else(|| CliError::usage("trimmed needs --k"))?, &x)?
                }
                "winsorized" => means::winsorized_mean(
                    k.ok_or_else(|| CliError::usage("winsorized needs --k"))?,
                    &x,
                )?,
                "quantile" => means::quantile(
                    qtype.unwrap_or(7),
                    alpha.ok_or_else(|| CliError::usage("quantile needs --alpha"))?,
                    &x,
                )?,
                name => {
                    let spec = match name {
                        "amean" => means::MeanSpec::AMean,
                        "qmean" => means::MeanSpec::QMean,
                        "hmean" => means::MeanSpec::HMean,
                        "gmean" => means::MeanSpec::GMean,
                        "pmean" => means::MeanSpec::PMean(
                            r.ok_or_else(|| CliError::usage("pmean needs --r"))?,
                        ),
                        "emean" => means::MeanSpec::EMean(
                            r.ok_or_else(|| CliError::usage("emean needs --r (gamma)"))?,
                        ),
                        "median" => means::MeanSpec::Median,
                        "min" => means::MeanSpec::Min,
                        "max" => means::MeanSpec::Max,
                        "sum" => means::MeanSpec::Sum,
                        "prod" => means::MeanSpec::Prod,
                        "lukasiewicz-tnorm" => means::MeanSpec::LukasiewiczTnorm,
                        "lukasiewicz-tconorm" => means::MeanSpec::LukasiewiczTconorm,
                        "drastic-tconorm" => means::MeanSpec::DrasticTconorm,
                        "mode" => means::MeanSpec::Mode,
                        "three-pi" => means::MeanSpec::ThreePi,
                        "os" => {
                            means::MeanSpec::Os(k.ok_or_else(|| CliError::usage("os needs --k"))?)
                        }
                        other => {
                            return Err(CliError::usage(format!(
                                "unknown aggregate kind {other:?}"
                            )))
                        }
                    };
                    means::aggregate(spec, &x)?
                }
            };
            result.insert("value".into(), Value::Float(value));
            result.insert("n".into(), Value::Int(x.len() as i64));
            Ok(result)
        }

        Command::Integral {
            kind,
            measure,
            input,
        } => {
            let text = load(input, digest)?;
            let data = io::parse_vector(input, &text)?;
            let x = RealVector::new(data)?;
            let n = x.len();
            let mu = match measure.as_str() {
                "counting" => integ::MonotoneMeasure::counting(n)?,
                spec => {
                    let (name, file) = spec
                        .split_once(':')
                        .ok_or_else(|| CliError::usage(format!("bad measure {spec:?}")))?;
                    let path = Path::new(file);
                    let body = load(path, digest)?;
                    match name {
                        "table" => integ::MonotoneMeasure::from_json(n, &body)?,
                        "additive" => {
                            integ::MonotoneMeasure::additive(io::parse_vector(path, &body)?)?
                        }
                        "symmetric" => {
                            integ::MonotoneMeasure::symmetric(n, io::parse_vector(path, &body)?)?
                        }
                        other => return Err(CliError::usage(format!("unknown measure {other:?}"))),
                    }
                }
            };
            let value = match kind.as_str() {
                "choquet" => integ::choquet(&mu, &x)?,
                "sugeno" => integ::sugeno(&mu, &x)?,
                "shilkret" => integ::shilkret(&mu, &x)?,
                other => return Err(CliError::usage(format!("unknown integral {other:?}"))),
            };
            let mut result = Value::object();
            result.insert("value".into(), Value::Float(value));
            Ok(result)
        }

        Command::Fit {
            method,
            data,
            p,
            criterion,
            lambda,
            generator,
            eps,
            restarts,
            pmin,
            pmax,
            owa,
        } => {
            let text = load(data, digest)?;
            let (rows, y) = io::parse_fit_data(data, &text)?;
            let base = fit::FitData::new(rows, y)?;
            let fitdata = if *owa { base.sorted_columns() } else { base };
            let mut result = Value::object();
            let weights = match method.as_str() {
                "wam-lse" => fit::fit_wam_lse(&fitdata)?,
                "wam-lad" => fit::fit_wam_lad(&fitdata)?,
                "wam-lmd" => fit::fit_wam_lmd(&fitdata)?,
                "wam-rank" => {
                    let pen = p.ok_or_else(|| CliError::usage("wam-rank needs --p"))?;
                    let crit = match criterion.as_deref().unwrap_or("lad") {
                        "lad" => fit::RankCriterion::LadL1Penalty(pen),
                        "lse" => fit::RankCriterion::LseL2Penalty(pen),
                        other => {
                            return Err(CliError::usage(format!(
                                "unknown rank criterion {other:?}"
                            )))
                        }
                    };
                    let rank = fit::fit_wam_rank(&fitdata, crit)?;
                    result.insert("tau".into(), Value::Float(rank.tau));
                    rank.weights
                }
                "wam-reg" => fit::fit_wam_regularized(
                    &fitdata,
                    lambda.ok_or_else(|| CliError::usage("wam-reg needs --lambda"))?,
                )?,
                "wqam" => {
                    let gen = parse_generator(generator.as_deref().unwrap_or("identity"))?;
                    fit::fit_wqam_lse(&fitdata, gen)?
                }
                "wqam-linearized" => {
                    let gen = parse_generator(generator.as_deref().unwrap_or("identity"))?;
                    fit::fit_wqam_lse_linearized(&fitdata, gen)?
                }
                "wqam-lad" => {
                    let seed = require_seed(cli.seed, "wqam-lad fitting")?;
                    let gen = parse_generator(generator.as_deref().unwrap_or("identity"))?;
                    fit::fit_wqam_lad(&fitdata, gen, *eps, *restarts, seed)?
                }
                "powmean" => {
                    let (p_star, w) = fit::fit_powmean(&fitdata, *pmin, *pmax)?;
                    result.insert("exponent".into(), Value::Float(p_star));
                    w
                }
                other => return Err(CliError::usage(format!("unknown fit method {other:?}"))),
            };
            let errors = match method.as_str() {
                "wqam" | "wqam-lad" => {
                    let gen = parse_generator(generator.as_deref().unwrap_or("identity"))?;
                    fit::wqam_fit_errors(&fitdata, gen, weights.weights())?
                }
                _ => fit::fit_errors(&fitdata, weights.weights()),
            };
            result.insert("weights".into(), Value::floats(weights.weights()));
            result.insert("l1".into(), Value::Float(errors.l1));
            result.insert("l2".into(), Value::Float(errors.l2));
            result.insert("linf".into(), Value::Float(errors.linf));
            Ok(result)
        }

        Command::Depth {
            kind,
            point,
            mode,
            samples,
            input,
        } => {
            let text = load(input, digest)?;
            let rows = io::parse_matrix(input, &text)?;
            let cloud = mv::PointCloud::from_columns(&rows)?;
            let y = parse_point(point)?;
            let mut result = Value::object();
            match kind.as_str() {
                "tukey" => {
                    let m = match mode.as_str() {
                        "exact" => mv::TukeyMode::Exact2d,
                        "mc" => mv::TukeyMode::Mc {
                            samples: *samples,
                            seed: require_seed(cli.seed, "monte carlo depth")?,
                        },
                        other => return Err(CliError::usage(format!("unknown mode {other:?}"))),
                    };
                    let d = mv::tukey_depth(&y, &cloud, m)?;
                    result.insert("depth".into(), Value::Int(d as i64));
                }
                "liu" => {
                    result.insert("depth".into(), Value::Float(mv::liu_depth(&y, &cloud)?));
                }
                "oja" => {
                    result.insert("depth".into(), Value::Float(mv::oja_depth(&y, &cloud)?));
                }
                other => return Err(CliError::usage(format!("unknown depth kind {other:?}"))),
            }
            Ok(result)
        }

        Command::Median {
            kind,
            weights,
            metric,
            eps,
            max_iter,
            directions,
            input,
        } => {
            let text = load(input, digest)?;
            let rows = io::parse_matrix(input, &text)?;
            let cloud = mv::PointCloud::from_columns(&rows)?;
            let w = match weights {
                Some(path) => Some(load_weights(path, digest)?),
                None => None,
            };
            match kind.as_str() {
                "centroid" => Ok(point_result(&mv::centroid(&cloud, w.as_ref())?)),
                "cwmedian" => Ok(point_result(&mv::cw_median(&cloud)?)),
                "weiszfeld" => {
                    let eps = cli.tol.unwrap_or(*eps);
                    let r = mv::weiszfeld_1median(&cloud, w.as_ref(), eps, *max_iter)?;
                    if !r.converged {
                        return Err(CliError::computation(format!(
                            "weiszfeld did not converge in {} iterations",
                            r.iterations
                        )));
                    }
                    let mut out = point_result(&r.point);
                    out.insert("iterations".into(), Value::Int(r.iterations as i64));
                    Ok(out)
                }
                "medoid" => {
                    let m = parse_metric(metric)?;
                    let idx = mv::medoid(&cloud, &m);
                    let mut out = point_result(cloud.point(idx));
                    out.insert("index".into(), Value::Int(idx as i64 + 1));
                    Ok(out)
                }
                "seb" => {
                    let ball = mv::seb_1center(&cloud)?;
                    let mut out = point_result(&ball.center);
                    out.insert("radius".into(), Value::Float(ball.radius));
                    Ok(out)
                }
                "tukey" => {
                    let m = mv::tukey_median_2d(&cloud)?;
                    let mut out = point_result(&m.point);
                    out.insert("depth".into(), Value::Int(m.depth as i64));
                    out.insert("multiple".into(), Value::Bool(m.multiple));
                    out.insert("degenerate".into(), Value::Bool(m.degenerate));
                    Ok(out)
                }
                "orthomedian" => Ok(point_result(&mv::orthomedian_2d(&cloud, *directions)?)),
                other => Err(CliError::usage(format!("unknown median kind {other:?}"))),
            }
        }

        Command::Strdist {
            metric,
            a,
            b,
            q,
            costs,
        } => {
            let u = st::encode_str(a);
            let v = st::encode_str(b);
            let mut result = Value::object();
            digest.extend_from_slice(a.as_bytes());
            digest.extend_from_slice(b.as_bytes());
            let value: Value = match metric.as_str() {
                "hamming" => match st::hamming(&u, &v) {
                    st::Hamming::Finite(d) => Value::Int(d as i64),
                    st::Hamming::Infinite => Value::Str("inf".into()),
                },
                "levenshtein" => {
                    let c = match costs {
                        None => st::EditCosts::default(),
                        Some(spec) => {
                            let parts = parse_point(spec)?;
                            if parts.len() != 3 {
                                return Err(CliError::usage("--costs needs insert,delete,replace"));
                            }
                            st::EditCosts {
                                insert: parts[0],
                                delete: parts[1],
                                replace: parts[2],
                            }
                        }
                    };
                    Value::Float(st::levenshtein(&u, &v, &c)?)
                }
                "lcs" => Value::Int(st::lcs_dist(&u, &v) as i64),
                "osa" => Value::Int(st::osa(&u, &v) as i64),
                "dl" => Value::Int(st::damerau_levenshtein(&u, &v) as i64),
                "qgram" => Value::Int(st::qgram_dist(&u, &v, *q)? as i64),
                "jaccard" => Value::Float(st::jaccard_qgram(&u, &v, *q)?),
                "rank" => Value::Int(st::rank_dist(&u, &v) as i64),
                other => return Err(CliError::usage(format!("unknown metric {other:?}"))),
            };
            result.insert("value".into(), value);
            Ok(result)
        }

        Command::Strmedian {
            metric,
            iters,
            population,
            input,
        } => {
            let text = load(input, digest)?;
            let strings = io::parse_strings(&text);
            if strings.is_empty() {
                return Err(CliError::usage(format!("{}: no strings", input.display())));
            }
            let mut result = Value::object();
            match metric.as_str() {
                "hamming" => {
                    let med = st::hamming_median(&strings)?;
                    result.insert(
                        "string".into(),
                        Value::Str(st::decode_string(&med.canonical)),
                    );
                    result.insert("penalty".into(), Value::Int(med.penalty as i64));
                    result.insert(
                        "candidate_sets".into(),
                        Value::Array(
                            med.candidate_sets
                                .iter()
                                .map(|set| {
                                    Value::Array(
                                        set.iter()
                                            .map(|&c| Value::Str(st::decode_string(&[c])))
                                            .collect(),
                                    )
                                })
                                .collect(),
                        ),
                    );
                    let solutions: u64 =
                        med.candidate_sets.iter().map(|s| s.len() as u64).product();
                    result.insert("solutions".into(), Value::Int(solutions as i64));
                }
                "levenshtein" => {
                    let seed = require_seed(cli.seed, "the genetic median search")?;
                    let params = st::GaParams {
                        population: *population,
                        iterations: *iters,
                        ..Default::default()
                    };
                    let m = st::median_string_ga(&strings, params, seed)?;
                    result.insert("string".into(), Value::Str(st::decode_string(&m.string)));
                    result.insert("penalty".into(), Value::Float(m.penalty));
                }
                other => return Err(CliError::usage(format!("unknown metric {other:?}"))),
            }
            Ok(result)
        }

        Command::Strcenter {
            iters,
            population,
            input,
        } => {
            let text = load(input, digest)?;
            let strings = io::parse_strings(&text);
            if strings.is_empty() {
                return Err(CliError::usage(format!("{}: no strings", input.display())));
            }
            let seed = require_seed(cli.seed, "the genetic center search")?;
            let params = st::GaParams {
                population: *population,
                iterations: *iters,
                ..Default::default()
            };
            let (best, dist) = st::closest_string_ga(&strings, params, seed)?;
            let mut result = Value::object();
            result.insert("string".into(), Value::Str(st::decode_string(&best)));
            result.insert("max_distance".into(), Value::Int(dist as i64));
            Ok(result)
        }

        Command::Impact {
            kind,
            phi,
            mu,
            integral,
            eta,
            input,
        } => {
            let text = load(input, digest)?;
            let rows = io::parse_ragged(input, &text)?;
            let mut values = Vec::new();
            for row in rows {
                let record = info::SortedVarVector::from_unsorted(row)?;
                let v = match kind.as_str() {
                    "sum" => info::impact_index(info::ImpactKind::Sum, &record)?,
                    "h" => info::impact_index(info::ImpactKind::H, &record)?,
                    "g" => info::impact_index(info::ImpactKind::G, &record)?,
                    "w" => info::impact_index(info::ImpactKind::W, &record)?,
                    "h2" => info::impact_index(info::ImpactKind::H2, &record)?,
                    "maxprod" => info::impact_index(info::ImpactKind::MaxProd, &record)?,
                    "model" => {
                        let spec = info::ImpactSpec {
                            phi: match phi.as_str() {
                                "identity" => info::ImpactPhi::Identity,
                                "floor" => info::ImpactPhi::Floor,
                                "sqrt" => info::ImpactPhi::Sqrt,
                                "sqrt-floor" => info::ImpactPhi::SqrtFloor,
                                "log1p" => info::ImpactPhi::Log1p,
                                "g-transform" => info::ImpactPhi::GTransform,
                                "w-transform" => info::ImpactPhi::WTransform,
                                other => {
                                    return Err(CliError::usage(format!("unknown phi {other:?}")))
                                }
                            },
                            measure: match mu.as_str() {
                                "identity" => info::MeasureTransform::Identity,
                                spec => {
                                    let (name, arg) = spec.split_once(':').ok_or_else(|| {
                                        CliError::usage(format!("bad measure {spec:?}"))
                                    })?;
                                    if name != "power" {
                                        return Err(CliError::usage(format!(
                                            "unknown measure {name:?}"
                                        )));
                                    }
                                    info::MeasureTransform::Power(
                                        arg.parse()
                                            .map_err(|_| CliError::usage("bad measure exponent"))?,
                                    )
                                }
                            },
                            integral: match integral.as_str() {
                                "choquet" => info::IntegralKind::Choquet,
                                "sugeno" => info::IntegralKind::Sugeno,
                                "shilkret" => info::IntegralKind::Shilkret,
                                other => {
                                    return Err(CliError::usage(format!(
                                        "unknown integral {other:?}"
                                    )))
                                }
                            },
                            eta: match eta.as_str() {
                                "identity" => info::OutputMap::Identity,
                                "sqrt" => info::OutputMap::Sqrt,
                                other => {
                                    return Err(CliError::usage(format!("unknown eta {other:?}")))
                                }
                            },
                        };
                        info::universal_impact(&spec, &record)?
                    }
                    other => return Err(CliError::usage(format!("unknown impact kind {other:?}"))),
                };
                values.push(v);
            }
            let mut result = Value::object();
            result.insert("values".into(), Value::floats(&values));
            Ok(result)
        }

        Command::Infocentroid {
            p,
            r,
            median,
            input,
        } => {
            let text = load(input, digest)?;
            let rows = io::parse_ragged(input, &text)?;
            let records: Vec<info::SortedVarVector> = rows
                .into_iter()
                .map(info::SortedVarVector::from_unsorted)
                .collect::<Result<_, _>>()?;
            let fitres = if *median {
                info::m1_median(&records, *p, *r)?
            } else {
                info::dpr2_centroid(&records, *p, *r)?
            };
            let mut result = Value::object();
            result.insert("vector".into(), Value::floats(fitres.vector.values()));
            result.insert("penalty".into(), Value::Float(fitres.penalty));
            Ok(result)
        }

        Command::Spread {
            kind,
            weights,
            interval,
            qtype,
            input,
        } => {
            let text = load(input, digest)?;
            let data = io::parse_vector(input, &text)?;
            let x = match interval {
                None => RealVector::new(data)?,
                Some(spec) => {
                    let bounds = parse_point(spec)?;
                    if bounds.len() != 2 {
                        return Err(CliError::usage("--interval needs a,b"));
                    }
                    RealVector::with_domain(data, bounds[0], bounds[1])?
                }
            };
            let mut need_weights = || -> Result<WeightVector, CliError> {
                match weights {
                    Some(path) => load_weights(path, digest),
                    None => Ok(WeightVector::uniform(x.len())?),
                }
            };
            let value = match kind.as_str() {
                "var" => ch::spread(&ch::SpreadSpec::Var, &x)?,
                "sd" => ch::spread(&ch::SpreadSpec::Sd, &x)?,
                "range" => ch::spread(&ch::SpreadSpec::Range, &x)?,
                "iqr" => ch::spread(&ch::SpreadSpec::Iqr { qtype: *qtype }, &x)?,
                "mad" => ch::spread(&ch::SpreadSpec::Mad, &x)?,
                "mean-error" => ch::spread(&ch::SpreadSpec::MeanError, &x)?,
                "gini-md" => ch::spread(&ch::SpreadSpec::GiniMd, &x)?,
                "wd2wam" => ch::spread(&ch::SpreadSpec::Wd2Wam(need_weights()?), &x)?,
                "wd1wam" => ch::spread(&ch::SpreadSpec::Wd1Wam(need_weights()?), &x)?,
                "wdinfwam" => ch::spread(&ch::SpreadSpec::WdInfWam(need_weights()?), &x)?,
                "nwd2wam" => ch::spread(&ch::SpreadSpec::Nwd2Wam(need_weights()?), &x)?,
                "nwd1wam" => ch::spread(&ch::SpreadSpec::Nwd1Wam(need_weights()?), &x)?,
                "gini" => ch::relative(ch::RelativeKind::Gini, &x)?,
                "cv" => ch::relative(ch::RelativeKind::Cv, &x)?,
                "skewness" => ch::shape(ch::ShapeKind::Skewness, &x)?,
                "kurtosis" => ch::shape(ch::ShapeKind::Kurtosis, &x)?,
                other => return Err(CliError::usage(format!("unknown spread kind {other:?}"))),
            };
            let mut result = Value::object();
            result.insert("value".into(), Value::Float(value));
            Ok(result)
        }

        Command::Orness {
            function,
            n,
            method,
            samples,
            weights,
        } => {
            let mut result = Value::object();
            match method.as_str() {
                "owa-exact" => {
                    let w = load_weights(
                        weights
                            .as_deref()
                            .ok_or_else(|| CliError::usage("owa-exact needs --weights"))?,
                        digest,
                    )?;
                    let r = ch::orness(&|_: &[f64]| 0.0, *n, &ch::OrnessMethod::OwaExact(w))?;
                    result.insert("value".into(), Value::Float(r.value));
                    result.insert("std_error".into(), Value::Float(0.0));
                }
                "mc" => {
                    let seed = require_seed(cli.seed, "monte carlo orness")?;
                    let f: Box<dyn Fn(&[f64]) -> f64> = match function.as_str() {
                        "min" => named_mean(means::MeanSpec::Min),
                        "max" => named_mean(means::MeanSpec::Max),
                        "amean" => named_mean(means::MeanSpec::AMean),
                        "gmean" => named_mean(means::MeanSpec::GMean),
                        "qmean" => named_mean(means::MeanSpec::QMean),
                        "hmean" => named_mean(means::MeanSpec::HMean),
                        "median" => named_mean(means::MeanSpec::Median),
                        "owa" => {
                            let w = load_weights(
                                weights
                                    .as_deref()
                                    .ok_or_else(|| CliError::usage("owa needs --weights"))?,
                                digest,
                            )?;
                            Box::new(move |v: &[f64]| {
                                means::owa(&w, &RealVector::new(v.to_vec()).unwrap()).unwrap()
                            })
                        }
                        other => {
                            return Err(CliError::usage(format!("unknown function {other:?}")))
                        }
                    };
                    let r = ch::orness(
                        f.as_ref(),
                        *n,
                        &ch::OrnessMethod::Mc {
                            samples: *samples,
                            seed,
                        },
                    )?;
                    result.insert("value".into(), Value::Float(r.value));
                    result.insert("std_error".into(), Value::Float(r.std_error));
                }
                other => return Err(CliError::usage(format!("unknown method {other:?}"))),
            }
            Ok(result)
        }

        Command::Entropy { weights } => {
            let w = load_weights(weights, digest)?;
            let mut result = Value::object();
            result.insert("value".into(), Value::Float(ch::entropy(&w)));
            Ok(result)
        }

        Command::Exemplar {
            algo,
            fold,
            metric,
            k,
            restarts,
            input,
        } => {
            let text = load(input, digest)?;
            let fold = match fold.as_str() {
                "sum" => ex::FoldSpec::Sum,
                "max" => ex::FoldSpec::Max,
                "sumsq" => ex::FoldSpec::SumSq,
                other => return Err(CliError::usage(format!("unknown fold {other:?}"))),
            };
            // the three data sources share the search drivers
            enum Data {
                Points(Vec<Vec<f64>>, mv::MetricSpec),
                Strings(Vec<Vec<u32>>),
                Matrix(Vec<Vec<f64>>),
            }
            let data = match metric.as_str() {
                "levenshtein" => Data::Strings(io::parse_strings(&text)),
                "precomputed" => {
                    let m = io::parse_matrix(input, &text)?;
                    if m.len() != m[0].len() {
                        return Err(CliError::usage("distance matrix must be square"));
                    }
                    Data::Matrix(m)
                }
                name => Data::Points(io::parse_matrix(input, &text)?, parse_metric(name)?),
            };
            let n = match &data {
                Data::Points(p, _) => p.len(),
                Data::Strings(s) => s.len(),
                Data::Matrix(m) => m.len(),
            };
            if n == 0 {
                return Err(CliError::usage(format!("{}: no objects", input.display())));
            }
            let dist: Box<dyn Fn(usize, usize) -> f64> = match &data {
                Data::Points(pts, m) => {
                    let pts = pts.clone();
                    let m = m.clone();
                    Box::new(move |i, j| m.distance(&pts[i], &pts[j]))
                }
                Data::Strings(s) => {
                    let s = s.clone();
                    Box::new(move |i, j| st::levenshtein_unit(&s[i], &s[j]) as f64)
                }
                Data::Matrix(m) => {
                    let m = m.clone();
                    Box::new(move |i, j| m[i][j])
                }
            };
            let space = ex::SemimetricSpace::new(n, dist)?;
            space
                .validate(0x5eed)
                .map_err(|e| CliError::usage(e.to_string()))?;
            let r = match algo.as_str() {
                "exact" => ex::exemplar_exact(&space, fold),
                "pruned" => ex::exemplar_pruned(&space, fold),
                "approx" => {
                    let seed = require_seed(cli.seed, "approximate exemplar search")?;
                    ex::exemplar_approx(&space, fold, *k, *restarts, seed)?
                }
                other => return Err(CliError::usage(format!("unknown algorithm {other:?}"))),
            };
            let mut result = Value::object();
            result.insert("index".into(), Value::Int(r.index as i64 + 1));
            result.insert("penalty".into(), Value::Float(r.penalty));
            result.insert("dist_calls".into(), Value::Int(r.dist_calls as i64));
            Ok(result)
        }
    }
}

fn named_mean(spec: means::MeanSpec) -> Box<dyn Fn(&[f64]) -> f64> {
    Box::new(move |v: &[f64]| {
        // keep samples strictly inside the open cube so means with a
        // positive domain never reject them
        let v: Vec<f64> = v.iter().map(|a| a.max(f64::MIN_POSITIVE)).collect();
        means::aggregate(spec, &RealVector::new(v).unwrap()).unwrap()
    })
}

fn parse_metric(spec: &str) -> Result<mv::MetricSpec, CliError> {
    Ok(match spec {
        "euclidean" => mv::MetricSpec::Euclidean,
        "manhattan" => mv::MetricSpec::Manhattan,
        "chebyshev" => mv::MetricSpec::Chebyshev,
        other => match other.split_once(':') {
            Some(("minkowski", p)) => {
                let p: f64 = p
                    .parse()
                    .map_err(|_| CliError::usage("bad minkowski exponent"))?;
                if p < 1.0 {
                    return Err(CliError::usage("minkowski exponent must be >= 1"));
                }
                mv::MetricSpec::Minkowski(p)
            }
            _ => return Err(CliError::usage(format!("unknown metric {other:?}"))),
        },
    })
}
