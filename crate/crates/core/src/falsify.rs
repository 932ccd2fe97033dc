//! Randomized search for counterexamples to fusion-function properties.

use crate::error::{Error, Result};
use crate::order::{random_permutation_with, rng_from_seed};
use rand::Rng;

/// Properties that can be probed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Nondecreasing,
    Idempotent,
    Internal,
    Symmetric,
    TranslationEquivariant,
    ScaleEquivariant,
    WeaklyMonotone,
    Conjunctive,
    Disjunctive,
}

/// Where and how inputs are drawn.
#[derive(Debug, Clone, Copy)]
pub struct SamplerConfig {
    pub arity: usize,
    pub lo: f64,
    pub hi: f64,
    /// When set, samples snap to `grid + 1` equally spaced levels. Ties are
    /// impossible under continuous sampling, so properties whose violations
    /// need repeated values (such as monotonicity of the mode) require this.
    pub grid: Option<u32>,
}

impl SamplerConfig {
    pub fn unit(arity: usize) -> Self {
        SamplerConfig {
            arity,
            lo: 0.0,
            hi: 1.0,
            grid: None,
        }
    }

    pub fn interval(arity: usize, lo: f64, hi: f64) -> Self {
        SamplerConfig {
            arity,
            lo,
            hi,
            grid: None,
        }
    }

    pub fn with_grid(mut self, levels: u32) -> Self {
        self.grid = Some(levels);
        self
    }

    fn snap(&self, v: f64) -> f64 {
        match self.grid {
            None => v,
            Some(g) => {
                let step = (self.hi - self.lo) / g as f64;
                self.lo + ((v - self.lo) / step).round() * step
            }
        }
    }
}

/// Outcome of a falsification run. A counterexample stores the concrete
/// inputs so the violated check can be replayed deterministically.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    NoCounterexample,
    Counterexample { inputs: Vec<Vec<f64>> },
}

const REL_TOL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Re-evaluates the property on a concrete counterexample candidate.
/// Returns true when the property HOLDS for these inputs.
pub fn check_property<F>(f: &F, prop: Property, inputs: &[Vec<f64>]) -> bool
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    match prop {
        Property::Nondecreasing | Property::WeaklyMonotone => {
            let (x, y) = (&inputs[0], &inputs[1]);
            f(y) >= f(x) - REL_TOL
        }
        Property::Idempotent => {
            let x = &inputs[0];
            let c = x[0];
            (f(x) - c).abs() <= f64::EPSILON.sqrt() * c.abs().max(1.0)
        }
        Property::Internal => {
            let x = &inputs[0];
            let mn = x.iter().cloned().fold(f64::INFINITY, f64::min);
            let mx = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let v = f(x);
            v >= mn - REL_TOL && v <= mx + REL_TOL
        }
        Property::Symmetric => close(f(&inputs[0]), f(&inputs[1])),
        Property::TranslationEquivariant => {
            let (x, y) = (&inputs[0], &inputs[1]);
            let t = y[0] - x[0];
            close(f(y), f(x) + t)
        }
        Property::ScaleEquivariant => {
            let (x, y) = (&inputs[0], &inputs[1]);
            // recover s from the first nonzero coordinate
            let s = x
                .iter()
                .zip(y)
                .find(|(xi, _)| **xi != 0.0)
                .map(|(xi, yi)| yi / xi)
                .unwrap_or(1.0);
            close(f(y), s * f(x))
        }
        Property::Conjunctive => {
            let x = &inputs[0];
            let mn = x.iter().cloned().fold(f64::INFINITY, f64::min);
            f(x) <= mn + REL_TOL
        }
        Property::Disjunctive => {
            let x = &inputs[0];
            let mx = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            f(x) >= mx - REL_TOL
        }
    }
}

/// Samples `trials` random instances looking for a property violation.
pub fn falsify_property<F>(
    f: &F,
    prop: Property,
    cfg: SamplerConfig,
    trials: usize,
    seed: u64,
) -> Result<Verdict>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    if cfg.arity == 0 || cfg.lo >= cfg.hi {
        return Err(Error::InvalidParameter("bad sampler configuration".into()));
    }
    let mut rng = rng_from_seed(seed);
    let sample = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<f64> {
        (0..cfg.arity)
            .map(|_| cfg.snap(rng.gen_range(cfg.lo..cfg.hi)))
            .collect()
    };
    for _ in 0..trials {
        let x = sample(&mut rng);
        let inputs: Vec<Vec<f64>> = match prop {
            Property::Nondecreasing => {
                // perturbation-based neighbor: bump one coordinate upwards
                let mut y = x.clone();
                let i = rng.gen_range(0..cfg.arity);
                let room = cfg.hi - y[i];
                if room <= 0.0 {
                    continue;
                }
                y[i] = cfg.snap(y[i] + rng.gen_range(0.0..room));
                if y[i] <= x[i] {
                    continue;
                }
                vec![x, y]
            }
            Property::WeaklyMonotone => {
                let mx = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let room = cfg.hi - mx;
                if room <= 0.0 {
                    continue;
                }
                let t = rng.gen_range(0.0..room);
                let y: Vec<f64> = x.iter().map(|v| v + t).collect();
                vec![x, y]
            }
            Property::Idempotent => {
                let c = rng.gen_range(cfg.lo..cfg.hi);
                vec![vec![c; cfg.arity]]
            }
            Property::Internal | Property::Conjunctive | Property::Disjunctive => vec![x],
            Property::Symmetric => {
                let sigma = random_permutation_with(cfg.arity, &mut rng);
                let y: Vec<f64> = sigma.iter().map(|&i| x[i]).collect();
                vec![x, y]
            }
            Property::TranslationEquivariant => {
                let mn = x.iter().cloned().fold(f64::INFINITY, f64::min);
                let mx = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let (tlo, thi) = (cfg.lo - mn, cfg.hi - mx);
                if tlo >= thi {
                    continue;
                }
                let t = rng.gen_range(tlo..thi);
                let y: Vec<f64> = x.iter().map(|v| v + t).collect();
                vec![x, y]
            }
            Property::ScaleEquivariant => {
                let s = rng.gen_range(0.0..2.0);
                if s == 0.0 {
                    continue;
                }
                // scaling must stay inside the configured interval
                let y: Vec<f64> = x.iter().map(|v| v * s).collect();
                if y.iter().any(|v| *v < cfg.lo || *v > cfg.hi) {
                    continue;
                }
                vec![x, y]
            }
        };
        if !check_property(f, prop, &inputs) {
            return Ok(Verdict::Counterexample { inputs });
        }
    }
    Ok(Verdict::NoCounterexample)
}
