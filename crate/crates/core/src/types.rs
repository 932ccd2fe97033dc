use crate::error::{Error, Result};

/// A finite numeric tuple, optionally constrained to an interval `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector {
    values: Vec<f64>,
    domain: Option<(f64, f64)>,
}

impl RealVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("vector element".into()));
        }
        Ok(RealVector {
            values,
            domain: None,
        })
    }

    /// Attaches a domain interval and validates membership of all elements.
    pub fn with_domain(values: Vec<f64>, a: f64, b: f64) -> Result<Self> {
        if a > b {
            return Err(Error::InvalidParameter(format!(
                "empty interval [{a}, {b}]"
            )));
        }
        let v = Self::new(values)?;
        if v.values.iter().any(|&x| x < a || x > b) {
            return Err(Error::Domain(format!("element outside [{a}, {b}]")));
        }
        Ok(RealVector {
            values: v.values,
            domain: Some((a, b)),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn domain(&self) -> Option<(f64, f64)> {
        self.domain
    }

    /// Copy of the values sorted nondecreasingly (stable).
    pub fn sorted(&self) -> Vec<f64> {
        let mut s = self.values.clone();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        s
    }
}

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
}

pub const WEIGHT_SUM_TOL: f64 = 1e-12;

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyInput);
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Domain(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Domain(format!("weights sum to {s}, expected 1")));
        }
        Ok(WeightVector { weights })
    }

    /// Rescales arbitrary nonnegative degrees of importance to sum to one.
    pub fn normalized(degrees: &[f64]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptyInput);
        }
        if degrees.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Domain(
                "degrees must be finite and nonnegative".into(),
            ));
        }
        let s: f64 = degrees.iter().sum();
        if s <= 0.0 {
            return Err(Error::Domain("degrees sum to zero".into()));
        }
        Ok(WeightVector {
            weights: degrees.iter().map(|d| d / s).collect(),
        })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(WeightVector {
            weights: vec![1.0 / n as f64; n],
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Generator functions for quasi-arithmetic means and their fitting.
///
/// Each variant provides phi, its inverse, and the derivative of the inverse
/// on the generator's natural domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Identity,
    Square,
    Reciprocal,
    Power(f64),
    Log,
    Exp(f64),
}

impl Generator {
    pub fn phi(&self, x: f64) -> Result<f64> {
        match *self {
            Generator::Identity => Ok(x),
            Generator::Square => Ok(x * x),
            Generator::Reciprocal => {
                if x == 0.0 {
                    return Err(Error::Domain("reciprocal generator needs x != 0".into()));
                }
                Ok(1.0 / x)
            }
            Generator::Power(r) => {
                if r == 0.0 {
                    return Err(Error::InvalidParameter(
                        "power generator needs r != 0".into(),
                    ));
                }
                if x < 0.0 {
                    return Err(Error::Domain("power generator needs x >= 0".into()));
                }
                Ok(x.powf(r))
            }
            Generator::Log => {
                if x <= 0.0 {
                    return Err(Error::Domain("log generator needs x > 0".into()));
                }
                Ok(x.ln())
            }
            Generator::Exp(g) => {
                if g == 0.0 {
                    return Err(Error::InvalidParameter(
                        "exp generator needs gamma != 0".into(),
                    ));
                }
                Ok((g * x).exp())
            }
        }
    }

    pub fn phi_inv(&self, y: f64) -> Result<f64> {
        match *self {
            Generator::Identity => Ok(y),
            Generator::Square => {
                if y < 0.0 {
                    return Err(Error::Domain("square inverse needs y >= 0".into()));
                }
                Ok(y.sqrt())
            }
            Generator::Reciprocal => {
                if y == 0.0 {
                    return Err(Error::Domain("reciprocal inverse needs y != 0".into()));
                }
                Ok(1.0 / y)
            }
            Generator::Power(r) => {
                if y < 0.0 {
                    return Err(Error::Domain("power inverse needs y >= 0".into()));
                }
                Ok(y.powf(1.0 / r))
            }
            Generator::Log => Ok(y.exp()),
            Generator::Exp(g) => {
                if y <= 0.0 {
                    return Err(Error::Domain("exp inverse needs y > 0".into()));
                }
                Ok(y.ln() / g)
            }
        }
    }

    /// Derivative of the inverse, used by gradient-based weight fitting.
    pub fn phi_inv_prime(&self, y: f64) -> Result<f64> {
        match *self {
            Generator::Identity => Ok(1.0),
            Generator::Square => {
                if y <= 0.0 {
                    return Err(Error::Domain(
                        "square inverse derivative needs y > 0".into(),
                    ));
                }
                Ok(0.5 / y.sqrt())
            }
            Generator::Reciprocal => {
                if y == 0.0 {
                    return Err(Error::Domain(
                        "reciprocal inverse derivative needs y != 0".into(),
                    ));
                }
                Ok(-1.0 / (y * y))
            }
            Generator::Power(r) => {
                if y <= 0.0 {
                    return Err(Error::Domain("power inverse derivative needs y > 0".into()));
                }
                Ok(y.powf(1.0 / r - 1.0) / r)
            }
            Generator::Log => Ok(y.exp()),
            Generator::Exp(g) => {
                if y <= 0.0 {
                    return Err(Error::Domain("exp inverse derivative needs y > 0".into()));
                }
                Ok(1.0 / (g * y))
            }
        }
    }
}
