//! Binary fuzzy connectives on the unit interval and their n-ary folds.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TNorm {
    Min,
    Prod,
    Lukasiewicz,
    Drastic,
    Fodor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TConorm {
    Max,
    Prod,
    Lukasiewicz,
    Drastic,
    Fodor,
}

/// Archimedean 2-copula families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Copula {
    /// theta >= -1, theta != 0
    Clayton(f64),
    /// theta >= 1
    Gumbel(f64),
    /// theta != 0
    Frank(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Implication {
    Minimal,
    Maximal,
    KleeneDienes,
    Lukasiewicz,
    Reichenbach,
    Fodor,
    Goguen,
    Goedel,
    Rescher,
    Weber,
    Yager,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConnectiveSpec {
    TNorm(TNorm),
    TConorm(TConorm),
    Copula(Copula),
    Implication(Implication),
    /// The 3-Pi uninorm.
    ThreePi,
}

fn check_unit(v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::Domain(format!("argument {v} outside [0, 1]")));
    }
    Ok(v)
}

pub fn tnorm(t: TNorm, x: f64, y: f64) -> Result<f64> {
    let x = check_unit(x)?;
    let y = check_unit(y)?;
    Ok(match t {
        TNorm::Min => x.min(y),
        TNorm::Prod => x * y,
        TNorm::Lukasiewicz => (x + y - 1.0).max(0.0),
        TNorm::Drastic => {
            if x == 1.0 || y == 1.0 {
                x.min(y)
            } else {
                0.0
            }
        }
        TNorm::Fodor => {
            if x + y <= 1.0 {
                0.0
            } else {
                x.min(y)
            }
        }
    })
}

pub fn tconorm(s: TConorm, x: f64, y: f64) -> Result<f64> {
    let x = check_unit(x)?;
    let y = check_unit(y)?;
    Ok(match s {
        TConorm::Max => x.max(y),
        TConorm::Prod => x + y - x * y,
        TConorm::Lukasiewicz => (x + y).min(1.0),
        TConorm::Drastic => {
            if x == 0.0 || y == 0.0 {
                x.max(y)
            } else {
                1.0
            }
        }
        TConorm::Fodor => {
            if x + y >= 1.0 {
                1.0
            } else {
                x.max(y)
            }
        }
    })
}

pub fn copula(c: Copula, x: f64, y: f64) -> Result<f64> {
    let x = check_unit(x)?;
    let y = check_unit(y)?;
    match c {
        Copula::Clayton(theta) => {
            if theta < -1.0 || theta == 0.0 {
                return Err(Error::InvalidParameter(
                    "clayton needs theta >= -1, != 0".into(),
                ));
            }
            if x == 0.0 || y == 0.0 {
                return Ok(0.0);
            }
            let s = x.powf(-theta) + y.powf(-theta) - 1.0;
            Ok(s.max(0.0).powf(-1.0 / theta))
        }
        Copula::Gumbel(theta) => {
            if theta < 1.0 {
                return Err(Error::InvalidParameter("gumbel needs theta >= 1".into()));
            }
            if x == 0.0 || y == 0.0 {
                return Ok(0.0);
            }
            let s = (1.0 / x).ln().powf(theta) + (1.0 / y).ln().powf(theta);
            Ok((-s.powf(1.0 / theta)).exp())
        }
        Copula::Frank(theta) => {
            if theta == 0.0 {
                return Err(Error::InvalidParameter("frank needs theta != 0".into()));
            }
            let num = (1.0 - (-theta * x).exp()) * (1.0 - (-theta * y).exp());
            let den = 1.0 - (-theta).exp();
            Ok(-(1.0 - num / den).ln() / theta)
        }
    }
}

pub fn implication(i: Implication, x: f64, y: f64) -> Result<f64> {
    let x = check_unit(x)?;
    let y = check_unit(y)?;
    Ok(match i {
        Implication::Minimal => {
            if x == 0.0 || y == 1.0 {
                1.0
            } else {
                0.0
            }
        }
        Implication::Maximal => {
            if x == 1.0 && y == 0.0 {
                0.0
            } else {
                1.0
            }
        }
        Implication::KleeneDienes => (1.0 - x).max(y),
        Implication::Lukasiewicz => (1.0 - x + y).min(1.0),
        Implication::Reichenbach => 1.0 - x + x * y,
        Implication::Fodor => {
            if x <= y {
                1.0
            } else {
                (1.0 - x).max(y)
            }
        }
        Implication::Goguen => {
            if x <= y {
                1.0
            } else {
                y / x
            }
        }
        Implication::Goedel => {
            if x <= y {
                1.0
            } else {
                y
            }
        }
        Implication::Rescher => {
            if x <= y {
                1.0
            } else {
                0.0
            }
        }
        Implication::Weber => {
            if x < 1.0 {
                1.0
            } else {
                y
            }
        }
        Implication::Yager => {
            if x == 0.0 && y == 0.0 {
                1.0
            } else {
                y.powf(x)
            }
        }
    })
}

/// 3-Pi uninorm with the 0/0 = 0 convention.
pub fn three_pi(x: &[f64]) -> Result<f64> {
    let mut p = 1.0;
    let mut q = 1.0;
    for &v in x {
        check_unit(v)?;
        p *= v;
        q *= 1.0 - v;
    }
    if p + q == 0.0 {
        Ok(0.0)
    } else {
        Ok(p / (p + q))
    }
}

/// Evaluates any binary connective.
pub fn connective(spec: ConnectiveSpec, x: f64, y: f64) -> Result<f64> {
    match spec {
        ConnectiveSpec::TNorm(t) => tnorm(t, x, y),
        ConnectiveSpec::TConorm(s) => tconorm(s, x, y),
        ConnectiveSpec::Copula(c) => copula(c, x, y),
        ConnectiveSpec::Implication(i) => implication(i, x, y),
        ConnectiveSpec::ThreePi => three_pi(&[x, y]),
    }
}

/// Left fold of an associative t-norm over a vector.
pub fn tnorm_fold(t: TNorm, x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut acc = check_unit(x[0])?;
    for &v in &x[1..] {
        acc = tnorm(t, acc, v)?;
    }
    Ok(acc)
}

/// Left fold of an associative t-conorm over a vector.
pub fn tconorm_fold(s: TConorm, x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut acc = check_unit(x[0])?;
    for &v in &x[1..] {
        acc = tconorm(s, acc, v)?;
    }
    Ok(acc)
}
