use std::fmt;
use std::sync::Arc;

use crate::expr::{parse_with, Constants, EvalError, Expr};

use super::SusyError;

/// Tail growth of `W` as `|z| -> infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GrowthClass {
    Logarithmic,
    Linear,
    SuperLinear,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthClass::Logarithmic => "logarithmic",
            GrowthClass::Linear => "linear",
            GrowthClass::SuperLinear => "super-linear",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Even,
    None,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Even => "even",
            Symmetry::None => "none",
        })
    }
}

/// A superpotential with its exact first and second derivatives.
#[derive(Debug, Clone)]
pub struct Superpotential {
    name: String,
    w: Arc<Expr>,
    w1: Arc<Expr>,
    w2: Arc<Expr>,
    growth: GrowthClass,
    symmetry: Symmetry,
}

const GROWTH_PROBE: f64 = 1e3;
const SYMMETRY_PROBES: [f64; 5] = [0.37, 1.1, 2.3, 4.7, 7.9];

impl Superpotential {
    /// Builds `W`, differentiates it twice and classifies its tails.
    pub fn new(name: impl Into<String>, w: Expr) -> Self {
        let w1 = w.derivative();
        let w2 = w1.derivative();
        let growth = classify_growth(&w);
        let symmetry = classify_symmetry(&w);
        Superpotential {
            name: name.into(),
            w: Arc::new(w),
            w1: Arc::new(w1),
            w2: Arc::new(w2),
            growth,
            symmetry,
        }
    }

    /// Parses `W` from text, binding identifiers against `constants`.
    pub fn parse(name: impl Into<String>, source: &str, constants: &Constants) -> Result<Self, SusyError> {
        Ok(Self::new(name, parse_with(source, constants)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn w_expr(&self) -> &Expr {
        &self.w
    }

    pub fn w1_expr(&self) -> &Expr {
        &self.w1
    }

    pub fn w2_expr(&self) -> &Expr {
        &self.w2
    }

    pub(crate) fn w_shared(&self) -> Arc<Expr> {
        Arc::clone(&self.w)
    }

    pub(crate) fn w1_shared(&self) -> Arc<Expr> {
        Arc::clone(&self.w1)
    }

    pub fn growth(&self) -> GrowthClass {
        self.growth
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn w(&self, z: f64) -> Result<f64, EvalError> {
        self.w.eval(z)
    }

    pub fn w1(&self, z: f64) -> Result<f64, EvalError> {
        self.w1.eval(z)
    }

    pub fn w2(&self, z: f64) -> Result<f64, EvalError> {
        self.w2.eval(z)
    }

    /// `V(z) = W'(z)^2 - W''(z)`.
    pub fn potential(&self, z: f64) -> Result<f64, EvalError> {
        let d1 = self.w1(z)?;
        Ok(d1 * d1 - self.w2(z)?)
    }
}

/// Largest `z <= GROWTH_PROBE` (halving) where `W(sign * z)` evaluates, with the value.
fn farthest_probe(w: &Expr, sign: f64) -> Option<(f64, f64)> {
    let mut z = GROWTH_PROBE;
    while z >= 10.0 {
        if let Ok(v) = w.eval(sign * z) {
            return Some((z, v));
        }
        z /= 2.0;
    }
    None
}

fn classify_side(w: &Expr, sign: f64) -> GrowthClass {
    let Some((far, w_far)) = farthest_probe(w, sign) else {
        return GrowthClass::Logarithmic;
    };
    let near = far / 10.0;
    let Ok(w_near) = w.eval(sign * near) else {
        return GrowthClass::Logarithmic;
    };
    // ratio W(z)/|z| at two scales a decade apart
    let r_far = w_far / far;
    let r_near = w_near / near;
    if r_far <= 0.0 {
        GrowthClass::Logarithmic
    } else if r_near <= 0.0 || r_far / r_near > 1.5 {
        GrowthClass::SuperLinear
    } else if r_far / r_near >= 2.0 / 3.0 {
        GrowthClass::Linear
    } else {
        GrowthClass::Logarithmic
    }
}

fn classify_growth(w: &Expr) -> GrowthClass {
    classify_side(w, 1.0).min(classify_side(w, -1.0))
}

fn classify_symmetry(w: &Expr) -> Symmetry {
    let even = SYMMETRY_PROBES.iter().all(|&z| match (w.eval(z), w.eval(-z)) {
        (Ok(a), Ok(b)) => (a - b).abs() <= 1e-12 * (1.0 + a.abs()),
        _ => false,
    });
    if even {
        Symmetry::Even
    } else {
        Symmetry::None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn sp(src: &str) -> Superpotential {
        Superpotential::new("t", parse(src).unwrap())
    }

    #[test]
    fn derivatives_are_attached() {
        let s = sp("-z^2/2 + z^4/4");
        for z in [-1.5, 0.0, 0.4, 2.0] {
            assert!((s.w1(z).unwrap() - (z.powi(3) - z)).abs() < 1e-13);
            assert!((s.w2(z).unwrap() - (3.0 * z * z - 1.0)).abs() < 1e-13);
            let v = 1.0 - 2.0 * z * z - 2.0 * z.powi(4) + z.powi(6);
            assert!((s.potential(z).unwrap() - v).abs() < 1e-12);
        }
    }

    #[test]
    fn growth_classes() {
        assert_eq!(sp("-z^2/2 + z^4/4").growth(), GrowthClass::SuperLinear);
        assert_eq!(sp("z^2/2").growth(), GrowthClass::SuperLinear);
        assert_eq!(sp("0.5*abs(z)").growth(), GrowthClass::Linear);
        assert_eq!(sp("0.868*ln(1 + z^2)").growth(), GrowthClass::Logarithmic);
        assert_eq!(sp("ln(1 - z^2/2 + z^4)/4").growth(), GrowthClass::Logarithmic);
        // rises on one side only: the weaker side wins
        assert_eq!(sp("z^3").growth(), GrowthClass::Logarithmic);
        assert_eq!(sp("-z^2").growth(), GrowthClass::Logarithmic);
    }

    #[test]
    fn symmetry_probe() {
        assert_eq!(sp("z^4 - z^2").symmetry(), Symmetry::Even);
        assert_eq!(sp("z^2 + 0.1*z").symmetry(), Symmetry::None);
        assert_eq!(sp("ln(z)").symmetry(), Symmetry::None);
    }
}
