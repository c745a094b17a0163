//! Single-variable expression trees for superpotentials.
//!
//! Expressions are parsed from text ([`parse`], [`parse_with`]), evaluated at a
//! real point ([`Expr::eval`]) and differentiated exactly ([`Expr::derivative`]).
//! `x` and `z` are both accepted as the variable name.

mod diff;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::airy;

pub use parse::{parse, parse_with, ParseError, ParseErrorKind};

/// Builtin unary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Ln,
    Exp,
    Abs,
    Sign,
    AiryAi,
    AiryAiPrime,
}

impl Func {
    pub const ALL: [Func; 6] = [
        Func::Ln,
        Func::Exp,
        Func::Abs,
        Func::Sign,
        Func::AiryAi,
        Func::AiryAiPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Ln => "ln",
            Func::Exp => "exp",
            Func::Abs => "abs",
            Func::Sign => "sign",
            Func::AiryAi => "airy_ai",
            Func::AiryAiPrime => "airy_ai_prime",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Applies the function; `sign(0) = 0`.
    pub fn apply(self, u: f64) -> f64 {
        match self {
            Func::Ln => u.ln(),
            Func::Exp => u.exp(),
            Func::Abs => u.abs(),
            Func::Sign => {
                if u > 0.0 {
                    1.0
                } else if u < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
            Func::AiryAi => airy::airy_ai(u),
            Func::AiryAiPrime => airy::airy_ai_prime(u),
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named constants bound at parse time (for example `lambda0`).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Constants(BTreeMap<String, f64>);

impl Constants {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Self {
        self.insert(name, value);
        self
    }

    pub fn insert(&mut self, name: impl Into<String>, value: f64) {
        self.0.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// Expression tree in the single variable `z`.
///
/// Exponents of [`Expr::Pow`] are numeric constants; there is no way to build a
/// `z`-dependent exponent.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// A caller-supplied constant, kept by name for display.
    Named(String, f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Evaluation failure, naming the subexpression that produced it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("logarithm of non-positive value {value:e} in `{subexpr}` at z = {z}")]
    LogDomain { subexpr: String, value: f64, z: f64 },
    #[error("division by zero in `{subexpr}` at z = {z}")]
    DivisionByZero { subexpr: String, z: f64 },
    #[error("non-integer power of negative base in `{subexpr}` at z = {z}")]
    PowDomain { subexpr: String, z: f64 },
    #[error("non-finite result in `{subexpr}` at z = {z}")]
    NonFinite { subexpr: String, z: f64 },
}

impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn powf(self, exponent: f64) -> Expr {
        Expr::Pow(Box::new(self), exponent)
    }

    /// Evaluates the expression at `z`.
    ///
    /// Never returns NaN: every domain violation is reported as an [`EvalError`].
    pub fn eval(&self, z: f64) -> Result<f64, EvalError> {
        let value = match self {
            Expr::Const(c) | Expr::Named(_, c) => *c,
            Expr::Var => z,
            Expr::Add(a, b) => a.eval(z)? + b.eval(z)?,
            Expr::Sub(a, b) => a.eval(z)? - b.eval(z)?,
            Expr::Mul(a, b) => a.eval(z)? * b.eval(z)?,
            Expr::Div(a, b) => {
                let num = a.eval(z)?;
                let den = b.eval(z)?;
                if den == 0.0 {
                    return Err(EvalError::DivisionByZero {
                        subexpr: self.to_string(),
                        z,
                    });
                }
                num / den
            }
            Expr::Pow(base, p) => {
                let b = base.eval(z)?;
                if b == 0.0 && *p < 0.0 {
                    return Err(EvalError::DivisionByZero {
                        subexpr: self.to_string(),
                        z,
                    });
                }
                if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
                    b.powi(*p as i32)
                } else if b < 0.0 {
                    return Err(EvalError::PowDomain {
                        subexpr: self.to_string(),
                        z,
                    });
                } else {
                    b.powf(*p)
                }
            }
            Expr::Neg(a) => -a.eval(z)?,
            Expr::Call(f, arg) => {
                let u = arg.eval(z)?;
                if *f == Func::Ln && u <= 0.0 {
                    return Err(EvalError::LogDomain {
                        subexpr: self.to_string(),
                        value: u,
                        z,
                    });
                }
                f.apply(u)
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(EvalError::NonFinite {
                subexpr: self.to_string(),
                z,
            })
        }
    }

    /// Exact derivative with respect to `z`. See [`diff`] for the rules.
    pub fn derivative(&self) -> Expr {
        diff::differentiate(self)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Named(..) | Expr::Var => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.size() + b.size()
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Call(_, a) => 1 + a.size(),
        }
    }

    /// Returns true if the tree references the variable.
    pub fn depends_on_var(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Named(..) => false,
            Expr::Var => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.depends_on_var() || b.depends_on_var()
            }
            Expr::Pow(a, _) | Expr::Neg(a) | Expr::Call(_, a) => a.depends_on_var(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(c) if *c < 0.0 || c.is_sign_negative() => 3,
            _ => 5,
        }
    }
}

/// Free-function form of [`Expr::derivative`].
pub fn differentiate(e: &Expr) -> Expr {
    diff::differentiate(e)
}

/// Free-function form of [`Expr::eval`].
pub fn evaluate(e: &Expr, z: f64) -> Result<f64, EvalError> {
    e.eval(z)
}

fn fmt_number(v: f64) -> String {
    // `{:?}` is the shortest representation that parses back to the same f64
    let s = format!("{v:?}");
    s.strip_suffix(".0").map(str::to_owned).unwrap_or(s)
}

struct Child<'a>(&'a Expr, u8);

impl fmt::Display for Child<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => f.write_str(&fmt_number(*c)),
            Expr::Named(name, _) => f.write_str(name),
            Expr::Var => f.write_str("z"),
            Expr::Add(a, b) => write!(f, "{} + {}", Child(a, 1), Child(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", Child(a, 1), Child(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Child(a, 2), Child(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", Child(a, 2), Child(b, 3)),
            Expr::Pow(a, p) => write!(f, "{}^{}", Child(a, 5), fmt_number(*p)),
            Expr::Neg(a) => write!(f, "-{}", Child(a, 3)),
            Expr::Call(func, a) => write!(f, "{func}({a})"),
        }
    }
}
