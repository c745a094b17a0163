//! Structural differentiation.
//!
//! Rules for the builtins:
//!
//! | f(u)               | f'(u)                 |
//! |--------------------|-----------------------|
//! | `ln u`             | `1/u`                 |
//! | `exp u`            | `exp u`               |
//! | `abs u`            | `sign u`              |
//! | `sign u`           | `0`                   |
//! | `airy_ai u`        | `airy_ai_prime u`     |
//! | `airy_ai_prime u`  | `u * airy_ai u`       |
//!
//! `sign` has zero derivative everywhere (the weak-derivative reading of `abs`).
//! Besides trivial `0`/`1` folding, a product `sign(u) * sign(u)` is folded to `1`.
//! The two agree except where `u = 0`, and there the folded form is the continuous
//! extension: without it the second derivative of `f(abs(z))` would drop the
//! `f''` term at `z = 0`. Results are otherwise unsimplified.

use super::{Expr, Func};

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Const(c) if *c == 0.0)
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Const(c) if *c == 1.0)
}

fn add(a: Expr, b: Expr) -> Expr {
    match (is_zero(&a), is_zero(&b)) {
        (true, _) => b,
        (_, true) => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (is_zero(&a), is_zero(&b)) {
        (_, true) => a,
        (true, _) => Expr::Neg(Box::new(b)),
        _ => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

fn is_sign(e: &Expr) -> bool {
    matches!(e, Expr::Call(Func::Sign, _))
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_sign(&b) {
        if a == b {
            return Expr::Const(1.0);
        }
        if let Expr::Mul(p, q) = &a {
            if **q == b {
                return (**p).clone();
            }
        }
    }
    if is_zero(&a) || is_zero(&b) {
        Expr::Const(0.0)
    } else if is_one(&a) {
        b
    } else if is_one(&b) {
        a
    } else {
        Expr::Mul(Box::new(a), Box::new(b))
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        Expr::Const(0.0)
    } else if is_one(&b) {
        a
    } else {
        Expr::Div(Box::new(a), Box::new(b))
    }
}

fn neg(a: Expr) -> Expr {
    if is_zero(&a) {
        Expr::Const(0.0)
    } else {
        Expr::Neg(Box::new(a))
    }
}

/// Derivative of the outer function evaluated at `u`.
fn outer_derivative(f: Func, u: &Expr) -> Expr {
    match f {
        Func::Ln => div(Expr::Const(1.0), u.clone()),
        Func::Exp => Expr::call(Func::Exp, u.clone()),
        Func::Abs => Expr::call(Func::Sign, u.clone()),
        Func::Sign => Expr::Const(0.0),
        Func::AiryAi => Expr::call(Func::AiryAiPrime, u.clone()),
        Func::AiryAiPrime => mul(u.clone(), Expr::call(Func::AiryAi, u.clone())),
    }
}

pub(super) fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Named(..) => Expr::Const(0.0),
        Expr::Var => Expr::Const(1.0),
        Expr::Add(a, b) => add(differentiate(a), differentiate(b)),
        Expr::Sub(a, b) => sub(differentiate(a), differentiate(b)),
        Expr::Mul(a, b) => add(
            mul(differentiate(a), (**b).clone()),
            mul((**a).clone(), differentiate(b)),
        ),
        Expr::Div(a, b) => {
            let da = differentiate(a);
            let db = differentiate(b);
            if is_zero(&db) {
                return div(da, (**b).clone());
            }
            div(
                sub(mul(da, (**b).clone()), mul((**a).clone(), db)),
                Expr::Pow(b.clone(), 2.0),
            )
        }
        Expr::Pow(a, p) => {
            let da = differentiate(a);
            if *p == 0.0 {
                return Expr::Const(0.0);
            }
            let inner = if *p == 1.0 {
                Expr::Const(1.0)
            } else if *p == 2.0 {
                (**a).clone()
            } else {
                Expr::Pow(a.clone(), p - 1.0)
            };
            mul(mul(Expr::Const(*p), inner), da)
        }
        Expr::Neg(a) => neg(differentiate(a)),
        Expr::Call(f, u) => mul(outer_derivative(*f, u), differentiate(u)),
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::{parse, parse_with, Constants};

    fn assert_same_values(a: &str, b: &str, points: &[f64]) {
        let da = parse(a).unwrap().derivative();
        let eb = parse(b).unwrap();
        for &z in points {
            let (x, y) = (da.eval(z).unwrap(), eb.eval(z).unwrap());
            assert!((x - y).abs() <= 1e-13 * (1.0 + y.abs()), "{a} at {z}: {x} vs {y}");
        }
    }

    #[test]
    fn polynomial() {
        assert_same_values("-z^2/2 + z^4/4", "-z + z^3", &[-2.0, -0.3, 0.0, 0.7, 3.0]);
    }

    #[test]
    fn chain_rule_log() {
        assert_same_values("0.7*ln(1 + z^2)", "2*0.7*z/(1 + z^2)", &[-2.0, 0.0, 0.5, 4.0]);
    }

    #[test]
    fn abs_uses_sign() {
        let d = parse("abs(z)").unwrap().derivative();
        assert_eq!(d.eval(-2.0).unwrap(), -1.0);
        assert_eq!(d.eval(0.0).unwrap(), 0.0);
        assert_eq!(d.eval(3.0).unwrap(), 1.0);
        let d2 = d.derivative();
        assert_eq!(d2.eval(1.0).unwrap(), 0.0);
    }

    #[test]
    fn airy_rules_follow_the_airy_equation() {
        // (Ai')' = u Ai  with u = 2z gives d/dz Ai'(2z) = 2 * 2z * Ai(2z)
        let d = parse("airy_ai_prime(2*z)").unwrap().derivative();
        for z in [-1.3, 0.2, 0.9] {
            let expected = 2.0 * 2.0 * z * crate::airy::airy_ai(2.0 * z);
            assert!((d.eval(z).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn deterministic_output() {
        let consts = Constants::new().with("lambda0", 1.0187929716474710);
        let w = parse_with("-ln(airy_ai(abs(z) - lambda0))", &consts).unwrap();
        assert_eq!(w.derivative(), w.derivative());
        assert_eq!(w.derivative().derivative(), w.derivative().derivative());
    }

    #[test]
    fn division_by_constant_stays_simple() {
        let d = parse("z^4/4").unwrap().derivative();
        assert_eq!(d.to_string(), "4*z^3/4");
    }
}
