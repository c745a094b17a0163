//! Finite differences with Richardson extrapolation.

/// Central first derivative from steps `h`, `h/2`, `h/4`, eliminating the `h^2`
/// and `h^4` error terms.
pub fn richardson_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let (d0, d1, d2) = (d(h), d(h / 2.0), d(h / 4.0));
    let e1 = (4.0 * d1 - d0) / 3.0;
    let e2 = (4.0 * d2 - d1) / 3.0;
    (16.0 * e2 - e1) / 15.0
}

/// Levels in the second-derivative tableau.
const LEVELS: usize = 6;

/// Second derivative with an error estimate.
///
/// Central second differences at `h, h/2, ..., h/32` are extrapolated in a
/// tableau that removes `h^1, h^2, h^3, ...` in turn, so points where the function
/// is only `C^2` (a jump in the third derivative, as for `Ai(|z| - a)` at `z = 0`)
/// converge as well as smooth ones. The entry with the smallest estimated error
/// is returned, which stops the extrapolation once rounding noise dominates.
pub fn richardson_second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> (f64, f64) {
    let f0 = f(x);
    let mut table = [[0.0f64; LEVELS]; LEVELS];
    let mut best = (f64::NAN, f64::INFINITY);
    let mut step = h;
    for k in 0..LEVELS {
        table[k][0] = (f(x + step) - 2.0 * f0 + f(x - step)) / (step * step);
        let mut factor = 1.0;
        for j in 1..=k {
            factor *= 2.0;
            table[k][j] = table[k][j - 1] + (table[k][j - 1] - table[k - 1][j - 1]) / (factor - 1.0);
            let err = (table[k][j] - table[k][j - 1])
                .abs()
                .max((table[k][j] - table[k - 1][j - 1]).abs());
            if err < best.1 {
                best = (table[k][j], err);
            }
        }
        if k > 0 && (table[k][k] - table[k - 1][k - 1]).abs() >= 2.0 * best.1 && k >= 3 {
            break;
        }
        step /= 2.0;
    }
    if best.0.is_nan() {
        best = (table[0][0], f64::INFINITY);
    }
    best
}

/// Plain central second difference; second order in `h`.
pub fn central_second_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_derivative_of_exp() {
        for x in [-2.0, 0.0, 1.5] {
            let d = richardson_derivative(f64::exp, x, 1e-3);
            assert!((d - x.exp()).abs() < 1e-12 * x.exp().max(1.0));
        }
    }

    #[test]
    fn second_derivative_of_smooth_function() {
        for x in [-1.0, 0.2, 2.0] {
            let (d, _) = richardson_second_derivative(|t: f64| (t * t).sin(), x, 1e-2);
            let exact = 2.0 * (x * x).cos() - 4.0 * x * x * (x * x).sin();
            assert!((d - exact).abs() < 1e-8, "{x}: {d} vs {exact}");
        }
    }

    #[test]
    fn second_derivative_across_third_derivative_jump() {
        // f = |t|^3 / 6 + t^2 / 2: f'' = |t| + 1 is continuous, f''' jumps at 0
        let f = |t: f64| t.abs().powi(3) / 6.0 + t * t / 2.0;
        let (d, _) = richardson_second_derivative(f, 0.0, 1e-2);
        assert!((d - 1.0).abs() < 1e-8, "{d}");
        assert!((central_second_difference(f, 0.0, 1e-2) - 1.0).abs() > 1e-4);
    }
}
