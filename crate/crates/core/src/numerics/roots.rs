//! Bracketing root finders and a golden-section maximizer.

fn opposite(a: f64, b: f64) -> bool {
    (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0)
}

/// Widens `[lo, hi]` about its midpoint by `factor` until `f` changes sign,
/// trying at most `max_iter` times.
pub fn expand_bracket<F: Fn(f64) -> f64>(
    f: &F,
    mut lo: f64,
    mut hi: f64,
    factor: f64,
    max_iter: usize,
) -> Option<(f64, f64)> {
    for _ in 0..=max_iter {
        if opposite(f(lo), f(hi)) {
            return Some((lo, hi));
        }
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo) * factor;
        lo = mid - half;
        hi = mid + half;
    }
    None
}

/// Bisects a sign-changing bracket down to width `xtol`, returning the final bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return (lo, lo);
    }
    if f(hi) == 0.0 {
        return (hi, hi);
    }
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return (mid, mid);
        }
        if opposite(f_lo, f_mid) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    (lo, hi)
}

/// One secant step through the bracket ends, clamped to the bracket.
pub fn secant_polish<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_hi == f_lo {
        return 0.5 * (lo + hi);
    }
    let x = hi - f_hi * (hi - lo) / (f_hi - f_lo);
    x.clamp(lo, hi)
}

/// Bracket, bisect to `xtol`, then polish.
pub fn find_root<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, xtol: f64) -> Option<f64> {
    if !opposite(f(lo), f(hi)) {
        return None;
    }
    let (a, b) = bisect(f, lo, hi, xtol);
    Some(secant_polish(f, a, b))
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, xtol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > xtol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if c >= d {
            break;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let f = |z: f64| z * z * z - z - 2.0;
        let r = find_root(&f, 1.0, 2.0, 1e-10).unwrap();
        assert!((r - 1.521_379_706_804_567_6).abs() < 1e-14);
        assert!(find_root(&f, 2.0, 3.0, 1e-10).is_none());
    }

    #[test]
    fn expands_until_sign_change() {
        let f = |z: f64| z - 5.0;
        let (lo, hi) = expand_bracket(&f, 0.0, 1.0, 3.0, 10).unwrap();
        assert!(lo <= 5.0 && hi >= 5.0);
        assert!(expand_bracket(&|z: f64| z * z + 1.0, -1.0, 1.0, 2.0, 5).is_none());
    }

    #[test]
    fn golden_finds_peak() {
        let f = |z: f64| -(z - 0.3).powi(2);
        assert!((golden_max(&f, -1.0, 2.0, 1e-10) - 0.3).abs() < 1e-9);
    }
}
