//! Numerov shooting solver for `-psi'' + |z| psi = lambda psi`, used as an
//! independent check on the Airy-zero spectrum.
#![allow(dead_code)]

const STEP: f64 = 1e-3;
const Z_END: f64 = 16.0;

/// `psi(Z_END)` for the half-line problem started at 0 with even or odd data.
fn shoot(lambda: f64, even: bool) -> f64 {
    let (p0, d0) = if even { (1.0, 0.0) } else { (0.0, 1.0) };
    let h = STEP;
    // Taylor start from psi'' = (z - lambda) psi
    let p2 = -lambda * p0;
    let p3 = p0 - lambda * d0;
    let p4 = lambda * lambda * p0 + 2.0 * d0;
    let p1 = p0 + h * d0 + h * h / 2.0 * p2 + h.powi(3) / 6.0 * p3 + h.powi(4) / 24.0 * p4;
    let f = |z: f64| z - lambda;
    let w = |z: f64| 1.0 - h * h * f(z) / 12.0;
    let (mut prev, mut cur) = (p0, p1);
    let steps = (Z_END / h).round() as usize;
    for n in 1..steps {
        let z = n as f64 * h;
        let next = (2.0 * cur * (1.0 + 5.0 * h * h * f(z) / 12.0) - prev * w(z - h)) / w(z + h);
        prev = cur;
        cur = next;
    }
    cur
}

/// First `count` eigenvalues, found by scanning for sign changes of the shot
/// endpoint and bisecting.
pub fn numerov_spectrum(count: usize) -> Vec<f64> {
    let mut out = Vec::new();
    for even in [true, false] {
        let mut found = 0;
        let mut lo = 0.0;
        let mut f_lo = shoot(lo, even);
        while found < count && lo < 12.0 {
            let hi = lo + 0.05;
            let f_hi = shoot(hi, even);
            if f_lo.signum() != f_hi.signum() {
                let (mut a, mut b, mut fa) = (lo, hi, f_lo);
                while b - a > 1e-12 {
                    let m = 0.5 * (a + b);
                    let fm = shoot(m, even);
                    if fm.signum() == fa.signum() {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                out.push(0.5 * (a + b));
                found += 1;
            }
            lo = hi;
            f_lo = f_hi;
        }
    }
    out.sort_by(f64::total_cmp);
    out.truncate(count);
    out
}
