//! Composite Gauss–Legendre quadrature.
//!
//! Nodes and weights of the base rule are computed by Newton iteration on
//! the Legendre polynomial; composite panels refine until two successive
//! panel counts agree.

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-based initial guess, polished by Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// ∫_a^b f(x) dx by `panels` composite panels of the n-point rule.
pub fn integrate_panels(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    rule: &[(f64, f64)],
    panels: usize,
) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for &(x, w) in rule {
            acc += w * f(mid + half * x) * half;
        }
    }
    acc
}

/// Doubles the panel count until two successive levels agree within
/// `rel_tol` relative or `abs_tol` absolute. Returns the refined value and
/// the final panel count, or `None` when `max_panels` is exceeded.
pub fn integrate_adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Option<(f64, usize)> {
    let rule = gauss_legendre(8);
    let mut panels = 4;
    let mut prev = integrate_panels(f, a, b, &rule, panels);
    loop {
        panels *= 2;
        if panels > max_panels {
            return None;
        }
        let next = integrate_panels(f, a, b, &rule, panels);
        if (next - prev).abs() <= rel_tol * next.abs().max(1e-300) + abs_tol {
            return Some((next, panels));
        }
        prev = next;
    }
}

/// C∞ compactly supported bump exp(−1/(1−u²)) rescaled to [lo, hi],
/// identically zero outside.
pub fn smooth_bump(x: f64, lo: f64, hi: f64) -> f64 {
    let u = (2.0 * x - (lo + hi)) / (hi - lo);
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}
