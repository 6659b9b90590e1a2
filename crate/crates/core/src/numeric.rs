//! Floating-point evaluation of q-expansions with certified truncation bounds.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// `q = exp(2 pi i tau)`.
pub fn nome(tau: Complex64) -> Complex64 {
    (Complex64::i() * 2.0 * PI * tau).exp()
}

/// `sum_{n > terms} n^2 r^n` in closed form, `r = exp(-2 pi Im tau)`.
pub fn tail_sum(im_tau: f64, terms: usize) -> f64 {
    let r = (-2.0 * PI * im_tau).exp();
    let m = (terms + 1) as f64;
    let num = m * m - (2.0 * m * m - 2.0 * m - 1.0) * r + (m - 1.0) * (m - 1.0) * r * r;
    r.powf(m) * num / (1.0 - r).powi(3)
}

/// An upper bound for `sum_{n > terms} n^p r^n`, `r = exp(-2 pi Im tau)`.
pub fn tail_sum_power(im_tau: f64, terms: usize, p: i32) -> f64 {
    if p == 2 {
        return tail_sum(im_tau, terms);
    }
    let log_r = -2.0 * PI * im_tau;
    let r = log_r.exp();
    let rho = 0.5 * (1.0 + r);
    let mut sum = 0.0;
    let mut n = terms.max(1) as f64 + if terms == 0 { 0.0 } else { 1.0 };
    loop {
        let term = (p as f64 * n.ln() + n * log_r).exp();
        let ratio = ((n + 1.0) / n).powi(p) * r;
        // Ratios decrease in n, so the rest is dominated by a geometric series.
        if ratio <= rho {
            return sum + term / (1.0 - ratio);
        }
        sum += term;
        n += 1.0;
    }
}

/// `sum_{n=1}^{terms} a(n) q^n`.
pub fn eval_truncated(coeffs: &[BigInt], tau: Complex64, terms: usize) -> Complex64 {
    eval_derivative(coeffs, tau, terms, 0)
}

/// `sum_{n=1}^{terms} n^k a(n) q^n`, the k-th derivative up to `(2 pi i)^k`.
pub fn eval_derivative(coeffs: &[BigInt], tau: Complex64, terms: usize, k: i32) -> Complex64 {
    let q = nome(tau);
    let mut qn = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, a) in coeffs.iter().take(terms).enumerate() {
        qn *= q;
        acc += qn * a.to_f64().unwrap_or(f64::INFINITY) * ((i + 1) as f64).powi(k);
    }
    acc
}

/// Smallest `K >= 1` with `|a(n)| <= K n^2` over the known coefficients.
pub fn growth_constant(coeffs: &[BigInt]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| a.to_f64().unwrap_or(f64::INFINITY).abs() / ((i + 1) as f64).powi(2))
        .fold(1.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_tail_matches_direct_sum() {
        for &(im, terms) in &[(0.1, 50usize), (0.0073, 400), (0.5, 10), (1.0, 0)] {
            let r: f64 = (-2.0 * PI * im).exp();
            let direct: f64 = (terms + 1..terms + 200_000).map(|n| (n as f64).powi(2) * r.powi(n as i32)).sum();
            let closed = tail_sum(im, terms);
            assert!((closed - direct).abs() <= 1e-9 * direct.max(1e-300), "{im} {terms}: {closed} vs {direct}");
        }
    }

    #[test]
    fn power_tail_bounds_direct_sum() {
        for &(im, terms, p) in &[(0.1, 50usize, 3), (0.0073, 400, 4), (0.5, 10, 2), (0.02, 100, 0), (1.0, 0, 3)] {
            let r: f64 = (-2.0 * PI * im).exp();
            let direct: f64 = (terms + 1..terms + 200_000).map(|n| (n as f64).powi(p) * r.powi(n as i32)).sum();
            let bound = tail_sum_power(im, terms, p);
            assert!(bound >= direct * (1.0 - 1e-12) && bound <= 10.0 * direct, "{im} {terms} {p}: {bound} vs {direct}");
        }
    }

    #[test]
    fn tail_examples() {
        assert!(tail_sum(1.0, 50) < 1e-100);
        let fixed = 1.0 / (137f64).sqrt();
        assert!(tail_sum(fixed, 400) < 1e-6);
    }
}
