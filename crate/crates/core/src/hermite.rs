//! Hermite polynomials and functions in the physicists' convention:
//! `h_n(x) = H_n(x) e^{−x²/2}`, `‖h_n‖² = 2ⁿ n! √π`, `ξ_n = h_n / ‖h_n‖`.

use std::f64::consts::PI;

use crate::scalar::ln_factorial;

/// Cramér's constant: `|ξ_n(x)| ≤ CRAMER · π^{−1/4}` for all `n` and real `x`.
pub const CRAMER: f64 = 1.086_435;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    pub max_index: usize,
}

impl HermiteBasis {
    pub fn new(max_index: usize) -> Self {
        Self { max_index }
    }

    /// `[H_0(x), …, H_max(x)]` by `H_{n+1} = 2x H_n − 2n H_{n−1}`.
    pub fn polynomials(&self, x: f64) -> Vec<f64> {
        hermite_polynomials(self.max_index, x)
    }

    /// `[h_0(x), …, h_max(x)]`.
    pub fn functions(&self, x: f64) -> Vec<f64> {
        let e = (-0.5 * x * x).exp();
        self.polynomials(x).into_iter().map(|h| h * e).collect()
    }

    /// `[ξ_0(x), …, ξ_max(x)]`, from the orthonormal recurrence.
    pub fn orthonormal(&self, x: f64) -> Vec<f64> {
        orthonormal_functions(self.max_index, x)
    }

    pub fn norm_sq(n: usize) -> f64 {
        hermite_norm_sq(n)
    }
}

pub fn hermite_polynomials(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(2.0 * x);
    }
    for k in 1..n {
        let next = 2.0 * x * out[k] - 2.0 * k as f64 * out[k - 1];
        out.push(next);
    }
    out
}

/// `‖h_n‖² = 2ⁿ n! √π`.
pub fn hermite_norm_sq(n: usize) -> f64 {
    (n as f64 * 2f64.ln() + ln_factorial(n)).exp() * PI.sqrt()
}

/// `ξ_n(x)` for `n = 0..=max`:
/// `ξ_0 = π^{−1/4} e^{−x²/2}`, `ξ_{n+1} = √(2/(n+1)) x ξ_n − √(n/(n+1)) ξ_{n−1}`.
pub fn orthonormal_functions(max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if max >= 1 {
        out.push(2f64.sqrt() * x * out[0]);
    }
    for n in 1..max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_hermite_nodes;

    #[test]
    fn recurrence_values() {
        let h = hermite_polynomials(4, 0.5);
        assert_eq!(h[0], 1.0);
        assert_eq!(h[1], 1.0);
        assert!((h[2] - (4.0 * 0.25 - 2.0)).abs() < 1e-15);
        assert!((h[3] - (8.0 * 0.125 - 12.0 * 0.5)).abs() < 1e-15);
        assert!((h[4] - (16.0 * 0.0625 - 48.0 * 0.25 + 12.0)).abs() < 1e-14);
        assert_eq!(hermite_polynomials(0, 3.0), vec![1.0]);
    }

    #[test]
    fn gram_matrix_by_gauss_hermite() {
        let (x, w) = gauss_hermite_nodes(40);
        let hb = HermiteBasis::new(20);
        let vals: Vec<Vec<f64>> = x.iter().map(|&t| hb.polynomials(t)).collect();
        for m in 0..=20 {
            for n in 0..=20 {
                let g: f64 = vals.iter().zip(&w).map(|(v, wi)| wi * v[m] * v[n]).sum();
                let exact = if m == n { HermiteBasis::norm_sq(n) } else { 0.0 };
                let scale = (HermiteBasis::norm_sq(m) * HermiteBasis::norm_sq(n)).sqrt();
                assert!((g - exact).abs() <= 1e-10 * scale, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn orthonormal_matches_normalized_functions() {
        let hb = HermiteBasis::new(25);
        for &x in &[-3.1, -0.4, 0.0, 1.7, 4.2] {
            let xi = hb.orthonormal(x);
            let h = hb.functions(x);
            for n in 0..=25 {
                let v = h[n] / HermiteBasis::norm_sq(n).sqrt();
                assert!((xi[n] - v).abs() < 1e-13, "x = {x}, n = {n}");
            }
        }
    }

    #[test]
    fn cramer_bound() {
        let bound = CRAMER * PI.powf(-0.25);
        for i in -200..=200 {
            let x = f64::from(i) * 0.05;
            assert!(orthonormal_functions(60, x).iter().all(|v| v.abs() <= bound));
        }
    }
}
