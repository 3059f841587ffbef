//! Truncation-error estimates for positive series.

/// Bounds `Σ_{k>n} t_k` for a positive series whose consecutive ratios are
/// non-increasing from `k = n+1` on, given `ln t_k`.
///
/// Returns `t_{n+1} / (1 − t_{n+2}/t_{n+1})`, or `+∞` when that ratio is `≥ 1`.
pub fn ratio_tail(log_term: impl Fn(usize) -> f64, n: usize) -> f64 {
    let l1 = log_term(n + 1);
    if l1 == f64::NEG_INFINITY {
        return 0.0;
    }
    let l2 = log_term(n + 2);
    let ratio = (l2 - l1).exp();
    if !(ratio < 1.0) {
        return f64::INFINITY;
    }
    l1.exp() / (1.0 - ratio)
}

/// `ln(x)` that maps `0` to `−∞` without a NaN for negative zero.
pub fn ln_abs(x: f64) -> f64 {
    if x == 0.0 {
        f64::NEG_INFINITY
    } else {
        x.abs().ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ln_factorial;

    #[test]
    fn exponential_tail_is_an_upper_bound() {
        let x: f64 = 2.5;
        let n = 12;
        let bound = ratio_tail(|k| k as f64 * x.ln() - ln_factorial(k), n);
        let exact: f64 = (n + 1..200)
            .map(|k| (k as f64 * x.ln() - ln_factorial(k)).exp())
            .sum();
        assert!(bound >= exact && bound < 1.5 * exact);
    }

    #[test]
    fn geometric_and_degenerate() {
        let b = ratio_tail(|k| k as f64 * 0.5f64.ln(), 3);
        assert!((b - 0.5f64.powi(3)).abs() < 1e-15);
        assert_eq!(ratio_tail(|k| k as f64 * ln_abs(0.0), 3), 0.0);
        assert_eq!(ratio_tail(|k| k as f64 * 1.5f64.ln(), 3), f64::INFINITY);
    }
}
