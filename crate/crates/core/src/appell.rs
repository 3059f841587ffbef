//! The Appell family of Fueter-regular polynomials `Q_k`, the rescaled copies
//! `P_k` and `T_k`, and the regular exponential `Σ Q_k(s)/k!`.
//!
//! `Q_k(q) = Σ_j T^k_j q^{k−j} q̄^j` with `T^k_j = 2(k−j+1)/((k+1)(k+2))`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::operators::fueter_monomial;
use crate::quaternion::{slice_decompose, Quaternion};
use crate::scalar::{factorial, ln_factorial, rational, Rational};
use crate::series::QQbarPoly;
use crate::tail::{ln_abs, ratio_tail};

/// Rising factorial `a(a+1)…(a+n−1)`, with `(a)₀ = 1`.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..n {
        acc *= x.clone();
        x += Rational::one();
    }
    acc
}

/// `T^k_j = 2(k−j+1)/((k+1)(k+2))`.
pub fn t_coeff(k: u32, j: u32) -> Rational {
    assert!(j <= k, "T^k_j needs j <= k");
    let (k, j) = (i64::from(k), i64::from(j));
    rational(2 * (k - j + 1), (k + 1) * (k + 2))
}

/// `T^k_j` through Pochhammer symbols: `(k!/(3)_k)·(2)_{k−j}(1)_j/((k−j)! j!)`.
pub fn t_coeff_pochhammer(k: u32, j: u32) -> Rational {
    assert!(j <= k, "T^k_j needs j <= k");
    let fk = Rational::from_integer(factorial(k));
    let lead = fk / pochhammer(&rational(3, 1), k);
    let num = pochhammer(&rational(2, 1), k - j) * pochhammer(&Rational::one(), j);
    let den = Rational::from_integer(factorial(k - j) * factorial(j));
    lead * num / den
}

pub fn appell_q(k: u32) -> QQbarPoly<Rational> {
    let mut p = QQbarPoly::zero();
    for j in 0..=k {
        p.add_term(k - j, j, t_coeff(k, j));
    }
    p
}

/// `Q_k` through the Fueter map: `−f̃_{k+2} / (2(k+1)(k+2))`.
pub fn appell_q_via_fueter(k: u32) -> QQbarPoly<Rational> {
    let kk = i64::from(k);
    fueter_monomial(k + 2).scale(&rational(-1, 2 * (kk + 1) * (kk + 2)))
}

/// `P_k = f̃_{k+2}/(k+2)! = −(2/k!) Q_k`.
pub fn appell_p(k: u32) -> QQbarPoly<Rational> {
    let s = Rational::new(BigInt::from(-2), factorial(k));
    appell_q(k).scale(&s)
}

/// `(k+1)(k+2)/k!`, the square of the factor taking `Q_k` to `T_k`.
pub fn t_normalizer_sq(k: u32) -> Rational {
    let kk = i64::from(k);
    Rational::new(BigInt::from((kk + 1) * (kk + 2)), factorial(k))
}

/// `√((k+1)(k+2)/k!)`; switches to logs once `k!` leaves the `f64` range.
pub fn t_normalizer(k: u32) -> f64 {
    let kf = f64::from(k);
    if k <= 170 {
        let fact: f64 = (2..=k).map(f64::from).product();
        ((kf + 1.0) * (kf + 2.0) / fact).sqrt()
    } else {
        (0.5 * ((kf + 1.0).ln() + (kf + 2.0).ln() - ln_factorial(k as usize))).exp()
    }
}

/// `T_k = √((k+1)(k+2)/k!) Q_k`. The normalizer is irrational, so this is a float polynomial.
pub fn appell_t(k: u32) -> QQbarPoly<f64> {
    appell_q(k).to_f64().scale(&t_normalizer(k))
}

/// Which factor multiplies `Q_k` in [`appell_values`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppellScale {
    /// `Q_k`.
    Unit,
    /// `Q_k / k!`.
    InvFactorial,
    /// `Q_k / √(k!)`.
    InvSqrtFactorial,
}

impl AppellScale {
    fn step(self, k: usize) -> f64 {
        let kf = k as f64;
        match self {
            AppellScale::Unit => 1.0,
            AppellScale::InvFactorial => 1.0 / kf,
            AppellScale::InvSqrtFactorial => 1.0 / kf.sqrt(),
        }
    }
}

/// `σ_k Q_k(z)` for `k = 0..=n` on a complex slice, where `σ_k` is the selected scale.
///
/// Uses `S_k = Σ_j (k−j+1) z^{k−j} z̄^j = z S_{k−1} + A_k` and
/// `A_k = Σ_j z^{k−j} z̄^j = z̄ A_{k−1} + z^k`, so `Q_k = 2 S_k/((k+1)(k+2))`.
pub fn appell_slice_values(z: Complex64, n: usize, scale: AppellScale) -> Vec<Complex64> {
    let zb = z.conj();
    let mut out = Vec::with_capacity(n + 1);
    let mut e = Complex64::new(1.0, 0.0);
    let mut a = e;
    let mut s = e;
    out.push(Complex64::new(1.0, 0.0));
    for k in 1..=n {
        let c = scale.step(k);
        e = e * z * c;
        a = zb * a * c + e;
        s = z * s * c + a;
        let kf = k as f64;
        out.push(s * (2.0 / ((kf + 1.0) * (kf + 2.0))));
    }
    out
}

/// `σ_k Q_k(q)` for `k = 0..=n`.
pub fn appell_values(q: &Quaternion<f64>, n: usize, scale: AppellScale) -> Vec<Quaternion<f64>> {
    let d = slice_decompose(q);
    appell_slice_values(d.complex(), n, scale)
        .into_iter()
        .map(|v| d.embed(v))
        .collect()
}

/// `T_k(q)` for `k = 0..=n`.
pub fn t_values(q: &Quaternion<f64>, n: usize) -> Vec<Quaternion<f64>> {
    let d = slice_decompose(q);
    appell_slice_values(d.complex(), n, AppellScale::InvSqrtFactorial)
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let kf = k as f64;
            d.embed(v * ((kf + 1.0) * (kf + 2.0)).sqrt())
        })
        .collect()
}

/// `Σ_{k≤n} Q_k(s)/k!` and the bound `Σ_{k>n} |s|^k/k!` on what was dropped.
pub fn regular_exp(s: &Quaternion<f64>, n: usize) -> (Quaternion<f64>, f64) {
    let vals = appell_values(s, n, AppellScale::InvFactorial);
    let sum = pairwise_sum(&vals);
    let ls = ln_abs(s.abs());
    let tail = ratio_tail(|k| k as f64 * ls - ln_factorial(k), n);
    (sum, tail)
}

/// Pairwise summation in a fixed tree shape.
pub fn pairwise_sum(v: &[Quaternion<f64>]) -> Quaternion<f64> {
    match v.len() {
        0 => Quaternion::zero(),
        1 => v[0],
        n => {
            let (l, r) = v.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// Exact tables of `Q_k` and `P_k`, with float `T_k`, for `k ≤ max_degree`.
#[derive(Clone, Debug)]
pub struct AppellCache {
    max_degree: u32,
    q: Vec<QQbarPoly<Rational>>,
    p: Vec<QQbarPoly<Rational>>,
    t: Vec<QQbarPoly<f64>>,
    normalizers: Vec<f64>,
}

impl AppellCache {
    pub const DEFAULT_MAX_DEGREE: u32 = 64;

    pub fn new(max_degree: u32) -> Self {
        let q: Vec<_> = (0..=max_degree).map(appell_q).collect();
        let p = (0..=max_degree).map(appell_p).collect();
        let normalizers: Vec<f64> = (0..=max_degree).map(t_normalizer).collect();
        let t = q
            .iter()
            .zip(&normalizers)
            .map(|(qk, s)| qk.to_f64().scale(s))
            .collect();
        Self { max_degree, q, p, t, normalizers }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn q(&self, k: u32) -> &QQbarPoly<Rational> {
        &self.q[k as usize]
    }

    pub fn p(&self, k: u32) -> &QQbarPoly<Rational> {
        &self.p[k as usize]
    }

    pub fn t(&self, k: u32) -> &QQbarPoly<f64> {
        &self.t[k as usize]
    }

    pub fn t_coeff(&self, k: u32, j: u32) -> Rational {
        self.q[k as usize].coeff(k - j, j)
    }

    pub fn normalizer(&self, k: u32) -> f64 {
        self.normalizers[k as usize]
    }

    pub fn q_basis(&self) -> &[QQbarPoly<Rational>] {
        &self.q
    }
}

impl Default for AppellCache {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MAX_DEGREE)
    }
}

/// True when `Σ_j T^k_j = 1`.
pub fn t_coeffs_sum_to_one(k: u32) -> bool {
    let s = (0..=k).fold(Rational::zero(), |acc, j| acc + t_coeff(k, j));
    s.is_one()
}
