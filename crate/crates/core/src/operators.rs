//! Exact action of the Cauchy–Fueter operator `∂ = ∂₀ + i∂₁ + j∂₂ + k∂₃`, its
//! conjugate `∂̄ = ∂₀ − i∂₁ − j∂₂ − k∂₃`, the Laplacian `Δ = ∂̄∂` and the Euler
//! operator on `(q, q̄)`-polynomials, plus finite-difference versions.
//!
//! With `Σ_l e_l x e_l = −x − 2x̄` one gets, for `n = a + b − 1`,
//!
//! ```text
//! ∂(q^a q̄^b) = 2b q^a q̄^{b−1} + 2 Σ_{t<b} q^t q̄^{n−t} − 2 Σ_{u=b}^{n} q^{n−u} q̄^u
//! ∂̄(q^a q̄^b) = 2a q^{a−1} q̄^b + 2 Σ_{u=b}^{n} q^{n−u} q̄^u − 2 Σ_{t<b} q^t q̄^{n−t}
//! ```

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::scalar::{rational, Rational, Scalar};
use crate::series::{QQbarPoly, RegularSeries, SliceSeries};

type Action = Vec<(u32, u32, i64)>;

fn d_closed(a: u32, b: u32, conj: bool) -> Action {
    let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    if a + b == 0 {
        return Vec::new();
    }
    let n = a + b - 1;
    let s = if conj { -2 } else { 2 };
    if conj {
        if a > 0 {
            *acc.entry((a - 1, b)).or_default() += 2 * i64::from(a);
        }
    } else if b > 0 {
        *acc.entry((a, b - 1)).or_default() += 2 * i64::from(b);
    }
    for t in 0..b {
        *acc.entry((t, n - t)).or_default() += s;
    }
    for u in b..=n {
        *acc.entry((n - u, u)).or_default() -= s;
    }
    acc.into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|((x, y), c)| (x, y, c))
        .collect()
}

/// Monomial actions of `∂` and `∂̄` up to a total degree, checked at build time
/// to satisfy `∂̄∂ = ∂∂̄`.
#[derive(Clone, Debug)]
pub struct OperatorTable {
    capacity: u32,
    d: Vec<Action>,
    dbar: Vec<Action>,
}

/// Integer action of `outer` on the image `inner`.
fn compose(outer: &[Action], inner: &Action) -> BTreeMap<(u32, u32), i64> {
    let mut acc: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for &(a, b, c) in inner {
        for &(x, y, k) in &outer[slot(a, b)] {
            *acc.entry((x, y)).or_default() += c * k;
        }
    }
    acc.retain(|_, c| *c != 0);
    acc
}

fn slot(a: u32, b: u32) -> usize {
    let h = (a + b) as usize;
    h * (h + 1) / 2 + b as usize
}

impl OperatorTable {
    pub const DEFAULT_CAPACITY: u32 = 64;

    pub fn new(capacity: u32) -> Self {
        let mut d = Vec::new();
        let mut dbar = Vec::new();
        for h in 0..=capacity {
            for b in 0..=h {
                d.push(d_closed(h - b, b, false));
                dbar.push(d_closed(h - b, b, true));
            }
        }
        let table = Self { capacity, d, dbar };
        for h in 1..=capacity {
            for b in 0..=h {
                let i = slot(h - b, b);
                let x = compose(&table.d, &table.dbar[i]);
                let y = compose(&table.dbar, &table.d[i]);
                assert_eq!(x, y, "operator table: ∂∂̄ ≠ ∂̄∂ on q^{} q̄^{}", h - b, b);
            }
        }
        table
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    fn apply<T: Scalar>(&self, which: &[Action], p: &QQbarPoly<T>) -> QQbarPoly<T> {
        let mut out = QQbarPoly::zero();
        for (a, b, c) in p.terms() {
            for &(x, y, k) in &which[slot(a, b)] {
                out.add_term(x, y, c.clone() * T::from_i64(k));
            }
        }
        out
    }

    fn check<T: Scalar>(&self, p: &QQbarPoly<T>) -> Result<()> {
        match p.degree() {
            Some(deg) if deg > self.capacity => Err(Error::CapacityExceeded { degree: deg, capacity: self.capacity }),
            _ => Ok(()),
        }
    }

    pub fn d_apply<T: Scalar>(&self, p: &QQbarPoly<T>) -> Result<QQbarPoly<T>> {
        self.check(p)?;
        Ok(self.apply(&self.d, p))
    }

    pub fn dbar_apply<T: Scalar>(&self, p: &QQbarPoly<T>) -> Result<QQbarPoly<T>> {
        self.check(p)?;
        Ok(self.apply(&self.dbar, p))
    }

    /// `Δ p = ∂̄∂ p`.
    pub fn laplacian_apply<T: Scalar>(&self, p: &QQbarPoly<T>) -> Result<QQbarPoly<T>> {
        self.check(p)?;
        Ok(self.apply(&self.dbar, &self.apply(&self.d, p)))
    }
}

impl Default for OperatorTable {
    fn default() -> Self {
        Self::new(Self::DEFAULT_CAPACITY)
    }
}

/// `∂(q^n) = −2 Σ_{k=1}^{n} q^{n−k} q̄^{k−1}`; zero for `n = 0` and `−2` for `n = 1`.
pub fn dirac_monomial(n: u32) -> QQbarPoly<Rational> {
    let mut p = QQbarPoly::zero();
    for k in 1..=n {
        p.add_term(n - k, k - 1, rational(-2, 1));
    }
    p
}

/// `Δ(q^n) = −4 Σ_{k=1}^{n−1} (n−k) q^{n−k−1} q̄^{k−1}`; zero for `n ≤ 1`.
pub fn fueter_monomial(n: u32) -> QQbarPoly<Rational> {
    let mut p = QQbarPoly::zero();
    for k in 1..n {
        p.add_term(n - k - 1, k - 1, rational(-4 * i64::from(n - k), 1));
    }
    p
}

/// Scales each monomial of total degree `h` by `h`.
pub fn euler_apply<T: Scalar>(p: &QQbarPoly<T>) -> QQbarPoly<T> {
    let mut out = QQbarPoly::zero();
    for (a, b, c) in p.terms() {
        out.add_term(a, b, c.clone() * T::from_i64(i64::from(a + b)));
    }
    out
}

/// Applies the Fueter map to `Σ q^k c_k`: `α_k = −2(k+1)(k+2) c_{k+2}`.
pub fn fueter_series<T: Scalar>(f: &SliceSeries<T>) -> RegularSeries<T> {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .skip(2)
        .map(|(n, c)| {
            let k = (n - 2) as i64;
            c.scale(&T::from_i64(-2 * (k + 1) * (k + 2)))
        })
        .collect();
    RegularSeries::new(coeffs)
}

/// Default finite-difference step.
pub const FD_STEP: f64 = 1e-4;

/// Fourth-order central difference along a direction `dir` in ℝ⁴.
pub fn directional_fd<F>(f: &F, q: &Quaternion<f64>, dir: &Quaternion<f64>, h: f64) -> Quaternion<f64>
where
    F: Fn(&Quaternion<f64>) -> Quaternion<f64>,
{
    let at = |s: f64| f(&(*q + *dir * (s * h)));
    (at(-2.0) - at(-1.0) * 8.0 + at(1.0) * 8.0 - at(2.0)) * (1.0 / (12.0 * h))
}

/// `∂f/∂x_axis` (axis 0 is the real part).
pub fn partial_fd<F>(f: &F, q: &Quaternion<f64>, axis: usize, h: f64) -> Quaternion<f64>
where
    F: Fn(&Quaternion<f64>) -> Quaternion<f64>,
{
    directional_fd(f, q, &Quaternion::zero().shifted(axis, 1.0), h)
}

/// Four-dimensional Laplacian with a five-point stencil per axis.
pub fn laplacian_fd<F>(f: F, q: &Quaternion<f64>, h: f64) -> Quaternion<f64>
where
    F: Fn(&Quaternion<f64>) -> Quaternion<f64>,
{
    let f0 = f(q);
    let mut acc = Quaternion::zero();
    for axis in 0..4 {
        let at = |s: f64| f(&q.shifted(axis, s * h));
        acc += (at(-2.0) + at(2.0)) * -1.0 + (at(-1.0) + at(1.0)) * 16.0 - f0 * 30.0;
    }
    acc * (1.0 / (12.0 * h * h))
}

fn units() -> [Quaternion<f64>; 4] {
    [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()]
}

/// `∂f = Σ e_l ∂_l f` with the units acting on the left.
pub fn cauchy_fueter_fd<F>(f: F, q: &Quaternion<f64>, h: f64) -> Quaternion<f64>
where
    F: Fn(&Quaternion<f64>) -> Quaternion<f64>,
{
    units()
        .iter()
        .enumerate()
        .fold(Quaternion::zero(), |acc, (l, e)| acc + *e * partial_fd(&f, q, l, h))
}

/// `∂̄f = ∂₀f − Σ e_l ∂_l f`.
pub fn conj_cauchy_fueter_fd<F>(f: F, q: &Quaternion<f64>, h: f64) -> Quaternion<f64>
where
    F: Fn(&Quaternion<f64>) -> Quaternion<f64>,
{
    units().iter().enumerate().fold(Quaternion::zero(), |acc, (l, e)| {
        let d = *e * partial_fd(&f, q, l, h);
        if l == 0 {
            acc + d
        } else {
            acc - d
        }
    })
}

/// `∂_x g + (∂_y g)·I` at `p = x + yI`: vanishes when `g` is a power series
/// with coefficients on the left, restricted to the slice `ℂ_I`.
pub fn slice_cr_residual<F>(g: F, p: Complex64, unit: &ImaginaryUnit<f64>, h: f64) -> Quaternion<f64>
where
    F: Fn(&Quaternion<f64>) -> Quaternion<f64>,
{
    let base = unit.embed(p);
    let dx = directional_fd(&g, &base, &Quaternion::one(), h);
    let dy = directional_fd(&g, &base, unit.as_quaternion(), h);
    dx + dy * *unit.as_quaternion()
}
