//! Deterministic Gaussian quadrature: Gauss–Hermite on the real line, tensor
//! Gauss–Hermite on a slice plane and on ℝ⁴, and polar rules on the unit disk
//! and the right half-disk of a slice.
//!
//! Nodes come from the Golub–Welsch eigenvalue problem and are then refined by
//! Newton steps on the three-term recurrence, so weights are accurate to a few
//! ulps even at order 100+.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};

/// Largest node count `r4_gauss` will build.
pub const R4_NODE_CAP: usize = 1_000_000;

/// Rules with at least this many nodes are evaluated in parallel.
const PARALLEL_THRESHOLD: usize = 4096;

/// Integration domain and measure of a [`QuadratureRule`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// `∫_ℝ f(x) e^{−x²} dx`.
    RealLineGauss,
    /// `(1/π) ∫_{ℂ_I} f(p) e^{−|p|²} dλ_I(p)`.
    SliceGauss(ImaginaryUnit<f64>),
    /// `(1/π) ∫_{|p|<1} f(p) dλ_I(p)` on ℂ_I.
    UnitDisk(ImaginaryUnit<f64>),
    /// `(1/π) ∫_{|p|<1, Re p>0} f(p) dλ_I(p)` on ℂ_I.
    HalfDisk(ImaginaryUnit<f64>),
    /// `(1/π²) ∫_ℍ f(q) e^{−|q|²} dλ(q)`.
    R4Gauss,
}

impl Domain {
    pub fn unit(&self) -> Option<&ImaginaryUnit<f64>> {
        match self {
            Domain::SliceGauss(u) | Domain::UnitDisk(u) | Domain::HalfDisk(u) => Some(u),
            _ => None,
        }
    }
}

/// Nodes and positive weights. Planar rules also keep each node as a complex
/// number `x + iy` standing for `x + yI` on their slice.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    domain: Domain,
    orders: (usize, usize),
    nodes: Vec<Quaternion<f64>>,
    planar: Vec<Complex64>,
    weights: Vec<f64>,
}

/// A quadrature value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<V> {
    pub value: V,
    pub error: f64,
}

/// Values a rule can sum.
pub trait QuadValue: Copy + Send + Sync {
    fn zero() -> Self;
    fn add(self, o: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn norm(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        <Complex64 as Zero>::zero()
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
}

impl QuadValue for Quaternion<f64> {
    fn zero() -> Self {
        <Quaternion<f64> as Zero>::zero()
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

/// Sum in a fixed binary tree, independent of thread count.
pub fn pairwise<V: QuadValue>(v: &[V]) -> V {
    match v.len() {
        0 => V::zero(),
        1 => v[0],
        2..=8 => v.iter().skip(1).fold(v[0], |acc, x| acc.add(*x)),
        n => {
            let (l, r) = v.split_at(n / 2);
            pairwise(l).add(pairwise(r))
        }
    }
}

fn tridiagonal_eigenvalues(off: &[f64]) -> Vec<f64> {
    let n = off.len() + 1;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (k, &b) in off.iter().enumerate() {
        m[(k, k + 1)] = b;
        m[(k + 1, k)] = b;
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Makes nodes exactly antisymmetric and weights symmetric.
fn symmetrize(x: &mut [f64], w: &mut [f64]) {
    let n = x.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let a = 0.5 * (x[j] - x[i]);
        let b = 0.5 * (w[i] + w[j]);
        x[i] = -a;
        x[j] = a;
        w[i] = b;
        w[j] = b;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
}

/// Orthonormal Hermite recurrence at `x`: returns `(p_n, p_{n−1})`.
fn hermite_orthonormal_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p1 = PI.powf(-0.25);
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = x * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
    }
    (p1, p2)
}

/// Gauss–Hermite nodes and weights for `e^{−x²}` on ℝ.
pub fn gauss_hermite_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut x = tridiagonal_eigenvalues(&off);
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for (xi, wi) in x.iter_mut().zip(w.iter_mut()) {
        let mut pp = 1.0;
        for _ in 0..100 {
            let (p, pm1) = hermite_orthonormal_pair(n, *xi);
            pp = (2.0 * nf).sqrt() * pm1;
            let dx = p / pp;
            *xi -= dx;
            if dx.abs() <= 1e-15 * xi.abs().max(1.0) {
                let (_, pm1) = hermite_orthonormal_pair(n, *xi);
                pp = (2.0 * nf).sqrt() * pm1;
                break;
            }
        }
        *wi = 2.0 / (pp * pp);
    }
    symmetrize(&mut x, &mut w);
    (x, w)
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = ((2.0 * jf - 1.0) * x * p2 - (jf - 1.0) * p3) / jf;
    }
    (p1, p2)
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let kf = k as f64;
            kf / (4.0 * kf * kf - 1.0).sqrt()
        })
        .collect();
    let mut x = tridiagonal_eigenvalues(&off);
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for (xi, wi) in x.iter_mut().zip(w.iter_mut()) {
        let deriv = |x: f64| {
            let (p, pm1) = legendre_pair(n, x);
            (p, nf * (x * p - pm1) / (x * x - 1.0))
        };
        for _ in 0..100 {
            let (p, pp) = deriv(*xi);
            let dx = p / pp;
            *xi -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, pp) = deriv(*xi);
        *wi = 2.0 / ((1.0 - *xi * *xi) * pp * pp);
    }
    symmetrize(&mut x, &mut w);
    (x, w)
}

fn check_order(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what}: order must be at least 1")));
    }
    Ok(())
}

impl QuadratureRule {
    fn planar(domain: Domain, orders: (usize, usize), unit: &ImaginaryUnit<f64>, pts: Vec<(Complex64, f64)>) -> Self {
        let (planar, weights): (Vec<_>, Vec<_>) = pts.into_iter().unzip();
        let nodes = planar.iter().map(|z| unit.embed(*z)).collect();
        Self { domain, orders, nodes, planar, weights }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Order parameters the rule was built with (second is 0 when unused).
    pub fn orders(&self) -> (usize, usize) {
        self.orders
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn nodes(&self) -> &[Quaternion<f64>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Planar nodes as complex numbers; empty for `R4Gauss`.
    pub fn planar_nodes(&self) -> &[Complex64] {
        &self.planar
    }

    pub fn weight_sum(&self) -> f64 {
        pairwise(&self.weights)
    }

    /// The same family of rule with every order halved (at least 1).
    pub fn coarsened(&self) -> Self {
        let h = |n: usize| (n / 2).max(1);
        let (a, b) = self.orders;
        let built = match &self.domain {
            Domain::RealLineGauss => gauss_hermite(h(a)),
            Domain::SliceGauss(u) => slice_gauss(u, h(a)),
            Domain::UnitDisk(u) => disk_rule(u, h(a), h(b)),
            Domain::HalfDisk(u) => half_disk_rule(u, h(a), h(b)),
            Domain::R4Gauss => r4_gauss(h(a)),
        };
        built.expect("halving a valid order stays valid")
    }

    fn weighted_terms<V, F>(&self, f: F) -> Vec<V>
    where
        V: QuadValue,
        F: Fn(usize) -> V + Sync,
    {
        if self.len() >= PARALLEL_THRESHOLD {
            (0..self.len()).into_par_iter().map(|i| f(i).scale(self.weights[i])).collect()
        } else {
            (0..self.len()).map(|i| f(i).scale(self.weights[i])).collect()
        }
    }

    /// `Σ w_i f(node_i)`.
    pub fn integrate<V, F>(&self, f: F) -> V
    where
        V: QuadValue,
        F: Fn(&Quaternion<f64>) -> V + Sync,
    {
        pairwise(&self.weighted_terms(|i| f(&self.nodes[i])))
    }

    /// `Σ w_i f(z_i)` over planar nodes in complex form.
    pub fn integrate_planar<V, F>(&self, f: F) -> V
    where
        V: QuadValue,
        F: Fn(Complex64) -> V + Sync,
    {
        assert!(!self.planar.is_empty(), "rule has no planar nodes");
        pairwise(&self.weighted_terms(|i| f(self.planar[i])))
    }

    /// Integral together with `|I_n − I_{n/2}| + 64ε Σ|w f|`.
    pub fn integrate_with_estimate<V, F>(&self, f: F) -> Estimate<V>
    where
        V: QuadValue + std::ops::Sub<Output = V>,
        F: Fn(&Quaternion<f64>) -> V + Sync,
    {
        let terms = self.weighted_terms(|i| f(&self.nodes[i]));
        let value = pairwise(&terms);
        let abs: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
        let roundoff = 64.0 * f64::EPSILON * pairwise(&abs);
        let coarse: V = self.coarsened().integrate(&f);
        Estimate { value, error: (value - coarse).norm() + roundoff }
    }

    /// Like [`Self::integrate_with_estimate`], failing when the estimate exceeds `tol`.
    pub fn integrate_checked<V, F>(&self, f: F, tol: f64) -> Result<Estimate<V>>
    where
        V: QuadValue + std::ops::Sub<Output = V>,
        F: Fn(&Quaternion<f64>) -> V + Sync,
    {
        let e = self.integrate_with_estimate(f);
        if !(e.error <= tol) {
            return Err(Error::QuadratureInsufficient { estimate: e.error, tolerance: tol });
        }
        Ok(e)
    }
}

/// `n`-point Gauss–Hermite rule for `e^{−x²}`; nodes are real quaternions.
pub fn gauss_hermite(n: usize) -> Result<QuadratureRule> {
    check_order(n, "gauss_hermite")?;
    let (x, w) = gauss_hermite_nodes(n);
    Ok(QuadratureRule {
        domain: Domain::RealLineGauss,
        orders: (n, 0),
        nodes: x.iter().map(|&t| Quaternion::real(t)).collect(),
        planar: x.iter().map(|&t| Complex64::new(t, 0.0)).collect(),
        weights: w,
    })
}

/// `n × n` tensor Gauss–Hermite rule on ℂ_I for `(1/π) e^{−|p|²} dλ_I`.
pub fn slice_gauss(unit: &ImaginaryUnit<f64>, n: usize) -> Result<QuadratureRule> {
    check_order(n, "slice_gauss")?;
    let (x, w) = gauss_hermite_nodes(n);
    let mut pts = Vec::with_capacity(n * n);
    for (xa, wa) in x.iter().zip(&w) {
        for (xb, wb) in x.iter().zip(&w) {
            pts.push((Complex64::new(*xa, *xb), wa * wb / PI));
        }
    }
    Ok(QuadratureRule::planar(Domain::SliceGauss(*unit), (n, 0), unit, pts))
}

fn radial_nodes(n: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre_nodes(n);
    x.iter().zip(&w).map(|(t, wt)| (0.5 * (t + 1.0), 0.5 * wt)).collect()
}

/// Gauss–Legendre in the radius times `angular_n` equally spaced midpoint angles,
/// for `(1/π) dλ_I` on the unit disk of ℂ_I.
pub fn disk_rule(unit: &ImaginaryUnit<f64>, radial_n: usize, angular_n: usize) -> Result<QuadratureRule> {
    check_order(radial_n, "disk_rule radial")?;
    check_order(angular_n, "disk_rule angular")?;
    let m = angular_n as f64;
    let mut pts = Vec::with_capacity(radial_n * angular_n);
    for (r, wr) in radial_nodes(radial_n) {
        for j in 0..angular_n {
            let th = 2.0 * PI * (j as f64 + 0.5) / m;
            pts.push((Complex64::from_polar(r, th), wr * r * 2.0 / m));
        }
    }
    Ok(QuadratureRule::planar(Domain::UnitDisk(*unit), (radial_n, angular_n), unit, pts))
}

/// Gauss–Legendre in both the radius and the angle `θ ∈ (−π/2, π/2)`, for
/// `(1/π) dλ_I` on the right half of the unit disk. All nodes are interior.
pub fn half_disk_rule(unit: &ImaginaryUnit<f64>, radial_n: usize, angular_n: usize) -> Result<QuadratureRule> {
    check_order(radial_n, "half_disk_rule radial")?;
    check_order(angular_n, "half_disk_rule angular")?;
    let (t, wt) = gauss_legendre_nodes(angular_n);
    let mut pts = Vec::with_capacity(radial_n * angular_n);
    for (r, wr) in radial_nodes(radial_n) {
        for (tj, wj) in t.iter().zip(&wt) {
            let th = 0.5 * PI * tj;
            pts.push((Complex64::from_polar(r, th), wr * r * 0.5 * wj));
        }
    }
    Ok(QuadratureRule::planar(Domain::HalfDisk(*unit), (radial_n, angular_n), unit, pts))
}

/// `n⁴` tensor Gauss–Hermite rule on ℍ for `(1/π²) e^{−|q|²} dλ`.
pub fn r4_gauss(n: usize) -> Result<QuadratureRule> {
    check_order(n, "r4_gauss")?;
    let count = n.checked_pow(4).unwrap_or(usize::MAX);
    if count > R4_NODE_CAP {
        return Err(Error::InvalidArgument(format!(
            "r4_gauss: {n}^4 = {count} nodes exceeds the cap of {R4_NODE_CAP}"
        )));
    }
    let (x, w) = gauss_hermite_nodes(n);
    let mut nodes = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    let pi2 = PI * PI;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    nodes.push(Quaternion::new(x[a], x[b], x[c], x[d]));
                    weights.push(w[a] * w[b] * w[c] * w[d] / pi2);
                }
            }
        }
    }
    Ok(QuadratureRule { domain: Domain::R4Gauss, orders: (n, 0), nodes, planar: Vec::new(), weights })
}
