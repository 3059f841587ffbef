//! Segal–Bargmann, Fock–Fueter and Bargmann–Fock–Fueter transforms, and the
//! inner products of the slice Fock space, `𝒜(ℍ)`, `ℬ(𝔹)`, `ℛℬ(ℍ)` and `L²(ℝ)`.
//!
//! Coefficient formulas are primary; quadrature routes exist to cross-check them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::appell::{appell_values, t_coeff, t_values, AppellScale};
use crate::error::{Error, Result};
use crate::hermite::{hermite_polynomials, orthonormal_functions, CRAMER};
use crate::kernels::{bergman_fueter_ball, Form, KernelValue, DEFAULT_TRUNCATION};
use crate::quadrature::{Domain, Estimate, QuadratureRule};
use crate::quaternion::{slice_exp, Quaternion};
use crate::scalar::{factorial, ln_factorial, Rational, Scalar};
use crate::series::SliceSeries;
use crate::tail::{ln_abs, ratio_tail};

/// An element of `L²(ℝ)`: coefficients in the `ξ_n` basis, or samples of a real function.
#[derive(Clone, Copy)]
pub enum Signal<'a> {
    Coefficients(&'a [Quaternion<f64>]),
    Sampled(&'a (dyn Fn(f64) -> f64 + Sync)),
}

fn require_domain(rule: &QuadratureRule, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what}: rule over {:?} does not fit", rule.domain())))
    }
}

fn is_line(rule: &QuadratureRule) -> bool {
    matches!(rule.domain(), Domain::RealLineGauss)
}

fn is_slice_gauss(rule: &QuadratureRule) -> bool {
    matches!(rule.domain(), Domain::SliceGauss(_))
}

/// `∫_ℝ f(x) dx` on a Gauss–Hermite rule, undoing its weight `e^{−x²}`.
fn line_integral<F>(rule: &QuadratureRule, f: F, tol: f64) -> Result<Estimate<Quaternion<f64>>>
where
    F: Fn(f64) -> Quaternion<f64> + Sync,
{
    rule.integrate_checked(|x| f(x.w) * (x.w * x.w).exp(), tol)
}

fn xi_combination(a: &[Quaternion<f64>], x: f64) -> Quaternion<f64> {
    if a.is_empty() {
        return Quaternion::zero();
    }
    let xi = orthonormal_functions(a.len() - 1, x);
    xi.iter().zip(a).fold(Quaternion::zero(), |acc, (v, c)| acc + *c * *v)
}

/// `A(q, x) = π^{−1/4} e^{−½(q² + x²) + √2 q x}`.
pub fn bargmann_kernel(q: &Quaternion<f64>, x: f64) -> Quaternion<f64> {
    slice_exp(q, -0.5, 2f64.sqrt() * x, -0.5 * x * x) * PI.powf(-0.25)
}

/// `ℬφ(q) = ∫ A(q, x) φ(x) dx` by Gauss–Hermite quadrature.
pub fn segal_bargmann(
    phi: Signal<'_>,
    q: &Quaternion<f64>,
    rule: &QuadratureRule,
    tol: f64,
) -> Result<Estimate<Quaternion<f64>>> {
    require_domain(rule, is_line(rule), "segal_bargmann")?;
    match phi {
        Signal::Coefficients(a) => line_integral(rule, |x| bargmann_kernel(q, x) * xi_combination(a, x), tol),
        Signal::Sampled(f) => line_integral(rule, |x| bargmann_kernel(q, x) * f(x), tol),
    }
}

/// `ℬ(Σ ξ_n a_n)(q) = Σ qⁿ/√(n!) a_n`.
pub fn segal_bargmann_coefficients(a: &[Quaternion<f64>], q: &Quaternion<f64>) -> Quaternion<f64> {
    let mut p = Quaternion::one();
    let mut acc = Quaternion::zero();
    for (n, c) in a.iter().enumerate() {
        if n > 0 {
            p = p * *q * (1.0 / (n as f64).sqrt());
        }
        acc += p * *c;
    }
    acc
}

/// `−2 Σ_{k≤n} Q_k(q)/k! · p̄^{k+2}` from precomputed `Q_k(q)/k!`.
fn fock_fueter_from(a: &[Quaternion<f64>], p: &Quaternion<f64>) -> Quaternion<f64> {
    let pb = p.conj();
    let h = a.iter().rev().fold(Quaternion::zero(), |acc, c| acc * pb + *c);
    h * (pb * pb) * -2.0
}

/// `f̆(q) = ∫_{ℂ_I} K_ℱ(q, p) f(p) dμ_I(p)`, with `K_ℱ` truncated at degree `n`.
pub fn fock_fueter_transform(
    f: &SliceSeries<f64>,
    q: &Quaternion<f64>,
    rule: &QuadratureRule,
    n: usize,
    tol: f64,
) -> Result<Estimate<Quaternion<f64>>> {
    require_domain(rule, is_slice_gauss(rule), "fock_fueter_transform")?;
    let a = appell_values(q, n, AppellScale::InvFactorial);
    rule.integrate_checked(|p| fock_fueter_from(&a, p) * f.eval(p), tol)
}

/// `Φ(q, x) = −2 Σ_{k≤n} T_k(q) ξ_{k+2}(x)`, with a bound on the dropped terms
/// from `|Q_k(q)| ≤ |q|^k` and Cramér's bound on `ξ_n`.
pub fn phi_kernel(q: &Quaternion<f64>, x: f64, n: usize) -> KernelValue {
    let t = t_values(q, n);
    let xi = orthonormal_functions(n + 2, x);
    let terms: Vec<Quaternion<f64>> = t.iter().enumerate().map(|(k, tk)| *tk * (-2.0 * xi[k + 2])).collect();
    let lq = ln_abs(q.abs());
    let tail = 2.0 * CRAMER * PI.powf(-0.25)
        * ratio_tail(
            |k| {
                let kf = k as f64;
                0.5 * ((kf + 1.0) * (kf + 2.0)).ln() - 0.5 * ln_factorial(k) + kf * lq
            },
            n,
        );
    KernelValue { value: crate::appell::pairwise_sum(&terms), tail }
}

/// `Φ(q, x) = ∫_{ℂ_I} K_ℱ(q, p) A(p, x) dμ_I(p)`.
pub fn phi_kernel_quadrature(
    q: &Quaternion<f64>,
    x: f64,
    rule: &QuadratureRule,
    n: usize,
    tol: f64,
) -> Result<Estimate<Quaternion<f64>>> {
    require_domain(rule, is_slice_gauss(rule), "phi_kernel_quadrature")?;
    let a = appell_values(q, n, AppellScale::InvFactorial);
    rule.integrate_checked(|p| fock_fueter_from(&a, p) * bargmann_kernel(p, x), tol)
}

/// `∫ Φ(q, x) Φ(p, x) dx`.
pub fn phi_gram(
    q: &Quaternion<f64>,
    p: &Quaternion<f64>,
    rule: &QuadratureRule,
    n: usize,
    tol: f64,
) -> Result<Estimate<Quaternion<f64>>> {
    require_domain(rule, is_line(rule), "phi_gram")?;
    line_integral(rule, |x| phi_kernel(q, x, n).value * phi_kernel(p, x, n).value, tol)
}

/// `4 Σ_{k≤n} T_k(q) T_k(p)`.
pub fn phi_gram_series(q: &Quaternion<f64>, p: &Quaternion<f64>, n: usize) -> Quaternion<f64> {
    let tq = t_values(q, n);
    let tp = t_values(p, n);
    let terms: Vec<Quaternion<f64>> = tq.iter().zip(&tp).map(|(a, b)| *a * *b * 4.0).collect();
    crate::appell::pairwise_sum(&terms)
}

/// `𝒮φ` in the orthonormal basis `T_k` of `𝒜(ℍ)`: `γ_k = −2 a_{k+2}`.
pub fn bargmann_fock_fueter_coefficients<T: Scalar>(a: &[Quaternion<T>]) -> Vec<Quaternion<T>> {
    let two = T::from_i64(-2);
    a.iter().skip(2).map(|c| c.scale(&two)).collect()
}

/// `𝒮φ(q) = Σ_{n≥2} −2 T_{n−2}(q) a_n`.
pub fn bargmann_fock_fueter(a: &[Quaternion<f64>], q: &Quaternion<f64>) -> Quaternion<f64> {
    let g = bargmann_fock_fueter_coefficients(a);
    if g.is_empty() {
        return Quaternion::zero();
    }
    let t = t_values(q, g.len() - 1);
    t.iter().zip(&g).fold(Quaternion::zero(), |acc, (tk, c)| acc + *tk * *c)
}

/// `𝒮φ(q) = ∫ Φ(q, x) φ(x) dx`, with `Φ` truncated at degree `n`.
pub fn bargmann_fock_fueter_quadrature(
    a: &[Quaternion<f64>],
    q: &Quaternion<f64>,
    rule: &QuadratureRule,
    n: usize,
    tol: f64,
) -> Result<Estimate<Quaternion<f64>>> {
    require_domain(rule, is_line(rule), "bargmann_fock_fueter_quadrature")?;
    line_integral(rule, |x| phi_kernel(q, x, n).value * xi_combination(a, x), tol)
}

/// Coefficient spaces and their weight sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    /// Slice Fock space, monomials `p^k`, weight `k!`.
    FockSlice,
    /// `𝒜(ℍ)`, basis `Q_k`, weight `k!/((k+1)(k+2))`.
    AH,
    /// `ℬ(𝔹)`, basis `Q_k`, weight `1/((k+1)²(k+2)²(k+3))`.
    BB,
    /// `ℛℬ(ℍ)`, basis `Q_k`, weight `‖Q_k‖²` under `(1/π²) e^{−|q|²} dλ`.
    RBH,
    /// `L²(ℝ)`, basis `ξ_n`, weight 1.
    L2R,
    /// Closed span of `ξ_n, n ≥ 2`, weight 1.
    HSub,
    /// Slice Bergman space of the unit ball, monomials `p^k`, weight `1/(k+1)`.
    BergmanSlice,
}

impl SpaceTag {
    pub const ALL: [SpaceTag; 7] = [
        SpaceTag::FockSlice,
        SpaceTag::AH,
        SpaceTag::BB,
        SpaceTag::RBH,
        SpaceTag::L2R,
        SpaceTag::HSub,
        SpaceTag::BergmanSlice,
    ];

    /// The `k`-th weight as an exact rational.
    pub fn weight_exact(self, k: usize) -> Rational {
        let kk = k as i64;
        let int = |n: i64| Rational::from_integer(n.into());
        match self {
            SpaceTag::FockSlice => Rational::from_integer(factorial(k as u32)),
            SpaceTag::AH => Rational::from_integer(factorial(k as u32)) / int((kk + 1) * (kk + 2)),
            SpaceTag::BB => Rational::one() / int((kk + 1) * (kk + 1) * (kk + 2) * (kk + 2) * (kk + 3)),
            SpaceTag::RBH => rb_weight(k as u32),
            SpaceTag::L2R | SpaceTag::HSub => Rational::one(),
            SpaceTag::BergmanSlice => Rational::one() / int(kk + 1),
        }
    }

    /// The `k`-th weight as a float; `∞` once it leaves the `f64` range.
    pub fn weight(self, k: usize) -> f64 {
        match self {
            SpaceTag::L2R | SpaceTag::HSub => 1.0,
            SpaceTag::FockSlice | SpaceTag::AH | SpaceTag::RBH if k > 170 => self.ln_weight(k).exp(),
            _ => self.weight_exact(k).to_f64(),
        }
    }

    pub fn ln_weight(self, k: usize) -> f64 {
        let kf = k as f64;
        match self {
            SpaceTag::FockSlice => ln_factorial(k),
            SpaceTag::AH => ln_factorial(k) - ((kf + 1.0) * (kf + 2.0)).ln(),
            SpaceTag::RBH => ln_factorial(k + 1) + sphere_mean_sq(k as u32).to_f64().ln(),
            _ => self.weight(k).ln(),
        }
    }

    /// `w_k · v`, staying finite when `w_k` alone would overflow.
    fn weigh(self, k: usize, v: Quaternion<f64>) -> Quaternion<f64> {
        let w = self.weight(k);
        if w.is_finite() {
            return v * w;
        }
        let n = v.abs();
        if n == 0.0 {
            return v;
        }
        v * ((self.ln_weight(k) + n.ln()).exp() / n)
    }

    /// True when the conjugate falls on the first argument's coefficients.
    pub fn conjugates_first(self) -> bool {
        matches!(self, SpaceTag::BB | SpaceTag::BergmanSlice)
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceTag::FockSlice => "fock_slice",
            SpaceTag::AH => "A_H",
            SpaceTag::BB => "B_B",
            SpaceTag::RBH => "RB_H",
            SpaceTag::L2R => "L2_R",
            SpaceTag::HSub => "H_sub",
            SpaceTag::BergmanSlice => "bergman_slice",
        }
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        SpaceTag::ALL
            .into_iter()
            .find(|t| t.name().to_ascii_lowercase() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown space '{s}'")))
    }
}

/// `‖Q_k‖²` in `ℛℬ(ℍ)`: `(k+1)! (Σ_j T_j² − Σ_j T_j T_{j+1})` with `T_j = T^k_j`.
///
/// On the unit sphere `Q_k(e^{Iθ}) = Σ_j T_j e^{I(k−2j)θ}`; averaging against
/// `(2/π) sin²θ` keeps the diagonal and half of the first off-diagonal.
pub fn rb_weight(k: u32) -> Rational {
    Rational::from_integer(factorial(k + 1)) * sphere_mean_sq(k)
}

/// Mean of `|Q_k|²` over the unit sphere of ℍ.
fn sphere_mean_sq(k: u32) -> Rational {
    let t: Vec<Rational> = (0..=k).map(|j| t_coeff(k, j)).collect();
    let diag = t.iter().fold(Rational::zero(), |acc, v| acc + v * v);
    let off = t.windows(2).fold(Rational::zero(), |acc, w| acc + &w[0] * &w[1]);
    diag - off
}

/// Weighted coefficient pairing, conjugating the side each space prescribes.
/// Shorter sequences are padded with zeros.
pub fn coefficient_inner_product<T: Scalar>(
    f: &[Quaternion<T>],
    g: &[Quaternion<T>],
    space: SpaceTag,
) -> Quaternion<T> {
    let mut acc = Quaternion::zero();
    for (k, (a, b)) in f.iter().zip(g).enumerate() {
        let w = T::from_rational(&space.weight_exact(k));
        let term = if space.conjugates_first() { a.conj() * b.clone() } else { b.conj() * a.clone() };
        acc += term.scale(&w);
    }
    acc
}

/// Float version of [`coefficient_inner_product`] with float weights.
pub fn coefficient_inner_product_f64(f: &[Quaternion<f64>], g: &[Quaternion<f64>], space: SpaceTag) -> Quaternion<f64> {
    let terms: Vec<Quaternion<f64>> = f
        .iter()
        .zip(g)
        .enumerate()
        .map(|(k, (a, b))| {
            let term = if space.conjugates_first() { a.conj() * *b } else { b.conj() * *a };
            space.weigh(k, term)
        })
        .collect();
    crate::appell::pairwise_sum(&terms)
}

/// `Σ conj(g_k) f_k`, the `𝒜(ℍ)` pairing in the orthonormal basis `T_k`.
pub fn orthonormal_inner_product<T: Scalar>(f: &[Quaternion<T>], g: &[Quaternion<T>]) -> Quaternion<T> {
    coefficient_inner_product(f, g, SpaceTag::L2R)
}

/// The defining integral of `⟨f, g⟩` on a rule matching `space`.
pub fn quadrature_inner_product<F, G>(
    f: F,
    g: G,
    space: SpaceTag,
    rule: &QuadratureRule,
    tol: f64,
) -> Result<Estimate<Quaternion<f64>>>
where
    F: Fn(&Quaternion<f64>) -> Quaternion<f64> + Sync,
    G: Fn(&Quaternion<f64>) -> Quaternion<f64> + Sync,
{
    let d = rule.domain();
    let ok = match space {
        SpaceTag::FockSlice => matches!(d, Domain::SliceGauss(_)),
        SpaceTag::BergmanSlice => matches!(d, Domain::UnitDisk(_) | Domain::HalfDisk(_)),
        SpaceTag::RBH => matches!(d, Domain::R4Gauss),
        SpaceTag::L2R | SpaceTag::HSub => matches!(d, Domain::RealLineGauss),
        SpaceTag::AH | SpaceTag::BB => {
            return Err(Error::InvalidArgument(format!("{space} is defined through coefficients only")))
        }
    };
    require_domain(rule, ok, "quadrature_inner_product")?;
    let pair = |p: &Quaternion<f64>| {
        if space.conjugates_first() {
            f(p).conj() * g(p)
        } else {
            g(p).conj() * f(p)
        }
    };
    if matches!(space, SpaceTag::L2R | SpaceTag::HSub) {
        line_integral(rule, |x| pair(&Quaternion::real(x)), tol)
    } else {
        rule.integrate_checked(pair, tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership {
    pub in_space: bool,
    pub norm_sq: f64,
}

/// Weighted norm of a finite sequence; `H_sub` also requires the first two to vanish.
pub fn membership_check(coeffs: &[Quaternion<f64>], space: SpaceTag) -> Membership {
    let terms: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| space.weigh(k, Quaternion::real(c.norm_sqr())).w)
        .collect();
    let norm_sq = crate::quadrature::pairwise(&terms);
    let mut in_space = norm_sq.is_finite() && coeffs.iter().all(|c| c.is_finite());
    if space == SpaceTag::HSub {
        in_space &= coeffs.iter().take(2).all(|c| c.is_zero());
    }
    Membership { in_space, norm_sq }
}

/// `α_k = −2(k+1)(k+2) c_{k+2}`: slice coefficients to `Q_k` coefficients.
pub fn slice_to_regular<T: Scalar>(c: &[Quaternion<T>]) -> Vec<Quaternion<T>> {
    c.iter()
        .enumerate()
        .skip(2)
        .map(|(j, v)| {
            let k = j as i64 - 2;
            v.scale(&T::from_i64(-2 * (k + 1) * (k + 2)))
        })
        .collect()
}

/// `c_{k+2} = −α_k/(2(k+1)(k+2))`, with `c_0 = c_1 = 0`.
pub fn regular_to_slice<T: Scalar>(alpha: &[Quaternion<T>]) -> Vec<Quaternion<T>> {
    let mut out = vec![Quaternion::zero(); 2];
    for (k, a) in alpha.iter().enumerate() {
        let k = k as i64;
        out.push(a.scale(&T::from_ratio(-1, 2 * (k + 1) * (k + 2))));
    }
    out
}

/// Coefficients of `G_q = Σ Q_k(·) ((k+1)(k+2)/k!) conj(Q_k(q))`.
pub fn g_coefficients(q: &Quaternion<f64>, n: usize) -> Vec<Quaternion<f64>> {
    appell_values(q, n, AppellScale::InvFactorial)
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let kf = k as f64;
            v.conj() * ((kf + 1.0) * (kf + 2.0))
        })
        .collect()
}

/// Coefficients of `L_p = Σ Q_k(·) (k+1)²(k+2)²(k+3) conj(Q_k(p))`.
pub fn l_coefficients(p: &Quaternion<f64>, n: usize) -> Vec<Quaternion<f64>> {
    appell_values(p, n, AppellScale::Unit)
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let kf = k as f64;
            v.conj() * ((kf + 1.0) * (kf + 1.0) * (kf + 2.0) * (kf + 2.0) * (kf + 3.0))
        })
        .collect()
}

/// Which integral formula [`integral_representation_q`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentationSource {
    /// Slice Fock space with `K_ℱ`; needs a `SliceGauss` rule.
    Fock,
    /// Real line with `Φ` and `h_{k+2}`; needs a Gauss–Hermite rule.
    Hermite,
    /// Unit-ball slice with the Bergman–Fueter kernel; needs a `UnitDisk` rule.
    Bergman,
}

impl FromStr for RepresentationSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fock" => Ok(Self::Fock),
            "hermite" => Ok(Self::Hermite),
            "bergman" => Ok(Self::Bergman),
            _ => Err(Error::InvalidArgument(format!("unknown source '{s}'"))),
        }
    }
}

/// `Q_k(q)` recovered from one of its integral representations.
pub fn integral_representation_q(
    k: usize,
    q: &Quaternion<f64>,
    source: RepresentationSource,
    rule: &QuadratureRule,
    tol: f64,
) -> Result<Estimate<Quaternion<f64>>> {
    let kf = k as f64;
    let c = -1.0 / (2.0 * (kf + 1.0) * (kf + 2.0));
    let m = (k + 2) as u32;
    let e = match source {
        RepresentationSource::Fock => {
            require_domain(rule, is_slice_gauss(rule), "fock representation")?;
            let a = appell_values(q, DEFAULT_TRUNCATION, AppellScale::InvFactorial);
            rule.integrate_checked(|p| fock_fueter_from(&a, p) * p.powi(m), tol * c.abs().recip())?
        }
        RepresentationSource::Hermite => {
            require_domain(rule, is_line(rule), "hermite representation")?;
            // c · c2 = −1/(4 π^{1/4} 2^{k/2} (k+1)(k+2)).
            let c2 = 0.5 * PI.powf(-0.25) * (-0.5 * kf * 2f64.ln()).exp();
            let e = line_integral(
                rule,
                |x| {
                    let h = hermite_polynomials(k + 2, x)[k + 2] * (-0.5 * x * x).exp();
                    phi_kernel(q, x, DEFAULT_TRUNCATION).value * h
                },
                tol / (c2 * c.abs()),
            )?;
            Estimate { value: e.value * c2, error: e.error * c2 }
        }
        RepresentationSource::Bergman => {
            require_domain(rule, matches!(rule.domain(), Domain::UnitDisk(_)), "bergman representation")?;
            bergman_fueter_ball(q, &Quaternion::zero(), 0, Form::Closed)?;
            rule.integrate_checked(
                |r| {
                    bergman_fueter_ball(q, r, 0, Form::Closed).expect("nodes lie in the ball").value * r.powi(m)
                },
                tol * c.abs().recip(),
            )?
        }
    };
    Ok(Estimate { value: e.value * c, error: e.error * c.abs() })
}

/// `∫_{ℂ_I} p^k |p|⁴ e^{−|p|² + x p̄} dλ_I(p)`.
pub fn fock_moment_integral(k: u32, x: f64, rule: &QuadratureRule, tol: f64) -> Result<Estimate<Quaternion<f64>>> {
    require_domain(rule, is_slice_gauss(rule), "fock_moment_integral")?;
    let e = rule.integrate_checked(
        |p| {
            let r2 = p.norm_sqr();
            p.powi(k) * slice_exp(&p.conj(), 0.0, x, 0.0) * (r2 * r2)
        },
        tol / PI,
    )?;
    Ok(Estimate { value: e.value * PI, error: e.error * PI })
}

/// `π (k+1)(k+2) x^k`.
pub fn fock_moment_closed(k: u32, x: f64) -> f64 {
    let kf = f64::from(k);
    PI * (kf + 1.0) * (kf + 2.0) * x.powi(k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::appell_q;
    use crate::kernels::rkhs_g;
    use crate::quadrature::{disk_rule, gauss_hermite, r4_gauss, slice_gauss};
    use crate::quaternion::ImaginaryUnit;
    use crate::series::{qq_eval_f64, regular_eval, RegularSeries};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion<f64> {
        Quaternion::new(w, x, y, z)
    }

    fn rand_q(rng: &mut ChaCha8Rng, r: f64) -> Quaternion<f64> {
        loop {
            let v = q(rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r));
            if v.abs() < r {
                return v;
            }
        }
    }

    fn unit_vec(n: usize, len: usize) -> Vec<Quaternion<f64>> {
        let mut v = vec![Quaternion::zero(); len];
        v[n] = Quaternion::one();
        v
    }

    fn diag_unit() -> ImaginaryUnit<f64> {
        ImaginaryUnit::from_vector(1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt(), 0.0).unwrap()
    }

    #[test]
    fn segal_bargmann_of_hermite_functions() {
        let gh = gauss_hermite(80).unwrap();
        let one = q(0.3, -0.2, 0.5, 0.1);
        let e = segal_bargmann(Signal::Coefficients(&unit_vec(0, 1)), &one, &gh, 1e-10).unwrap();
        assert!(e.value.dist(&Quaternion::one()) < 1e-10);

        let z = q(0.5, 0.5, 0.0, 0.0);
        let e = segal_bargmann(Signal::Coefficients(&unit_vec(3, 4)), &z, &gh, 1e-8).unwrap();
        assert!(e.value.dist(&(z.powi(3) * (1.0 / 6f64.sqrt()))) < 1e-8);

        let e = segal_bargmann(Signal::Coefficients(&[]), &z, &gh, 1e-8).unwrap();
        assert_eq!(e.value, Quaternion::zero());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 0..10 {
            let p = rand_q(&mut rng, 1.0);
            let a = unit_vec(n, n + 1);
            let e = segal_bargmann(Signal::Coefficients(&a), &p, &gh, 1e-9).unwrap();
            assert!(e.value.dist(&segal_bargmann_coefficients(&a, &p)) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn segal_bargmann_sampled_matches_coefficients() {
        let gh = gauss_hermite(80).unwrap();
        let xi2 = |x: f64| orthonormal_functions(2, x)[2];
        let p = q(0.2, 0.4, -0.3, 0.0);
        let e = segal_bargmann(Signal::Sampled(&xi2), &p, &gh, 1e-9).unwrap();
        assert!(e.value.dist(&(p * p * (1.0 / 2f64.sqrt()))) < 1e-9);
    }

    #[test]
    fn segal_bargmann_reports_coarse_rules() {
        let gh = gauss_hermite(4).unwrap();
        let a = unit_vec(12, 13);
        let r = segal_bargmann(Signal::Coefficients(&a), &q(1.5, 1.0, 0.0, 0.0), &gh, 1e-10);
        assert!(matches!(r, Err(Error::QuadratureInsufficient { .. })));
    }

    #[test]
    fn fock_fueter_transform_values() {
        let rule = slice_gauss(&ImaginaryUnit::i(), 60).unwrap();
        let p = q(0.3, 0.2, -0.4, 0.1);
        let e = fock_fueter_transform(&SliceSeries::monomial(2), &p, &rule, 300, 1e-8).unwrap();
        assert!(e.value.dist(&Quaternion::real(-4.0)) < 1e-8);
        let e = fock_fueter_transform(&SliceSeries::monomial(0), &p, &rule, 300, 1e-10).unwrap();
        assert!(e.value.abs() < 1e-10);
        let e = fock_fueter_transform(&SliceSeries::monomial(1), &p, &rule, 300, 1e-10).unwrap();
        assert!(e.value.abs() < 1e-10);
    }

    #[test]
    fn fock_fueter_transform_matches_coefficient_map() {
        let rule_i = slice_gauss(&ImaginaryUnit::i(), 60).unwrap();
        let rule_d = slice_gauss(&diag_unit(), 60).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let c: Vec<Quaternion<f64>> = (0..7).map(|_| rand_q(&mut rng, 1.0)).collect();
            let f = SliceSeries::new(c.clone());
            let g = RegularSeries::new(slice_to_regular(&c));
            let p = rand_q(&mut rng, 0.8);
            let a = fock_fueter_transform(&f, &p, &rule_i, 300, 1e-7).unwrap().value;
            let b = fock_fueter_transform(&f, &p, &rule_d, 300, 1e-7).unwrap().value;
            let want = regular_eval(&g, &p);
            assert!(a.dist(&want) < 1e-8 * (1.0 + want.abs()));
            assert!(a.dist(&b) < 1e-10 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn phi_kernel_single_term_at_origin() {
        for &x in &[-1.3, 0.0, 0.4, 2.2] {
            let v = phi_kernel(&Quaternion::zero(), x, 50).value;
            let h2 = hermite_polynomials(2, x)[2] * (-0.5 * x * x).exp();
            assert!(v.dist(&Quaternion::real(-PI.powf(-0.25) * h2)) < 1e-14);
        }
    }

    #[test]
    fn phi_kernel_series_matches_quadrature() {
        let rule = slice_gauss(&ImaginaryUnit::j(), 80).unwrap();
        let qh = q(0.0, 0.5, 0.0, 0.0);
        let s = phi_kernel(&qh, 0.3, 300);
        let e = phi_kernel_quadrature(&qh, 0.3, &rule, 300, 1e-7).unwrap();
        assert!(s.value.dist(&e.value) < 1e-7);
        assert!(s.tail < 1e-100);
    }

    #[test]
    fn phi_gram_matches_series() {
        let gh = gauss_hermite(80).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let a = rand_q(&mut rng, 0.8);
            let b = rand_q(&mut rng, 0.8);
            let e = phi_gram(&a, &b, &gh, 300, 1e-7).unwrap();
            assert!(e.value.dist(&phi_gram_series(&a, &b, 300)) < 1e-7);
        }
    }

    #[test]
    fn bargmann_fock_fueter_actions() {
        let p = q(0.3, 0.1, 0.2, -0.4);
        assert_eq!(bargmann_fock_fueter(&unit_vec(0, 1), &p), Quaternion::zero());
        assert_eq!(bargmann_fock_fueter(&unit_vec(1, 2), &p), Quaternion::zero());
        let v = bargmann_fock_fueter(&unit_vec(2, 3), &p);
        assert!(v.dist(&Quaternion::real(-2.0 * 2f64.sqrt())) < 1e-15);
        let v = bargmann_fock_fueter(&unit_vec(5, 6), &p);
        let t3 = t_values(&p, 3)[3];
        assert!(v.dist(&(t3 * -2.0)) < 1e-15);
    }

    #[test]
    fn bargmann_fock_fueter_quadrature_route() {
        let gh = gauss_hermite(80).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a: Vec<Quaternion<f64>> = (0..8).map(|_| rand_q(&mut rng, 1.0)).collect();
        let p = rand_q(&mut rng, 0.7);
        let e = bargmann_fock_fueter_quadrature(&a, &p, &gh, 300, 1e-8).unwrap();
        assert!(e.value.dist(&bargmann_fock_fueter(&a, &p)) < 1e-9);
    }

    #[test]
    fn t_coefficients_give_the_same_norm_as_q_coefficients() {
        // γ_k T_k = Q_k (n_k γ_k) with n_k² = (k+1)(k+2)/k!.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a: Vec<Quaternion<f64>> = (0..10).map(|_| rand_q(&mut rng, 1.0)).collect();
        let g = bargmann_fock_fueter_coefficients(&a);
        let in_q: Vec<Quaternion<f64>> = g
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let kf = k as f64;
                *c * (0.5 * (((kf + 1.0) * (kf + 2.0)).ln() - ln_factorial(k))).exp()
            })
            .collect();
        let n1 = orthonormal_inner_product(&g, &g).w;
        let n2 = coefficient_inner_product(&in_q, &in_q, SpaceTag::AH).w;
        assert!((n1 - n2).abs() < 1e-12 * n1);
        let phi2: Vec<Quaternion<f64>> = a.iter().skip(2).cloned().collect();
        assert!((n1 - 4.0 * orthonormal_inner_product(&phi2, &phi2).w).abs() < 1e-12 * n1);
    }

    fn rational_q(rng: &mut ChaCha8Rng) -> Quaternion<Rational> {
        let mut r = || Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into());
        Quaternion::new(r(), r(), r(), r())
    }

    #[test]
    fn partial_isometry_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let mut phi: Vec<Quaternion<Rational>> = (0..9).map(|_| rational_q(&mut rng)).collect();
            let mut psi: Vec<Quaternion<Rational>> = (0..9).map(|_| rational_q(&mut rng)).collect();
            // General φ: ‖𝒮φ‖² ≤ 4‖φ‖².
            let s = bargmann_fock_fueter_coefficients(&phi);
            let lhs = orthonormal_inner_product(&s, &s).w;
            let rhs = coefficient_inner_product(&phi, &phi, SpaceTag::L2R).w * Rational::from_integer(4.into());
            assert!(lhs <= rhs);
            for v in [&mut phi, &mut psi] {
                v[0] = Quaternion::zero();
                v[1] = Quaternion::zero();
            }
            let s1 = bargmann_fock_fueter_coefficients(&phi);
            let s2 = bargmann_fock_fueter_coefficients(&psi);
            let four = Rational::from_integer(4.into());
            assert_eq!(
                orthonormal_inner_product(&s1, &s2),
                coefficient_inner_product(&phi, &psi, SpaceTag::HSub).scale(&four)
            );
        }
    }

    #[test]
    fn ah_gram_of_unit_vectors() {
        for m in 0..8 {
            for n in 0..8 {
                let g = coefficient_inner_product(&unit_vec(m, 8), &unit_vec(n, 8), SpaceTag::AH);
                let want = if m == n { SpaceTag::AH.weight(m) } else { 0.0 };
                assert!(g.dist(&Quaternion::real(want)) < 1e-15);
            }
        }
        let mf = membership_check(&unit_vec(0, 1), SpaceTag::AH);
        assert!(mf.in_space);
        assert_eq!(mf.norm_sq, 0.5);
    }

    #[test]
    fn reproducing_kernels_evaluate() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let alpha: Vec<Quaternion<f64>> = (0..12).map(|_| rand_q(&mut rng, 1.0)).collect();
            let f = RegularSeries::new(alpha.clone());
            let p = rand_q(&mut rng, 0.9);
            let want = regular_eval(&f, &p);
            let g = g_coefficients(&p, 11);
            let v = coefficient_inner_product_f64(&alpha, &g, SpaceTag::AH);
            assert!(v.dist(&want) < 1e-12 * (1.0 + want.abs()));
            let l = l_coefficients(&p, 11);
            let v = coefficient_inner_product_f64(&l, &alpha, SpaceTag::BB);
            assert!(v.dist(&want) < 1e-12 * (1.0 + want.abs()));
            let v = coefficient_inner_product_f64(&alpha, &l, SpaceTag::BB);
            assert!(v.dist(&want.conj()) < 1e-12 * (1.0 + want.abs()));
            // |f(p)| ≤ ‖G_p‖ ‖f‖.
            let gp = g_coefficients(&p, 300);
            let ng = membership_check(&gp, SpaceTag::AH).norm_sq.sqrt();
            let nf = membership_check(&alpha, SpaceTag::AH).norm_sq.sqrt();
            assert!(want.abs() <= ng * nf * (1.0 + 1e-12));
        }
    }

    #[test]
    fn rkhs_self_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let a = rand_q(&mut rng, 1.0);
            let b = rand_q(&mut rng, 1.0);
            let v = coefficient_inner_product_f64(&g_coefficients(&b, 300), &g_coefficients(&a, 300), SpaceTag::AH);
            let k = rkhs_g(&a, &b, 300);
            assert!(v.dist(&k.value) < 1e-12 * k.value.abs().max(1.0));
        }
    }

    #[test]
    fn fock_slice_gram_by_quadrature() {
        let rule = slice_gauss(&diag_unit(), 40).unwrap();
        for m in 0..=10u32 {
            for n in 0..=10u32 {
                let e = quadrature_inner_product(|p| p.powi(m), |p| p.powi(n), SpaceTag::FockSlice, &rule, 1e-6)
                    .unwrap();
                let want = if m == n { SpaceTag::FockSlice.weight(m as usize) } else { 0.0 };
                assert!(e.value.dist(&Quaternion::real(want)) < 1e-8, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn bergman_slice_gram_by_quadrature() {
        let rule = disk_rule(&ImaginaryUnit::k(), 20, 40).unwrap();
        for m in 0..=8u32 {
            for n in 0..=8u32 {
                let e = quadrature_inner_product(|p| p.powi(m), |p| p.powi(n), SpaceTag::BergmanSlice, &rule, 1e-8)
                    .unwrap();
                let want = if m == n { 1.0 / f64::from(m + 1) } else { 0.0 };
                assert!(e.value.dist(&Quaternion::real(want)) < 1e-8, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn rb_norms() {
        let rule = r4_gauss(12).unwrap();
        let e = quadrature_inner_product(
            |_| Quaternion::real(-4.0),
            |_| Quaternion::real(-4.0),
            SpaceTag::RBH,
            &rule,
            1e-8,
        )
        .unwrap();
        assert!((e.value.w - 16.0).abs() < 1e-8);
        for k in 0..=5u32 {
            let qk = appell_q(k);
            let e = quadrature_inner_product(
                |p| qq_eval_f64(&qk, p),
                |p| qq_eval_f64(&qk, p),
                SpaceTag::RBH,
                &rule,
                1e-8,
            )
            .unwrap();
            let want = SpaceTag::RBH.weight(k as usize);
            assert!((e.value.w - want).abs() < 1e-10 * want.max(1.0), "k = {k}: {} vs {want}", e.value.w);
        }
        assert_eq!(rb_weight(0), Rational::one());
    }

    #[test]
    fn inner_product_rejects_mismatched_rules() {
        let gh = gauss_hermite(10).unwrap();
        let one = |_: &Quaternion<f64>| Quaternion::one();
        assert!(quadrature_inner_product(one, one, SpaceTag::FockSlice, &gh, 1.0).is_err());
        assert!(quadrature_inner_product(one, one, SpaceTag::AH, &gh, 1.0).is_err());
        let e = quadrature_inner_product(
            |x| Quaternion::real(orthonormal_functions(3, x.w)[3]),
            |x| Quaternion::real(orthonormal_functions(3, x.w)[3]),
            SpaceTag::L2R,
            &gauss_hermite(40).unwrap(),
            1e-10,
        )
        .unwrap();
        assert!((e.value.w - 1.0).abs() < 1e-12);
    }

    #[test]
    fn membership_and_hsub() {
        let m = membership_check(&unit_vec(1, 3), SpaceTag::HSub);
        assert!(!m.in_space);
        let m = membership_check(&unit_vec(2, 3), SpaceTag::HSub);
        assert!(m.in_space && m.norm_sq == 1.0);
        assert!(!membership_check(&[Quaternion::real(f64::NAN)], SpaceTag::AH).in_space);
    }

    #[test]
    fn integral_representations() {
        let gh = gauss_hermite(80).unwrap();
        let sg = slice_gauss(&ImaginaryUnit::i(), 60).unwrap();
        let disk = disk_rule(&ImaginaryUnit::j(), 60, 120).unwrap();
        let rules = [
            (RepresentationSource::Fock, &sg),
            (RepresentationSource::Hermite, &gh),
            (RepresentationSource::Bergman, &disk),
        ];
        let p = q(0.3, -0.1, 0.2, 0.1);
        for (src, rule) in rules {
            let e = integral_representation_q(0, &p, src, rule, 1e-7).unwrap();
            assert!(e.value.dist(&Quaternion::one()) < 1e-7, "{src:?}");
        }
        let half_i = q(0.0, 0.5, 0.0, 0.0);
        let want = qq_eval_f64(&appell_q(2), &half_i);
        for (src, rule) in rules {
            let e = integral_representation_q(2, &half_i, src, rule, 1e-6).unwrap();
            assert!(e.value.dist(&want) < 1e-6, "{src:?}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for k in 0..=5usize {
            let p = rand_q(&mut rng, 0.6);
            let want = qq_eval_f64(&appell_q(k as u32), &p);
            for (src, rule) in rules {
                let e = integral_representation_q(k, &p, src, rule, 1e-6).unwrap();
                assert!(e.value.dist(&want) < 1e-7, "{src:?}, k = {k}");
            }
        }
        assert!(integral_representation_q(0, &p, RepresentationSource::Fock, &gh, 1e-6).is_err());
        let outside = q(1.2, 0.0, 0.0, 0.0);
        assert!(integral_representation_q(0, &outside, RepresentationSource::Bergman, &disk, 1e-6).is_err());
    }

    #[test]
    fn fock_moments() {
        let rule = slice_gauss(&diag_unit(), 60).unwrap();
        for k in 0..=6u32 {
            for &x in &[0.0, 0.7, -0.7] {
                let e = fock_moment_integral(k, x, &rule, 1e-6).unwrap();
                let want = fock_moment_closed(k, x);
                assert!(e.value.dist(&Quaternion::real(want)) < 1e-6, "k = {k}, x = {x}");
            }
        }
    }

    #[test]
    fn space_tag_names_round_trip() {
        for t in SpaceTag::ALL {
            assert_eq!(t.name().parse::<SpaceTag>().unwrap(), t);
            assert!(t.weight(3) > 0.0);
        }
        assert!("nope".parse::<SpaceTag>().is_err());
    }

    #[test]
    fn bergman_ball_bound_chain_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let c: Vec<Quaternion<Rational>> = (0..10).map(|_| rational_q(&mut rng)).collect();
            let alpha = slice_to_regular(&c);
            let lhs = coefficient_inner_product(&alpha, &alpha, SpaceTag::BB).w;
            let mut tail = c.clone();
            tail[0] = Quaternion::zero();
            tail[1] = Quaternion::zero();
            let rhs = coefficient_inner_product(&tail, &tail, SpaceTag::BergmanSlice).w
                * Rational::from_integer(4.into());
            assert_eq!(lhs, rhs);
            let full = coefficient_inner_product(&c, &c, SpaceTag::BergmanSlice).w * Rational::from_integer(4.into());
            assert!(lhs <= full);
        }
    }

    proptest! {
        #[test]
        fn coefficient_maps_round_trip(v in proptest::collection::vec((-50i64..50, 1i64..20), 0..40)) {
            let alpha: Vec<Quaternion<Rational>> = v
                .chunks(4)
                .filter(|c| c.len() == 4)
                .map(|c| {
                    let r = |(a, b): (i64, i64)| Rational::new(a.into(), b.into());
                    Quaternion::new(r(c[0]), r(c[1]), r(c[2]), r(c[3]))
                })
                .collect();
            let c = regular_to_slice(&alpha);
            prop_assert!(c[0].is_zero() && c[1].is_zero());
            prop_assert_eq!(slice_to_regular(&c), alpha);
        }

        #[test]
        fn fueter_map_norm_bound(v in proptest::collection::vec(-3.0f64..3.0, 4..60)) {
            let c: Vec<Quaternion<f64>> = v.chunks_exact(4).map(|c| q(c[0], c[1], c[2], c[3])).collect();
            let g = slice_to_regular(&c);
            let lhs = membership_check(&g, SpaceTag::AH).norm_sq;
            let rhs = 4.0 * membership_check(&c, SpaceTag::FockSlice).norm_sq;
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }

        #[test]
        fn conjugate_symmetry(v in proptest::collection::vec(-2.0f64..2.0, 48)) {
            let f: Vec<Quaternion<f64>> = v[..24].chunks_exact(4).map(|c| q(c[0], c[1], c[2], c[3])).collect();
            let g: Vec<Quaternion<f64>> = v[24..].chunks_exact(4).map(|c| q(c[0], c[1], c[2], c[3])).collect();
            for s in SpaceTag::ALL {
                let a = coefficient_inner_product_f64(&f, &g, s);
                let b = coefficient_inner_product_f64(&g, &f, s);
                prop_assert!(a.dist(&b.conj()) <= 1e-12 * (1.0 + a.abs()));
            }
        }
    }
}
