//! Reproducing kernels: Fock, Fock–Fueter, slice Bergman kernels of the ball,
//! half space, half ball and wedges, the Bergman–Fueter kernels obtained from
//! them by the Laplacian, and the kernels `G` and `L` of the regular spaces.
//!
//! Every series is truncated at `n` and returns a bound on the dropped tail.
//! Closed forms report a tail of zero.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::appell::{appell_values, pairwise_sum, t_values, AppellScale};
use crate::error::{Error, Result};
use crate::quaternion::{slice_decompose, slice_holomorphic_eval, ImaginaryUnit, Quaternion};
use crate::scalar::ln_factorial;
use crate::tail::{ln_abs, ratio_tail};

/// Default truncation order of kernel series.
pub const DEFAULT_TRUNCATION: usize = 300;

/// A kernel value with a bound on the truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelValue {
    pub value: Quaternion<f64>,
    pub tail: f64,
}

impl KernelValue {
    fn exact(value: Quaternion<f64>) -> Self {
        Self { value, tail: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Series,
    Closed,
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(Form::Series),
            "closed" => Ok(Form::Closed),
            _ => Err(Error::InvalidArgument(format!("unknown form {s:?} (series|closed)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelName {
    Fock,
    FockFueter,
    BergmanBall,
    BergmanHalfspace,
    BergmanHalfball,
    BergmanWedge(u32),
    BergmanFueterBall,
    BergmanFueterHalfspace,
    BergmanFueterHalfball,
    RkhsG,
    RkhsL,
}

impl KernelName {
    pub const ALL: [&'static str; 11] = [
        "fock",
        "fock_fueter",
        "bergman_ball",
        "bergman_halfspace",
        "bergman_halfball",
        "bergman_wedge",
        "bergman_fueter_ball",
        "bergman_fueter_halfspace",
        "bergman_fueter_halfball",
        "rkhs_G",
        "rkhs_L",
    ];

    /// Parses a kernel name; `-` and `_` are interchangeable and case is ignored.
    /// The wedge order is supplied separately.
    pub fn parse(s: &str, wedge_n: u32) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('-', "_");
        Ok(match key.as_str() {
            "fock" => KernelName::Fock,
            "fock_fueter" => KernelName::FockFueter,
            "bergman_ball" => KernelName::BergmanBall,
            "bergman_halfspace" => KernelName::BergmanHalfspace,
            "bergman_halfball" => KernelName::BergmanHalfball,
            "bergman_wedge" => {
                if wedge_n == 0 {
                    return Err(Error::InvalidArgument("wedge order must be at least 1".into()));
                }
                KernelName::BergmanWedge(wedge_n)
            }
            "bergman_fueter_ball" => KernelName::BergmanFueterBall,
            "bergman_fueter_halfspace" => KernelName::BergmanFueterHalfspace,
            "bergman_fueter_halfball" => KernelName::BergmanFueterHalfball,
            "rkhs_g" => KernelName::RkhsG,
            "rkhs_l" => KernelName::RkhsL,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown kernel {s:?}; expected one of {}",
                    Self::ALL.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for KernelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KernelName::Fock => "fock",
            KernelName::FockFueter => "fock_fueter",
            KernelName::BergmanBall => "bergman_ball",
            KernelName::BergmanHalfspace => "bergman_halfspace",
            KernelName::BergmanHalfball => "bergman_halfball",
            KernelName::BergmanWedge(n) => return write!(f, "bergman_wedge({n})"),
            KernelName::BergmanFueterBall => "bergman_fueter_ball",
            KernelName::BergmanFueterHalfspace => "bergman_fueter_halfspace",
            KernelName::BergmanFueterHalfball => "bergman_fueter_halfball",
            KernelName::RkhsG => "rkhs_G",
            KernelName::RkhsL => "rkhs_L",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelSpec {
    pub name: KernelName,
    pub truncation: usize,
    pub form: Form,
}

/// Evaluates `K(first, second)` with the argument order of each kernel's own
/// function (`fock_kernel(p, q)`, `rkhs_g(p, q)`, the rest `(q, r)`).
pub fn evaluate(spec: &KernelSpec, first: &Quaternion<f64>, second: &Quaternion<f64>) -> Result<KernelValue> {
    let n = spec.truncation;
    match spec.name {
        KernelName::Fock => Ok(fock_kernel(first, second, n)),
        KernelName::FockFueter => Ok(fock_fueter_kernel(first, second, n)),
        KernelName::BergmanBall => bergman_ball(first, second, n, spec.form),
        KernelName::BergmanHalfspace => bergman_halfspace(first, second).map(KernelValue::exact),
        KernelName::BergmanHalfball => bergman_halfball(first, second).map(KernelValue::exact),
        KernelName::BergmanWedge(w) => bergman_wedge(first, second, w).map(KernelValue::exact),
        KernelName::BergmanFueterBall => bergman_fueter_ball(first, second, n, spec.form),
        KernelName::BergmanFueterHalfspace => bergman_fueter_halfspace(first, second).map(KernelValue::exact),
        KernelName::BergmanFueterHalfball => bergman_fueter_halfball(first, second).map(KernelValue::exact),
        KernelName::RkhsG => Ok(rkhs_g(first, second, n)),
        KernelName::RkhsL => rkhs_l(first, second, n),
    }
}

fn ln_poly_geometric(k: usize, degree_factors: &[f64], ln_t: f64) -> f64 {
    let kf = k as f64;
    degree_factors.iter().map(|&s| (kf + s).ln()).sum::<f64>() + kf * ln_t
}

/// `K_ℍ(p, q) = Σ p^k q̄^k / k!`.
pub fn fock_kernel(p: &Quaternion<f64>, q: &Quaternion<f64>, n: usize) -> KernelValue {
    let qb = q.conj();
    let mut pk = Quaternion::one();
    let mut qk = Quaternion::one();
    let mut terms = Vec::with_capacity(n + 1);
    terms.push(Quaternion::one());
    for k in 1..=n {
        let s = 1.0 / (k as f64).sqrt();
        pk = pk * *p * s;
        qk = qk * qb * s;
        terms.push(pk * qk);
    }
    let lt = ln_abs(p.abs() * q.abs());
    let tail = ratio_tail(|k| k as f64 * lt - ln_factorial(k), n);
    KernelValue { value: pairwise_sum(&terms), tail }
}

/// `Σ_{k≤n} a_k x^k` with coefficients on the left, by Horner's rule.
fn horner_left(coeffs: &[Quaternion<f64>], x: &Quaternion<f64>) -> Quaternion<f64> {
    coeffs.iter().rev().fold(Quaternion::zero(), |acc, a| acc * *x + *a)
}

/// `K_ℱ(q, p) = −2 Σ Q_k(q)/k! · p̄^{k+2}`.
pub fn fock_fueter_kernel(q: &Quaternion<f64>, p: &Quaternion<f64>, n: usize) -> KernelValue {
    let pb = p.conj();
    let a = appell_values(q, n, AppellScale::InvFactorial);
    let value = horner_left(&a, &pb) * (pb * pb) * -2.0;
    let lt = ln_abs(q.abs() * p.abs());
    let tail = 2.0 * p.norm_sqr() * ratio_tail(|k| k as f64 * lt - ln_factorial(k), n);
    KernelValue { value, tail }
}

fn require_ball(kernel: &'static str, q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<()> {
    for (name, x) in [("q", q), ("r", r)] {
        if !(x.abs() < 1.0) {
            return Err(Error::DomainViolation { kernel, detail: format!("|{name}| = {} is not < 1", x.abs()) });
        }
    }
    Ok(())
}

fn require_halfspace(kernel: &'static str, q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<()> {
    for (name, x) in [("q", q), ("r", r)] {
        if !(x.w > 0.0) {
            return Err(Error::DomainViolation { kernel, detail: format!("Re({name}) = {} is not > 0", x.w) });
        }
    }
    Ok(())
}

/// `R(q, r) = (1 − 2Re(q) r̄ + |q|² r̄²)^{−1}`.
pub fn r_factor(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Quaternion<f64> {
    let rb = r.conj();
    (Quaternion::one() - rb * (2.0 * q.w) + rb * rb * q.norm_sqr()).inverse()
}

/// `P(q, r) = (|q|² + 2Re(q) r̄ + r̄²)^{−1}`.
pub fn p_factor(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Quaternion<f64> {
    let rb = r.conj();
    (Quaternion::real(q.norm_sqr()) + rb * (2.0 * q.w) + rb * rb).inverse()
}

fn bergman_ball_closed(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Quaternion<f64> {
    let qb = q.conj();
    let rb = r.conj();
    let num = Quaternion::one() - qb * rb * 2.0 + qb * qb * rb * rb;
    let rr = r_factor(q, r);
    num * rr * rr
}

/// `K_𝔹(q, r) = Σ (k+1) q^k r̄^k`, or its closed form `(1 − 2q̄r̄ + q̄²r̄²) R²`.
pub fn bergman_ball(q: &Quaternion<f64>, r: &Quaternion<f64>, n: usize, form: Form) -> Result<KernelValue> {
    require_ball("bergman_ball", q, r)?;
    match form {
        Form::Closed => Ok(KernelValue::exact(bergman_ball_closed(q, r))),
        Form::Series => {
            let t = q.abs() * r.abs();
            if t >= 1.0 {
                return Err(Error::Divergent { what: "bergman_ball", ratio: t });
            }
            let rb = r.conj();
            let mut qk = Quaternion::one();
            let mut rk = Quaternion::one();
            let mut terms = Vec::with_capacity(n + 1);
            terms.push(Quaternion::one());
            for k in 1..=n {
                qk = qk * *q;
                rk = rk * rb;
                terms.push(qk * rk * (k as f64 + 1.0));
            }
            // Σ_{k≥m} (k+1) t^k = t^m (m + 1 − m t)/(1 − t)² with m = n + 1.
            let m = (n + 1) as f64;
            let tail = t.powf(m) * (m + 1.0 - m * t) / ((1.0 - t) * (1.0 - t));
            Ok(KernelValue { value: pairwise_sum(&terms), tail })
        }
    }
}

/// `(q̄² + 2q̄r̄ + r̄²)`, the numerator shared by the half-space kernels.
fn halfspace_numerator(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Quaternion<f64> {
    let qb = q.conj();
    let rb = r.conj();
    qb * qb + qb * rb * 2.0 + rb * rb
}

/// `K_{ℍ⁺}(q, r) = (1/π)(q̄² + 2q̄r̄ + r̄²)(|q|² + 2Re(q) r̄ + r̄²)^{−2}`.
pub fn bergman_halfspace(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<Quaternion<f64>> {
    require_halfspace("bergman_halfspace", q, r)?;
    let p = p_factor(q, r);
    Ok(halfspace_numerator(q, r) * p * p * (1.0 / PI))
}

fn require_halfball(kernel: &'static str, q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<()> {
    require_ball(kernel, q, r)?;
    require_halfspace(kernel, q, r)
}

/// `K_{𝔹⁺} = K_𝔹 + K_{ℍ⁺}`, both in closed form.
pub fn bergman_halfball(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<Quaternion<f64>> {
    require_halfball("bergman_halfball", q, r)?;
    Ok(bergman_ball_closed(q, r) + bergman_halfspace(q, r)?)
}

/// Slice through `r`, or `i` when `r` is real.
fn slice_unit_of(r: &Quaternion<f64>) -> ImaginaryUnit<f64> {
    slice_decompose(r).unit.unwrap_or_else(ImaginaryUnit::i)
}

/// Extends `z ↦ k(z, r)`, given on the slice of `r`, to all `q` by the
/// representation formula.
pub fn extend_in_first<F>(k: F, q: &Quaternion<f64>, r: &Quaternion<f64>) -> Quaternion<f64>
where
    F: Fn(Complex64, Complex64) -> Complex64,
{
    let unit = slice_unit_of(r);
    let rs = slice_in(&unit, r);
    slice_holomorphic_eval(|z| unit.embed(k(slice_in(&unit, z), rs)), q, &unit)
}

/// Coordinates of a point of ℂ_I as `x + iy`.
fn slice_in(unit: &ImaginaryUnit<f64>, z: &Quaternion<f64>) -> Complex64 {
    let u = unit.as_quaternion();
    Complex64::new(z.w, z.x * u.x + z.y * u.y + z.z * u.z)
}

/// `K_{𝔹⁺}` through the representation formula applied to the complex kernel
/// `(1 − z r̄)^{−2} + (1/π)(z + r̄)^{−2}` on the slice of `r`.
pub fn bergman_halfball_extension(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<Quaternion<f64>> {
    require_halfball("bergman_halfball", q, r)?;
    Ok(extend_in_first(
        |z, w| {
            let wb = w.conj();
            let one = Complex64::new(1.0, 0.0);
            (one - z * wb).powi(-2) + (z + wb).powi(-2) / PI
        },
        q,
        r,
    ))
}

/// Representation-formula extension of `(1+z²)(1+r̄²)/((1−zr̄)(z+r̄))²`.
///
/// This equals `(1 − z r̄)^{−2} + (z + r̄)^{−2}`, i.e. `K_𝔹 + π K_{ℍ⁺}`: the
/// half-space part carries no `1/π` in this form.
pub fn bergman_halfball_star(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<Quaternion<f64>> {
    require_halfball("bergman_halfball", q, r)?;
    Ok(extend_in_first(
        |z, w| {
            let wb = w.conj();
            let one = Complex64::new(1.0, 0.0);
            (one + z * z) * (one + wb * wb) / ((one - z * wb) * (z + wb)).powi(2)
        },
        q,
        r,
    ))
}

/// True when `z` or `z̄` lies in the sector `Re z > 0`, `Re(e^{iπ/n} z) < 0`.
pub fn in_wedge_slice(z: Complex64, n: u32) -> bool {
    let rot = Complex64::from_polar(1.0, PI / f64::from(n));
    let inside = |w: Complex64| w.re > 0.0 && (rot * w).re < 0.0;
    inside(z) || inside(z.conj())
}

/// Membership in the axially symmetric wedge of order `n`.
pub fn in_wedge(q: &Quaternion<f64>, n: u32) -> bool {
    n >= 1 && in_wedge_slice(slice_decompose(q).complex(), n)
}

/// `(−1)ⁿ n² z^{n−1} w̄^{n−1} / (zⁿ − (−1)ⁿ w̄ⁿ)²`.
pub fn wedge_complex(z: Complex64, w: Complex64, n: u32) -> Complex64 {
    let ni = n as i32;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let wb = w.conj();
    let den = z.powi(ni) - wb.powi(ni) * sign;
    z.powi(ni - 1) * wb.powi(ni - 1) * (sign * f64::from(n * n)) / (den * den)
}

/// `K_{𝒲ⁿ}(q, r) = (−1)ⁿ n² q^{n−1}(q̄^{2n} − 2(−1)ⁿ q̄ⁿ r̄ⁿ + r̄^{2n}) r̄^{n−1}
/// (|q|^{2n} − 2(−1)ⁿ Re(qⁿ) r̄ⁿ + r̄^{2n})^{−2}`.
pub fn bergman_wedge(q: &Quaternion<f64>, r: &Quaternion<f64>, n: u32) -> Result<Quaternion<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("wedge order must be at least 1".into()));
    }
    for (name, x) in [("q", q), ("r", r)] {
        if !in_wedge(x, n) {
            return Err(Error::DomainViolation { kernel: "bergman_wedge", detail: format!("{name} is outside the wedge of order {n}") });
        }
    }
    let ni = n;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let qb = q.conj();
    let rb = r.conj();
    let qbn = qb.powi(ni);
    let rbn = rb.powi(ni);
    let mid = qbn * qbn - qbn * rbn * (2.0 * sign) + rbn * rbn;
    let qn = q.powi(ni);
    let den = Quaternion::real(q.norm_sqr().powi(ni as i32)) - rbn * (2.0 * sign * qn.w) + rbn * rbn;
    let dinv = den.inverse();
    let lead = q.powi(ni - 1) * mid * rb.powi(ni - 1) * dinv * dinv;
    Ok(lead * (sign * f64::from(n * n)))
}

fn bergman_fueter_ball_closed(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Quaternion<f64> {
    let rr = r_factor(q, r);
    let rb = r.conj();
    (rr + bergman_ball_closed(q, r) * 2.0) * rr * (rb * rb) * -4.0
}

/// `K_BF^𝔹(q, r) = −2 Σ (k+1)(k+2)(k+3) Q_k(q) r̄^{k+2}`, or `−4[R + 2K_𝔹] R r̄²`.
pub fn bergman_fueter_ball(q: &Quaternion<f64>, r: &Quaternion<f64>, n: usize, form: Form) -> Result<KernelValue> {
    require_ball("bergman_fueter_ball", q, r)?;
    match form {
        Form::Closed => Ok(KernelValue::exact(bergman_fueter_ball_closed(q, r))),
        Form::Series => {
            let rb = r.conj();
            let a: Vec<_> = appell_values(q, n, AppellScale::Unit)
                .into_iter()
                .enumerate()
                .map(|(k, v)| {
                    let kf = k as f64;
                    v * ((kf + 1.0) * (kf + 2.0) * (kf + 3.0))
                })
                .collect();
            let value = horner_left(&a, &rb) * (rb * rb) * -2.0;
            let lt = ln_abs(q.abs() * r.abs());
            let tail = 2.0 * r.norm_sqr() * ratio_tail(|k| ln_poly_geometric(k, &[1.0, 2.0, 3.0], lt), n);
            Ok(KernelValue { value, tail })
        }
    }
}

/// `K_BF^{ℍ⁺}(q, r) = −(4/π)[P² + 2(q̄² + 2q̄r̄ + r̄²)P³]`, which is `Δ_q K_{ℍ⁺}`.
pub fn bergman_fueter_halfspace(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<Quaternion<f64>> {
    require_halfspace("bergman_fueter_halfspace", q, r)?;
    let p = p_factor(q, r);
    let p2 = p * p;
    Ok((p2 + halfspace_numerator(q, r) * p2 * p * 2.0) * (-4.0 / PI))
}

/// `K_BF^{𝔹⁺} = K_BF^𝔹 + K_BF^{ℍ⁺}`.
pub fn bergman_fueter_halfball(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<Quaternion<f64>> {
    require_halfball("bergman_fueter_halfball", q, r)?;
    Ok(bergman_fueter_ball_closed(q, r) + bergman_fueter_halfspace(q, r)?)
}

/// `Σ_{k≤n} (k+1)(k+2)(k+3) Q_k(q) r̄^k`.
pub fn generating_series(q: &Quaternion<f64>, r: &Quaternion<f64>, n: usize) -> KernelValue {
    let rb = r.conj();
    let a: Vec<_> = appell_values(q, n, AppellScale::Unit)
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let kf = k as f64;
            v * ((kf + 1.0) * (kf + 2.0) * (kf + 3.0))
        })
        .collect();
    let lt = ln_abs(q.abs() * r.abs());
    let tail = ratio_tail(|k| ln_poly_geometric(k, &[1.0, 2.0, 3.0], lt), n);
    KernelValue { value: horner_left(&a, &rb), tail }
}

/// `2R(q, r)² + 4K_𝔹(q, r)R(q, r)`.
pub fn generating_closed(q: &Quaternion<f64>, r: &Quaternion<f64>) -> Result<Quaternion<f64>> {
    require_ball("generating_function", q, r)?;
    let rr = r_factor(q, r);
    Ok(rr * rr * 2.0 + bergman_ball_closed(q, r) * rr * 4.0)
}

/// `G(p, q) = Σ T_k(p) conj(T_k(q))`.
pub fn rkhs_g(p: &Quaternion<f64>, q: &Quaternion<f64>, n: usize) -> KernelValue {
    let tp = t_values(p, n);
    let tq = t_values(q, n);
    let terms: Vec<_> = tp.iter().zip(&tq).map(|(a, b)| *a * b.conj()).collect();
    let lt = ln_abs(p.abs() * q.abs());
    let tail = ratio_tail(|k| ln_poly_geometric(k, &[1.0, 2.0], lt) - ln_factorial(k), n);
    KernelValue { value: pairwise_sum(&terms), tail }
}

/// `L(q, r) = Σ (k+1)²(k+2)²(k+3) Q_k(q) Q_k(r̄)`, defined for `|q||r| < 1`.
pub fn rkhs_l(q: &Quaternion<f64>, r: &Quaternion<f64>, n: usize) -> Result<KernelValue> {
    let t = q.abs() * r.abs();
    if t >= 1.0 {
        return Err(Error::Divergent { what: "rkhs_L", ratio: t });
    }
    let qq = appell_values(q, n, AppellScale::Unit);
    let qr = appell_values(&r.conj(), n, AppellScale::Unit);
    let terms: Vec<_> = qq
        .iter()
        .zip(&qr)
        .enumerate()
        .map(|(k, (a, b))| {
            let kf = k as f64;
            *a * *b * ((kf + 1.0).powi(2) * (kf + 2.0).powi(2) * (kf + 3.0))
        })
        .collect();
    let lt = ln_abs(t);
    let tail = ratio_tail(|k| ln_poly_geometric(k, &[1.0, 1.0, 2.0, 2.0, 3.0], lt), n);
    Ok(KernelValue { value: pairwise_sum(&terms), tail })
}
