//! Hamilton quaternions over a generic [`Scalar`], slice decomposition and the
//! representation formula for slice regular extensions.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `w + x i + y j + z k`.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Quaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }
}

impl<T: Scalar> Quaternion<T> {
    pub fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    pub fn norm_sqr(&self) -> T {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    pub fn re(&self) -> T {
        self.w.clone()
    }

    /// Vector part `x i + y j + z k`.
    pub fn vector(&self) -> Self {
        Self::new(T::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    /// `q⁻¹ = q̄ / |q|²`; the caller guarantees `q ≠ 0`.
    pub fn inverse(&self) -> Self {
        let n = self.norm_sqr();
        let c = self.conj();
        Self::new(
            c.w / n.clone(),
            c.x / n.clone(),
            c.y / n.clone(),
            c.z / n,
        )
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// `[1, q, q², …, q^n]`.
    pub fn powers(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Self::one());
        for k in 1..=n {
            let next = out[k - 1].clone() * self.clone();
            out.push(next);
        }
        out
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Quaternion<U> {
        Quaternion::new(f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }

    pub fn to_f64(&self) -> Quaternion<f64> {
        self.map(Scalar::to_f64)
    }
}

impl Quaternion<f64> {
    pub fn abs(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean distance in ℝ⁴.
    pub fn dist(&self, other: &Self) -> f64 {
        (*self - *other).abs()
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Adds `h` to coordinate `axis` (0 = real part).
    pub fn shifted(&self, axis: usize, h: f64) -> Self {
        let mut a = self.to_array();
        a[axis] += h;
        Self::from_array(a)
    }
}

impl<T: Scalar> Zero for Quaternion<T> {
    fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl<T: Scalar> One for Quaternion<T> {
    fn one() -> Self {
        Self::real(T::one())
    }
}

impl<T: Scalar> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Scalar> AddAssign for Quaternion<T> {
    fn add_assign(&mut self, o: Self) {
        *self = self.clone() + o;
    }
}

impl<T: Scalar> SubAssign for Quaternion<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = self.clone() - o;
    }
}

impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        Self::new(
            a1.clone() * a2.clone()
                - b1.clone() * b2.clone()
                - c1.clone() * c2.clone()
                - d1.clone() * d2.clone(),
            a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone()
                - d1.clone() * c2.clone(),
            a1.clone() * c2.clone() - b1.clone() * d2.clone()
                + c1.clone() * a2.clone()
                + d1.clone() * b2.clone(),
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for Quaternion<f64> {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl fmt::Display for Quaternion<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?},{:?},{:?},{:?}", self.w, self.x, self.y, self.z)
    }
}

/// Hamilton product, spelled as a function for call sites that read better that way.
pub fn mul<T: Scalar>(a: &Quaternion<T>, b: &Quaternion<T>) -> Quaternion<T> {
    a.clone() * b.clone()
}

/// An element of 𝕊 = { I : I² = −1 }, i.e. a unit pure quaternion.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ImaginaryUnit<T> {
    dir: Quaternion<T>,
}

impl<T: Scalar> ImaginaryUnit<T> {
    /// Accepts a pure imaginary quaternion of unit norm (exactly for rationals,
    /// within `1e-12` for floats).
    pub fn new(q: Quaternion<T>) -> Result<Self> {
        if !q.w.is_zero() || !q.norm_sqr().is_unit_value() {
            return Err(Error::NotAUnit(format!("{q:?}")));
        }
        Ok(Self { dir: q })
    }

    pub fn i() -> Self {
        Self { dir: Quaternion::i() }
    }

    pub fn j() -> Self {
        Self { dir: Quaternion::j() }
    }

    pub fn k() -> Self {
        Self { dir: Quaternion::k() }
    }

    pub fn as_quaternion(&self) -> &Quaternion<T> {
        &self.dir
    }

    pub fn neg(&self) -> Self {
        Self { dir: -self.dir.clone() }
    }

    /// The point `re + im·I` of the slice ℂ_I.
    pub fn point(&self, re: T, im: T) -> Quaternion<T> {
        Quaternion::real(re) + self.dir.scale(&im)
    }
}

impl ImaginaryUnit<f64> {
    /// Normalizes a nonzero vector `(x, y, z)` onto 𝕊.
    pub fn from_vector(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !(n > 1e-12) || !n.is_finite() {
            return Err(Error::NotAUnit(format!("({x}, {y}, {z})")));
        }
        Ok(Self {
            dir: Quaternion::new(0.0, x / n, y / n, z / n),
        })
    }

    pub fn embed(&self, z: Complex64) -> Quaternion<f64> {
        self.point(z.re, z.im)
    }
}

/// `re + im·unit` with `im ≥ 0`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SlicePoint<T> {
    pub unit: ImaginaryUnit<T>,
    pub re: T,
    pub im: T,
}

impl<T: Scalar> SlicePoint<T> {
    pub fn new(unit: ImaginaryUnit<T>, re: T, im: T) -> Result<Self> {
        if im.is_negative_value() {
            return Err(Error::InvalidArgument("slice point needs im >= 0".into()));
        }
        Ok(Self { unit, re, im })
    }

    pub fn embed(&self) -> Quaternion<T> {
        self.unit.point(self.re.clone(), self.im.clone())
    }
}

/// Result of writing `q = re + im·unit` with `im ≥ 0`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SliceDecomposition {
    pub re: f64,
    pub im: f64,
    /// `None` exactly when `q` is real.
    pub unit: Option<ImaginaryUnit<f64>>,
}

impl SliceDecomposition {
    /// `re + i·im` as a complex number.
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// Embeds a complex value into the slice of this point. On the real axis the
    /// imaginary part of `z` must vanish and is dropped.
    pub fn embed(&self, z: Complex64) -> Quaternion<f64> {
        match &self.unit {
            Some(u) => u.embed(z),
            None => Quaternion::real(z.re),
        }
    }
}

pub fn slice_decompose(q: &Quaternion<f64>) -> SliceDecomposition {
    let im = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
    if im == 0.0 {
        return SliceDecomposition { re: q.w, im: 0.0, unit: None };
    }
    SliceDecomposition {
        re: q.w,
        im,
        unit: Some(ImaginaryUnit {
            dir: Quaternion::new(0.0, q.x / im, q.y / im, q.z / im),
        }),
    }
}

/// Representation formula on an explicit slice point:
/// `f(x + yI) = ½[f(x+yJ) + f(x−yJ)] + (I J / 2)[f(x−yJ) − f(x+yJ)]`,
/// where `f` is only ever evaluated on ℂ_J.
pub fn slice_holomorphic_eval_at<T, F>(f: F, point: &SlicePoint<T>, j: &ImaginaryUnit<T>) -> Quaternion<T>
where
    T: Scalar,
    F: Fn(&Quaternion<T>) -> Quaternion<T>,
{
    if point.im.is_zero() {
        return f(&Quaternion::real(point.re.clone()));
    }
    let plus = f(&j.point(point.re.clone(), point.im.clone()));
    let minus = f(&j.point(point.re.clone(), -point.im.clone()));
    let half = T::from_ratio(1, 2);
    let alpha = (plus.clone() + minus.clone()).scale(&half);
    let ij = point.unit.as_quaternion().clone() * j.as_quaternion().clone();
    alpha + ij * (minus - plus).scale(&half)
}

/// Extends a function known on ℂ_J to the quaternion `q` by the representation
/// formula. Real `q` is evaluated directly.
pub fn slice_holomorphic_eval<F>(f: F, q: &Quaternion<f64>, j: &ImaginaryUnit<f64>) -> Quaternion<f64>
where
    F: Fn(&Quaternion<f64>) -> Quaternion<f64>,
{
    let d = slice_decompose(q);
    match d.unit {
        None => f(&Quaternion::real(d.re)),
        Some(unit) => slice_holomorphic_eval_at(f, &SlicePoint { unit, re: d.re, im: d.im }, j),
    }
}

/// `e^{a q² + b q + c}` for real `a, b, c`, computed on the slice through `q`.
pub fn slice_exp(q: &Quaternion<f64>, a: f64, b: f64, c: f64) -> Quaternion<f64> {
    let d = slice_decompose(q);
    let z = d.complex();
    let w = z * z * a + z * b + c;
    d.embed(w.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion<f64> {
        Quaternion::new(w, x, y, z)
    }

    #[test]
    fn unit_products() {
        let i = Quaternion::<f64>::i();
        let j = Quaternion::<f64>::j();
        let k = Quaternion::<f64>::k();
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -Quaternion::one());
        assert_eq!(j * i, -k);
    }

    #[test]
    fn q_times_conj_is_norm() {
        let a = q(1.0, 2.0, 3.0, 4.0);
        assert_eq!(a * a.conj(), Quaternion::real(30.0));
        assert_eq!(a.conj() * a, Quaternion::real(30.0));
        assert_eq!(mul(&a, &Quaternion::one()), a);
    }

    #[test]
    fn exact_norm_identities() {
        let a = Quaternion::new(rational(1, 2), rational(-2, 3), rational(5, 7), rational(1, 11));
        let n = a.norm_sqr();
        assert_eq!(a.clone() * a.conj(), Quaternion::real(n.clone()));
        assert_eq!(a.conj() * a.clone(), Quaternion::real(n));
        assert_eq!(a.clone() * a.inverse(), Quaternion::<Rational>::one());
    }

    #[test]
    fn decompose_examples() {
        let d = slice_decompose(&q(1.0, 2.0, 0.0, 0.0));
        assert_eq!((d.re, d.im), (1.0, 2.0));
        assert_eq!(d.unit.unwrap(), ImaginaryUnit::i());

        let d = slice_decompose(&q(5.0, 0.0, 0.0, 0.0));
        assert_eq!((d.re, d.im), (5.0, 0.0));
        assert!(d.unit.is_none());

        let d = slice_decompose(&q(1.0, 1.0, 1.0, 0.0));
        let s = 0.5f64.sqrt();
        assert!((d.im - 2f64.sqrt()).abs() < 1e-15);
        let u = d.unit.unwrap();
        assert!(u.as_quaternion().dist(&q(0.0, s, s, 0.0)) < 1e-15);
    }

    #[test]
    fn unit_construction() {
        assert!(ImaginaryUnit::new(q(0.0, 0.6, 0.8, 0.0)).is_ok());
        assert!(ImaginaryUnit::new(q(0.1, 0.6, 0.8, 0.0)).is_err());
        assert!(ImaginaryUnit::new(q(0.0, 0.6, 0.9, 0.0)).is_err());
        assert!(ImaginaryUnit::from_vector(0.0, 0.0, 0.0).is_err());
        let exact = Quaternion::new(rational(0, 1), rational(3, 5), rational(4, 5), rational(0, 1));
        let u = ImaginaryUnit::new(exact).unwrap();
        let sq = u.as_quaternion().clone() * u.as_quaternion().clone();
        assert_eq!(sq, -Quaternion::<Rational>::one());
    }

    #[test]
    fn representation_formula_square() {
        let sq = |z: &Quaternion<f64>| *z * *z;
        let val = slice_holomorphic_eval(sq, &q(1.0, 2.0, 0.0, 0.0), &ImaginaryUnit::j());
        assert!(val.dist(&q(-3.0, 4.0, 0.0, 0.0)) < 1e-14);

        let c = q(0.3, -1.0, 2.0, 0.5);
        let val = slice_holomorphic_eval(|_| c, &q(0.2, 0.1, -0.4, 0.9), &ImaginaryUnit::k());
        assert!(val.dist(&c) < 1e-15);
    }

    #[test]
    fn representation_formula_exact_slice_independence() {
        let cube = |z: &Quaternion<Rational>| z.powi(3) + z.clone();
        let unit = ImaginaryUnit::new(Quaternion::new(
            rational(0, 1),
            rational(2, 3),
            rational(1, 3),
            rational(2, 3),
        ))
        .unwrap();
        let p = SlicePoint::new(unit, rational(1, 2), rational(3, 4)).unwrap();
        let a = slice_holomorphic_eval_at(cube, &p, &ImaginaryUnit::i());
        let b = slice_holomorphic_eval_at(cube, &p, &ImaginaryUnit::k());
        assert_eq!(a, b);
        assert_eq!(a, cube(&p.embed()));
    }

    #[test]
    fn slice_exp_examples() {
        assert!((slice_exp(&Quaternion::zero(), 0.4, -1.0, 0.7).w - 0.7f64.exp()).abs() < 1e-15);
        let t = 0.8;
        let v = slice_exp(&q(t, 0.0, 0.0, 0.0), -0.5, 1.3, 0.2);
        assert!((v.w - (-0.5 * t * t + 1.3 * t + 0.2f64).exp()).abs() < 1e-14);
        assert!(v.is_real());
        let u = ImaginaryUnit::from_vector(1.0, -2.0, 2.0).unwrap();
        let e = slice_exp(u.as_quaternion(), 0.0, 1.0, 0.0);
        let expect = Quaternion::real(1f64.cos()) + u.as_quaternion().scale(&1f64.sin());
        assert!(e.dist(&expect) < 1e-15);
    }
}
