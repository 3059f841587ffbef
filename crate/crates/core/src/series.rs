//! Real-coefficient polynomials in `q, q̄`, slice power series `Σ q^k c_k` and
//! regular series `Σ Q_k(q) α_k`, with a plain CSV exchange format.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::appell::{appell_values, AppellScale};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::scalar::{Rational, Scalar};

/// `Σ c_{ab} q^a q̄^b` with real coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct QQbarPoly<T = Rational> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> QQbarPoly<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(a: u32, b: u32, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    /// Adds `c q^a q̄^b`, pruning the entry if it cancels.
    pub fn add_term(&mut self, a: u32, b: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> T {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &T)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree `a + b`, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in self.terms() {
            out.add_term(a, b, c.clone() * s.clone());
        }
        out
    }

    /// `q · p`. Powers of `q` and `q̄` commute, so this only shifts `a`.
    pub fn mul_q(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + 1, b), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients, i.e. the value at `q = 1`.
    pub fn coefficient_sum(&self) -> T {
        self.terms.values().cloned().fold(T::zero(), |acc, c| acc + c)
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> QQbarPoly<U> {
        let mut out = QQbarPoly::zero();
        for (a, b, c) in self.terms() {
            out.add_term(a, b, f(c));
        }
        out
    }

    pub fn to_f64(&self) -> QQbarPoly<f64> {
        self.map_coeffs(Scalar::to_f64)
    }

    pub fn eval(&self, q: &Quaternion<T>) -> Quaternion<T> {
        qq_eval(self, q)
    }
}

impl<T: Scalar> Add for QQbarPoly<T> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (k, c) in o.terms {
            self.add_term(k.0, k.1, c);
        }
        self
    }
}

impl<T: Scalar> Neg for QQbarPoly<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<T: Scalar> Sub for QQbarPoly<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

pub fn poly_add<T: Scalar>(p: &QQbarPoly<T>, r: &QQbarPoly<T>) -> QQbarPoly<T> {
    p.clone() + r.clone()
}

pub fn poly_scale<T: Scalar>(p: &QQbarPoly<T>, s: &T) -> QQbarPoly<T> {
    p.scale(s)
}

/// `Σ c_{ab} q^a conj(q)^b`.
pub fn qq_eval<T: Scalar>(p: &QQbarPoly<T>, q: &Quaternion<T>) -> Quaternion<T> {
    let Some(_) = p.degree() else {
        return Quaternion::zero();
    };
    let max_a = p.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
    let max_b = p.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
    let qa = q.powers(max_a);
    let qb = q.conj().powers(max_b);
    let mut acc = Quaternion::zero();
    for (a, b, c) in p.terms() {
        acc += (qa[a as usize].clone() * qb[b as usize].clone()).scale(c);
    }
    acc
}

/// Evaluates an exact polynomial at a float point.
pub fn qq_eval_f64(p: &QQbarPoly<Rational>, q: &Quaternion<f64>) -> Quaternion<f64> {
    qq_eval(&p.to_f64(), q)
}

/// `Σ_k q^k c_k` with right coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct SliceSeries<T = f64> {
    pub coeffs: Vec<Quaternion<T>>,
}

impl<T: Scalar> SliceSeries<T> {
    pub fn new(coeffs: Vec<Quaternion<T>>) -> Self {
        Self { coeffs }
    }

    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Quaternion::zero(); n + 1];
        coeffs[n] = Quaternion::one();
        Self { coeffs }
    }

    pub fn coeff(&self, k: usize) -> Quaternion<T> {
        self.coeffs.get(k).cloned().unwrap_or_else(Quaternion::zero)
    }

    pub fn eval(&self, q: &Quaternion<T>) -> Quaternion<T> {
        slice_eval(self, q)
    }
}

/// Horner form `c₀ + q(c₁ + q(c₂ + …))`.
pub fn slice_eval<T: Scalar>(f: &SliceSeries<T>, q: &Quaternion<T>) -> Quaternion<T> {
    let mut acc = Quaternion::zero();
    for c in f.coeffs.iter().rev() {
        acc = q.clone() * acc + c.clone();
    }
    acc
}

/// `Σ_k Q_k(q) α_k` with right coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct RegularSeries<T = f64> {
    pub coeffs: Vec<Quaternion<T>>,
}

impl<T: Scalar> RegularSeries<T> {
    pub fn new(coeffs: Vec<Quaternion<T>>) -> Self {
        Self { coeffs }
    }

    pub fn coeff(&self, k: usize) -> Quaternion<T> {
        self.coeffs.get(k).cloned().unwrap_or_else(Quaternion::zero)
    }
}

impl RegularSeries<f64> {
    pub fn eval(&self, q: &Quaternion<f64>) -> Quaternion<f64> {
        regular_eval(self, q)
    }
}

/// Float evaluation of `Σ Q_k(q) α_k`.
pub fn regular_eval(g: &RegularSeries<f64>, q: &Quaternion<f64>) -> Quaternion<f64> {
    if g.coeffs.is_empty() {
        return Quaternion::zero();
    }
    let qs = appell_values(q, g.coeffs.len() - 1, AppellScale::Unit);
    qs.iter()
        .zip(&g.coeffs)
        .fold(Quaternion::zero(), |acc, (qk, a)| acc + *qk * *a)
}

/// Exact evaluation of `Σ Q_k(q) α_k` from explicit polynomials `Q_k`.
pub fn regular_eval_exact(
    g: &RegularSeries<Rational>,
    basis: &[QQbarPoly<Rational>],
    q: &Quaternion<Rational>,
) -> Result<Quaternion<Rational>> {
    if g.coeffs.len() > basis.len() {
        return Err(Error::InvalidArgument(format!(
            "series of length {} needs {} basis polynomials, have {}",
            g.coeffs.len(),
            g.coeffs.len(),
            basis.len()
        )));
    }
    let mut acc = Quaternion::zero();
    for (p, a) in basis.iter().zip(&g.coeffs) {
        acc += qq_eval(p, q) * a.clone();
    }
    Ok(acc)
}

/// Writes `k,w,x,y,z` rows with a header.
pub fn write_coeffs_csv<T: Scalar, W: Write>(coeffs: &[Quaternion<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "w", "x", "y", "z"])?;
    for (k, c) in coeffs.iter().enumerate() {
        w.write_record([
            k.to_string(),
            c.w.to_string(),
            c.x.to_string(),
            c.y.to_string(),
            c.z.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads `k,w,x,y,z` rows. Missing indices are zero; rows may come in any order.
pub fn read_coeffs_csv<T: Scalar, R: Read>(input: R) -> Result<Vec<Quaternion<T>>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut out: Vec<Quaternion<T>> = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 5 {
            return Err(Error::CsvFormat { row, detail: format!("expected 5 fields, got {}", rec.len()) });
        }
        let k: usize = rec[0]
            .parse()
            .map_err(|_| Error::CsvFormat { row, detail: format!("bad index {:?}", &rec[0]) })?;
        let mut vals = Vec::with_capacity(4);
        for field in rec.iter().skip(1) {
            let v = field
                .parse::<T>()
                .map_err(|_| Error::CsvFormat { row, detail: format!("bad number {field:?}") })?;
            vals.push(v);
        }
        if out.len() <= k {
            out.resize(k + 1, Quaternion::zero());
        }
        let mut it = vals.into_iter();
        out[k] = Quaternion::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        );
    }
    Ok(out)
}

/// Writes `a,b,coeff` rows with a header.
pub fn write_poly_csv<T: Scalar, W: Write>(p: &QQbarPoly<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["a", "b", "coeff"])?;
    for (a, b, c) in p.terms() {
        w.write_record([a.to_string(), b.to_string(), c.to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_poly_csv<T: Scalar, R: Read>(input: R) -> Result<QQbarPoly<T>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut p = QQbarPoly::zero();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != 3 {
            return Err(Error::CsvFormat { row, detail: format!("expected 3 fields, got {}", rec.len()) });
        }
        let bad = |what: &str| Error::CsvFormat { row, detail: format!("bad {what}") };
        let a: u32 = rec[0].parse().map_err(|_| bad("a"))?;
        let b: u32 = rec[1].parse().map_err(|_| bad("b"))?;
        let c: T = rec[2].parse().map_err(|_| bad("coeff"))?;
        p.add_term(a, b, c);
    }
    Ok(p)
}
