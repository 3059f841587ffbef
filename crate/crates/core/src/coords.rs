//! Polynomials in the real coordinates `x₀, x₁, x₂, x₃` with exact quaternion
//! coefficients. Differentiation here is plain componentwise calculus, which
//! makes this an independent check on the closed-form operator table.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::quaternion::Quaternion;
use crate::scalar::{Rational, Scalar};
use crate::series::QQbarPoly;

type Exps = [u32; 4];

#[derive(Clone, PartialEq, Debug, Default)]
pub struct CoordPoly {
    terms: BTreeMap<Exps, Quaternion<Rational>>,
}

impl CoordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Quaternion<Rational>) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 4], c);
        p
    }

    fn add_term(&mut self, e: Exps, c: Quaternion<Rational>) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    /// `q = x₀ + x₁ i + x₂ j + x₃ k`, or `q̄` when `conj` is set.
    pub fn variable(conj: bool) -> Self {
        let mut p = Self::zero();
        let units = [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()];
        for (l, u) in units.into_iter().enumerate() {
            let mut e = [0; 4];
            e[l] = 1;
            let c = if conj && l > 0 { -u } else { u };
            p.add_term(e, c);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Expands `Σ c_{ab} q^a q̄^b` in coordinates.
    pub fn from_qq(p: &QQbarPoly<Rational>) -> Self {
        let q = Self::variable(false);
        let qb = Self::variable(true);
        let mut out = Self::zero();
        for (a, b, c) in p.terms() {
            let mut m = Self::constant(Quaternion::real(c.clone()));
            for _ in 0..a {
                m = m.mul(&q);
            }
            for _ in 0..b {
                m = m.mul(&qb);
            }
            out = out.add(&m);
        }
        out
    }

    pub fn partial(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[axis] == 0 {
                continue;
            }
            let mut d = *e;
            d[axis] -= 1;
            out.add_term(d, c.scale(&Rational::from_i64(i64::from(e[axis]))));
        }
        out
    }

    /// `u · p` for a constant quaternion `u`.
    pub fn left_mul(&self, u: &Quaternion<Rational>) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, u.clone() * c.clone());
        }
        out
    }

    fn dirac_signed(&self, sign: i64) -> Self {
        let units = [Quaternion::i(), Quaternion::j(), Quaternion::k()];
        let mut out = self.partial(0);
        for (l, u) in units.iter().enumerate() {
            out = out.add(&self.partial(l + 1).left_mul(&u.scale(&Rational::from_i64(sign))));
        }
        out
    }

    /// `∂₀p + i∂₁p + j∂₂p + k∂₃p`.
    pub fn dirac(&self) -> Self {
        self.dirac_signed(1)
    }

    /// `∂₀p − i∂₁p − j∂₂p − k∂₃p`.
    pub fn dirac_conj(&self) -> Self {
        self.dirac_signed(-1)
    }

    pub fn laplacian(&self) -> Self {
        (0..4).fold(Self::zero(), |acc, l| acc.add(&self.partial(l).partial(l)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{dirac_monomial, fueter_monomial};

    fn power(n: u32) -> CoordPoly {
        CoordPoly::from_qq(&QQbarPoly::monomial(n, 0, Rational::one()))
    }

    #[test]
    fn q_times_qbar_is_real_norm() {
        let n = CoordPoly::variable(false).mul(&CoordPoly::variable(true));
        assert_eq!(n, CoordPoly::variable(true).mul(&CoordPoly::variable(false)));
        assert_eq!(n.terms.len(), 4);
        assert!(n.terms.values().all(|c| c.is_real()));
    }

    #[test]
    fn derivatives_of_powers() {
        for n in 0..=7 {
            let p = power(n);
            assert_eq!(p.dirac(), CoordPoly::from_qq(&dirac_monomial(n)), "∂ q^{n}");
            assert_eq!(p.laplacian(), CoordPoly::from_qq(&fueter_monomial(n)), "Δ q^{n}");
            assert_eq!(p.dirac_conj().dirac(), p.laplacian());
        }
    }
}
