//! Verification suites for `verify`. Each check reports a measured error and
//! the tolerance it must meet; exact checks use error 0 or 1 with tolerance 0.

use std::f64::consts::PI;
use std::io::Write;

use fueter_core::appell::{
    appell_q, appell_q_via_fueter, appell_values, t_coeff, t_coeff_pochhammer, t_coeffs_sum_to_one, t_values, AppellScale,
};
use fueter_core::kernels::{
    bergman_ball, bergman_fueter_ball, bergman_fueter_halfball, bergman_fueter_halfspace, bergman_halfball,
    bergman_halfball_extension, bergman_halfball_star, bergman_halfspace, bergman_wedge, fock_fueter_kernel,
    fock_kernel, generating_closed, generating_series, rkhs_g, rkhs_l, wedge_complex, Form,
};
use fueter_core::operators::{
    cauchy_fueter_fd, dirac_monomial, euler_apply, fueter_monomial, fueter_series, laplacian_fd, OperatorTable, FD_STEP,
};
use fueter_core::quadrature::{disk_rule, gauss_hermite, r4_gauss, slice_gauss};
use fueter_core::quaternion::slice_exp;
use fueter_core::scalar::{factorial, rational, rational_to_f64};
use fueter_core::series::{qq_eval_f64, regular_eval};
use fueter_core::transforms::{
    bargmann_fock_fueter, bargmann_fock_fueter_coefficients, bargmann_fock_fueter_quadrature, coefficient_inner_product,
    coefficient_inner_product_f64, fock_fueter_transform, fock_moment_closed, fock_moment_integral, g_coefficients,
    integral_representation_q, l_coefficients, membership_check, orthonormal_inner_product, phi_gram, phi_gram_series,
    phi_kernel, phi_kernel_quadrature, quadrature_inner_product, regular_to_slice, segal_bargmann,
    segal_bargmann_coefficients, slice_to_regular, RepresentationSource, Signal, SpaceTag,
};
use fueter_core::{ImaginaryUnit, QQbarPoly, Quaternion, Rational, RegularSeries, Result, SliceSeries};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;

pub const SUITES: [&str; 11] = [
    "appell",
    "fueter-map",
    "fock-kernel",
    "transforms",
    "integral-reps",
    "bergman-ball",
    "bergman-halfspace",
    "bergman-halfball",
    "wedge",
    "generating-function",
    "rkhs",
];

/// Finite-difference checks cannot beat the stencil's truncation error.
const FD_TOL: f64 = 1e-4;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub err: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.err <= self.tol
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn measure(&mut self, name: impl Into<String>, tol: f64, f: impl FnOnce() -> Result<f64>) {
        let err = f().unwrap_or(f64::INFINITY);
        self.0.push(Check { name: name.into(), err, tol });
    }

    fn exact(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<bool>) {
        let ok = f().unwrap_or(false);
        self.0.push(Check { name: name.into(), err: if ok { 0.0 } else { 1.0 }, tol: 0.0 });
    }
}

/// Seeded test points: components uniform in `[−0.6, 0.6]`.
struct Points(ChaCha8Rng);

impl Points {
    fn new(seed: u64, salt: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
    }

    fn raw(&mut self) -> Quaternion<f64> {
        let mut c = || self.0.gen_range(-0.6..=0.6);
        Quaternion::new(c(), c(), c(), c())
    }

    /// `|q| ≤ 0.6`.
    fn ball(&mut self) -> Quaternion<f64> {
        loop {
            let v = self.raw();
            if v.abs() <= 0.6 {
                return v;
            }
        }
    }

    fn halfspace(&mut self) -> Quaternion<f64> {
        self.raw() + Quaternion::one()
    }

    /// `|q| ≤ 0.65` with real part at least `0.05`.
    fn halfball(&mut self) -> Quaternion<f64> {
        let mut v = self.ball();
        v.w = v.w.abs() + 0.05;
        v
    }

    fn unit(&mut self) -> ImaginaryUnit<f64> {
        loop {
            let v = self.raw();
            if let Ok(u) = ImaginaryUnit::from_vector(v.x, v.y, v.z) {
                return u;
            }
        }
    }

    fn real(&mut self) -> f64 {
        self.0.gen_range(-0.6..=0.6)
    }

    fn exact_q(&mut self) -> Quaternion<Rational> {
        let mut r = || rational(self.0.gen_range(-12..=12), self.0.gen_range(1..=7));
        Quaternion::new(r(), r(), r(), r())
    }
}

fn int(n: i64) -> Rational {
    rational(n, 1)
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    let mut m: f64 = 0.0;
    for v in it {
        let v = v?;
        m = if v.is_nan() { f64::NAN } else { m.max(v) };
    }
    Ok(m)
}

fn rel(a: &Quaternion<f64>, b: &Quaternion<f64>) -> f64 {
    a.dist(b) / b.abs().max(1.0)
}

fn appell(cfg: &RunConfig, c: &mut Checks) {
    let n = cfg.max_degree;
    let table = OperatorTable::new(n + 2);
    c.exact(format!("sum_j T^k_j = 1 for k <= {n}"), || Ok((0..=n).all(t_coeffs_sum_to_one)));
    c.exact(format!("closed and Pochhammer T^k_j agree for k <= {n}"), || {
        Ok((0..=n).all(|k| (0..=k).all(|j| t_coeff(k, j) == t_coeff_pochhammer(k, j))))
    });
    c.exact(format!("Q_k is Fueter regular for k <= {n}"), || {
        for k in 0..=n {
            if !table.d_apply(&appell_q(k))?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact(format!("Euler operator E Q_k = k Q_k for k <= {n}"), || {
        Ok((0..=n).all(|k| euler_apply(&appell_q(k)) == appell_q(k).scale(&int(i64::from(k)))))
    });
    c.exact(format!("Appell property (1/2) dbar Q_k = k Q_(k-1) for k <= {n}"), || {
        for k in 1..=n {
            let lowered = table.dbar_apply(&appell_q(k))?.scale(&rational(1, 2));
            if lowered != appell_q(k - 1).scale(&int(i64::from(k))) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact(format!("Q_k equals the normalized Fueter image of q^(k+2) for k <= {n}"), || {
        Ok((0..=n).all(|k| appell_q(k) == appell_q_via_fueter(k)))
    });
    let mut pts = Points::new(cfg.seed, 1);
    let sample: Vec<Quaternion<f64>> = (0..5).map(|_| pts.ball() * 1.5).collect();
    c.measure(format!("fast Q_k recurrence matches exact polynomials for k <= {n}"), cfg.tol, || {
        max_over(sample.iter().flat_map(|p| {
            let fast = appell_values(p, n as usize, AppellScale::Unit);
            (0..=n).map(move |k| Ok(rel(&fast[k as usize], &qq_eval_f64(&appell_q(k), p))))
        }))
    });
}

fn fueter_map(cfg: &RunConfig, c: &mut Checks) {
    let n = cfg.max_degree;
    let table = OperatorTable::new(n + 2);
    let mono = |k: u32| QQbarPoly::monomial(k, 0, int(1));
    c.exact("Laplacian of q^2 is -4", || Ok(table.laplacian_apply(&mono(2))? == QQbarPoly::constant(int(-4))));
    c.exact("Laplacian of 1 and q vanish", || {
        Ok(table.laplacian_apply(&mono(0))?.is_empty() && table.laplacian_apply(&mono(1))?.is_empty())
    });
    c.exact(format!("closed-form Fueter image of q^n matches the operator table for n <= {n}"), || {
        for k in 0..=n {
            if table.laplacian_apply(&mono(k))? != fueter_monomial(k) || table.dbar_apply(&dirac_monomial(k))? != fueter_monomial(k) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact(format!("recursion f_(n+1) = 2 d(q^n) + q f_n for n < {n}"), || {
        for k in 0..n {
            let rec = table.d_apply(&mono(k))?.scale(&int(2)) + fueter_monomial(k).mul_q();
            if fueter_monomial(k + 1) != rec {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact(format!("dbar f_(k+2) = 2(k+2) f_(k+1) for k <= {}", n - 1), || {
        for k in 0..n {
            if table.dbar_apply(&fueter_monomial(k + 1))? != fueter_monomial(k).scale(&int(2 * (i64::from(k) + 1))) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    let mut pts = Points::new(cfg.seed, 2);
    let coeffs: Vec<Quaternion<f64>> = (0..7).map(|_| pts.raw()).collect();
    let f = SliceSeries::new(coeffs);
    let g = fueter_series(&f);
    let sample: Vec<Quaternion<f64>> = (0..10).map(|_| pts.ball()).collect();
    c.measure("coefficient Fueter map matches a finite-difference Laplacian", FD_TOL, || {
        Ok(sample.iter().map(|p| laplacian_fd(|x| f.eval(x), p, FD_STEP).dist(&regular_eval(&g, p))).fold(0.0, f64::max))
    });
    c.measure("Gaussian norm of the Fueter image of q^n within 2n(n-1)sqrt((n-1)!) for n <= 8", 1e-6, || {
        let rule = r4_gauss(16)?;
        let mut excess = f64::NEG_INFINITY;
        for k in 0..=8u32 {
            let fk = fueter_monomial(k);
            let e = quadrature_inner_product(|x| qq_eval_f64(&fk, x), |x| qq_eval_f64(&fk, x), SpaceTag::RBH, &rule, f64::INFINITY)?;
            let kf = f64::from(k);
            let bound = if k == 0 {
                0.0
            } else {
                2.0 * kf * (kf - 1.0) * rational_to_f64(&Rational::from_integer(factorial(k - 1))).sqrt()
            };
            excess = excess.max(e.value.w.max(0.0).sqrt() - bound);
        }
        Ok(excess)
    });
}

fn fock_kernel_suite(cfg: &RunConfig, c: &mut Checks) {
    let nt = cfg.truncation;
    let mut pts = Points::new(cfg.seed, 3);
    let sample: Vec<(Quaternion<f64>, Quaternion<f64>)> = (0..20).map(|_| (pts.ball(), pts.ball())).collect();
    let reals: Vec<(f64, f64)> = (0..20).map(|_| (pts.real() * 3.0, pts.real() * 3.0)).collect();
    c.measure("Fock kernel on the real axis is exp(ab)", cfg.tol, || {
        Ok(reals.iter().map(|&(a, b)| {
            let v = fock_kernel(&Quaternion::real(a), &Quaternion::real(b), nt).value;
            (v.w - (a * b).exp()).abs() / (a * b).exp()
        }).fold(0.0, f64::max))
    });
    c.measure("Fock kernel K(p, 0) = 1 and K(i, i) = e", cfg.tol, || {
        let a = fock_kernel(&sample[0].0, &Quaternion::zero(), nt).value.dist(&Quaternion::one());
        let b = fock_kernel(&Quaternion::i(), &Quaternion::i(), nt).value.dist(&Quaternion::real(1f64.exp()));
        Ok(a.max(b))
    });
    c.measure("Fock-Fueter kernel at real q is -2 conj(p)^2 exp(q conj(p))", cfg.tol, || {
        Ok(reals.iter().zip(&sample).map(|(&(x, _), (_, p))| {
            let pb = p.conj();
            let want = pb * pb * slice_exp(&pb, 0.0, x, 0.0) * -2.0;
            rel(&fock_fueter_kernel(&Quaternion::real(x), p, nt).value, &want)
        }).fold(0.0, f64::max))
    });
    c.exact("Fock-Fueter kernel bound |K(q, p)| <= 2|p|^2 exp(|q||p|)", || {
        Ok(sample.iter().all(|(a, b)| {
            let (a, b) = (*a * 3.0, *b * 3.0);
            fock_fueter_kernel(&a, &b, nt).value.abs() <= 2.0 * b.norm_sqr() * (a.abs() * b.abs()).exp() * (1.0 + 1e-12)
        }))
    });
    c.measure("Fock-Fueter kernel is Fueter regular in q", FD_TOL, || {
        Ok(sample.iter().map(|(a, b)| cauchy_fueter_fd(|x| fock_fueter_kernel(x, b, nt).value, a, FD_STEP).abs()).fold(0.0, f64::max))
    });
    let units = [pts.unit(), pts.unit()];
    c.measure("slice Fock Gram matrix <p^m, p^n> = m! delta_mn for m, n <= 10 (relative)", cfg.tol, || {
        let mut worst: f64 = 0.0;
        for u in &units {
            let rule = slice_gauss(u, cfg.quad_order)?;
            for m in 0..=10u32 {
                for n in 0..=10u32 {
                    let e = quadrature_inner_product(|p| p.powi(m), |p| p.powi(n), SpaceTag::FockSlice, &rule, f64::INFINITY)?;
                    let want = if m == n { SpaceTag::FockSlice.weight(m as usize) } else { 0.0 };
                    worst = worst.max(e.value.dist(&Quaternion::real(want)) / want.max(1.0));
                }
            }
        }
        Ok(worst)
    });
}

fn unit_vector(n: usize) -> Vec<Quaternion<f64>> {
    let mut v = vec![Quaternion::zero(); n + 1];
    v[n] = Quaternion::one();
    v
}

fn transforms(cfg: &RunConfig, c: &mut Checks) {
    let nt = cfg.truncation;
    let mut pts = Points::new(cfg.seed, 4);
    let sample: Vec<Quaternion<f64>> = (0..5).map(|_| pts.ball()).collect();
    c.measure("Segal-Bargmann transform of xi_n is q^n / sqrt(n!) for n <= 8", cfg.tol, || {
        let gh = gauss_hermite(cfg.quad_order)?;
        let mut worst: f64 = 0.0;
        for n in 0..=8 {
            let a = unit_vector(n);
            for p in &sample {
                let e = segal_bargmann(Signal::Coefficients(&a), p, &gh, f64::INFINITY)?;
                worst = worst.max(e.value.dist(&segal_bargmann_coefficients(&a, p)));
            }
        }
        let z = Quaternion::new(0.5, 0.5, 0.0, 0.0);
        let e = segal_bargmann(Signal::Coefficients(&unit_vector(3)), &z, &gh, f64::INFINITY)?;
        Ok(worst.max(e.value.dist(&(z.powi(3) * (1.0 / 6f64.sqrt())))))
    });
    c.measure("Fock-Fueter transform matches the coefficient Fueter map on two slices", cfg.tol, || {
        let coeffs: Vec<Quaternion<f64>> = (0..6).map(|_| pts.raw()).collect();
        let f = SliceSeries::new(coeffs.clone());
        let g = RegularSeries::new(slice_to_regular(&coeffs));
        let diag = ImaginaryUnit::from_vector(1.0, 1.0, 0.0)?;
        let mut worst: f64 = 0.0;
        for u in [ImaginaryUnit::i(), diag] {
            let rule = slice_gauss(&u, cfg.quad_order)?;
            for p in &sample {
                let e = fock_fueter_transform(&f, p, &rule, nt, f64::INFINITY)?;
                worst = worst.max(rel(&e.value, &regular_eval(&g, p)));
            }
            let e = fock_fueter_transform(&SliceSeries::monomial(2), &sample[0], &rule, nt, f64::INFINITY)?;
            worst = worst.max(e.value.dist(&Quaternion::real(-4.0)));
        }
        Ok(worst)
    });
    c.measure("Phi kernel: series and double-quadrature routes agree", cfg.tol, || {
        let rule = slice_gauss(&ImaginaryUnit::i(), cfg.quad_order)?;
        let mut worst: f64 = 0.0;
        for (p, x) in [(Quaternion::new(0.0, 0.5, 0.0, 0.0), 0.3), (sample[1], -0.8), (sample[2], 1.4)] {
            let e = phi_kernel_quadrature(&p, x, &rule, nt, f64::INFINITY)?;
            worst = worst.max(e.value.dist(&phi_kernel(&p, x, nt).value));
        }
        Ok(worst)
    });
    c.measure("integral of Phi(q, x) Phi(p, x) dx = 4 sum T_k(q) T_k(p)", cfg.tol, || {
        let gh = gauss_hermite(cfg.quad_order)?;
        max_over(sample.windows(2).map(|w| {
            let e = phi_gram(&w[0], &w[1], &gh, nt, f64::INFINITY)?;
            Ok(e.value.dist(&phi_gram_series(&w[0], &w[1], nt)))
        }))
    });
    c.measure("Bargmann-Fock-Fueter transform of xi_n is -2 T_(n-2), and 0 for n <= 1", cfg.tol, || {
        let gh = gauss_hermite(cfg.quad_order)?;
        let mut worst: f64 = 0.0;
        for n in 0..=8 {
            let a = unit_vector(n);
            for p in &sample {
                let want = if n < 2 { Quaternion::zero() } else { t_values(p, n - 2)[n - 2] * -2.0 };
                let e = bargmann_fock_fueter_quadrature(&a, p, &gh, nt, f64::INFINITY)?;
                worst = worst.max(e.value.dist(&want)).max(bargmann_fock_fueter(&a, p).dist(&want));
            }
        }
        Ok(worst)
    });
    c.exact("<S phi, S psi> = 4 <phi, psi> exactly on xi-indices >= 2, and |S phi| <= 2|phi|", || {
        for _ in 0..10 {
            let mut phi: Vec<Quaternion<Rational>> = (0..8).map(|_| pts.exact_q()).collect();
            let mut psi: Vec<Quaternion<Rational>> = (0..8).map(|_| pts.exact_q()).collect();
            let s = bargmann_fock_fueter_coefficients(&phi);
            if orthonormal_inner_product(&s, &s).w > coefficient_inner_product(&phi, &phi, SpaceTag::L2R).w * int(4) {
                return Ok(false);
            }
            for v in [&mut phi, &mut psi] {
                v[0] = Quaternion::zero();
                v[1] = Quaternion::zero();
            }
            let lhs = orthonormal_inner_product(&bargmann_fock_fueter_coefficients(&phi), &bargmann_fock_fueter_coefficients(&psi));
            if lhs != coefficient_inner_product(&phi, &psi, SpaceTag::HSub).scale(&int(4)) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("Fueter coefficient maps round-trip and satisfy the norm bounds with constant 4", || {
        for _ in 0..10 {
            let cs: Vec<Quaternion<Rational>> = (0..8).map(|_| pts.exact_q()).collect();
            let alpha = slice_to_regular(&cs);
            let ok = slice_to_regular(&regular_to_slice(&alpha)) == alpha
                && coefficient_inner_product(&alpha, &alpha, SpaceTag::AH).w
                    <= coefficient_inner_product(&cs, &cs, SpaceTag::FockSlice).w * int(4)
                && coefficient_inner_product(&alpha, &alpha, SpaceTag::BB).w
                    <= coefficient_inner_product(&cs, &cs, SpaceTag::BergmanSlice).w * int(4);
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.exact("A(H) norm of Q_0 is 1/2", || Ok(membership_check(&unit_vector(0), SpaceTag::AH).norm_sq == 0.5));
}

fn integral_reps(cfg: &RunConfig, c: &mut Checks) {
    let mut pts = Points::new(cfg.seed, 5);
    for (src, label) in [
        (RepresentationSource::Fock, "Fock"),
        (RepresentationSource::Hermite, "Hermite"),
        (RepresentationSource::Bergman, "Bergman"),
    ] {
        let sample: Vec<Quaternion<f64>> = (0..5).map(|_| pts.ball()).collect();
        let unit = pts.unit();
        c.measure(format!("{label} integral representation reproduces Q_k for k <= 5"), cfg.tol, || {
            let rule = match src {
                RepresentationSource::Fock => slice_gauss(&unit, cfg.quad_order)?,
                RepresentationSource::Hermite => gauss_hermite(cfg.quad_order)?,
                RepresentationSource::Bergman => disk_rule(&unit, cfg.quad_order, cfg.quad_order)?,
            };
            let mut worst: f64 = 0.0;
            for k in 0..=5usize {
                let qk = appell_q(k as u32);
                for p in &sample {
                    let e = integral_representation_q(k, p, src, &rule, f64::INFINITY)?;
                    worst = worst.max(e.value.dist(&qq_eval_f64(&qk, p)));
                }
            }
            Ok(worst)
        });
    }
    let unit = pts.unit();
    c.measure("Gaussian moments: integral of p^k |p|^4 exp(-|p|^2 + x conj(p)) = pi (k+1)(k+2) x^k", cfg.tol, || {
        let rule = slice_gauss(&unit, cfg.quad_order)?;
        let mut worst: f64 = 0.0;
        for k in 0..=6u32 {
            for x in [0.0, 0.7, -0.7] {
                let e = fock_moment_integral(k, x, &rule, f64::INFINITY)?;
                let want = fock_moment_closed(k, x);
                worst = worst.max(e.value.dist(&Quaternion::real(want)) / want.abs().max(1.0));
            }
        }
        Ok(worst)
    });
}

fn bergman_ball_suite(cfg: &RunConfig, c: &mut Checks) {
    let nt = cfg.truncation;
    let mut pts = Points::new(cfg.seed, 6);
    let sample: Vec<(Quaternion<f64>, Quaternion<f64>)> = (0..20).map(|_| (pts.ball(), pts.ball())).collect();
    c.measure("ball kernel: series matches closed form", cfg.tol, || {
        max_over(sample.iter().map(|(a, b)| {
            let s = bergman_ball(a, b, nt, Form::Series)?;
            let k = bergman_ball(a, b, nt, Form::Closed)?;
            Ok(s.value.dist(&k.value))
        }))
    });
    c.measure("ball kernel: K(0, r) = 1 and K(a, b) = (1 - ab)^-2 on the real axis", cfg.tol, || {
        let a = bergman_ball(&Quaternion::zero(), &sample[0].1, nt, Form::Closed)?.value.dist(&Quaternion::one());
        let (x, y) = (sample[1].0.w, sample[1].1.w);
        let b = bergman_ball(&Quaternion::real(x), &Quaternion::real(y), nt, Form::Closed)?.value.w - (1.0 - x * y).powi(-2);
        Ok(a.max(b.abs()))
    });
    c.measure("ball Bergman-Fueter kernel: series matches closed form", cfg.tol, || {
        max_over(sample.iter().map(|(a, b)| {
            Ok(bergman_fueter_ball(a, b, nt, Form::Series)?.value.dist(&bergman_fueter_ball(a, b, nt, Form::Closed)?.value))
        }))
    });
    c.measure("ball Bergman-Fueter kernel is the Laplacian of the slice kernel", FD_TOL, || {
        max_over(sample.iter().map(|(a, b)| {
            let fd = laplacian_fd(|x| bergman_ball(x, b, 0, Form::Closed).map(|v| v.value).unwrap_or(Quaternion::real(f64::NAN)), a, FD_STEP);
            Ok(fd.dist(&bergman_fueter_ball(a, b, 0, Form::Closed)?.value))
        }))
    });
    c.measure("ball Bergman-Fueter kernel is Fueter regular in q", FD_TOL, || {
        Ok(sample
            .iter()
            .map(|(a, b)| {
                cauchy_fueter_fd(|x| bergman_fueter_ball(x, b, 0, Form::Closed).map(|v| v.value).unwrap_or(Quaternion::real(f64::NAN)), a, FD_STEP).abs()
            })
            .fold(0.0, f64::max))
    });
    c.measure("<L_p, f> = f(p) in B(B)", cfg.tol, || {
        let alpha: Vec<Quaternion<f64>> = (0..10).map(|_| pts.raw()).collect();
        let f = RegularSeries::new(alpha.clone());
        Ok(sample.iter().map(|(p, _)| {
            let want = regular_eval(&f, p);
            rel(&coefficient_inner_product_f64(&l_coefficients(p, 9), &alpha, SpaceTag::BB), &want)
        }).fold(0.0, f64::max))
    });
    let unit = pts.unit();
    c.measure("ball slice Gram matrix <p^m, p^n> = delta_mn / (m+1) for m, n <= 10", cfg.tol, || {
        let rule = disk_rule(&unit, cfg.quad_order, cfg.quad_order)?;
        let mut worst: f64 = 0.0;
        for m in 0..=10u32 {
            for n in 0..=10u32 {
                let e = quadrature_inner_product(|p| p.powi(m), |p| p.powi(n), SpaceTag::BergmanSlice, &rule, f64::INFINITY)?;
                let want = if m == n { 1.0 / f64::from(m + 1) } else { 0.0 };
                worst = worst.max(e.value.dist(&Quaternion::real(want)));
            }
        }
        Ok(worst)
    });
    c.exact("B(B) norm of the Fueter image equals 4 sum_(k>=2) |c_k|^2/(k+1)", || {
        for _ in 0..10 {
            let mut cs: Vec<Quaternion<Rational>> = (0..8).map(|_| pts.exact_q()).collect();
            let alpha = slice_to_regular(&cs);
            cs[0] = Quaternion::zero();
            cs[1] = Quaternion::zero();
            if coefficient_inner_product(&alpha, &alpha, SpaceTag::BB).w
                != coefficient_inner_product(&cs, &cs, SpaceTag::BergmanSlice).w * int(4)
            {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.measure("domain check: |r| >= 1 is rejected", 0.0, || {
        Ok(if bergman_ball(&Quaternion::zero(), &Quaternion::real(1.0), nt, Form::Closed).is_err() { 0.0 } else { 1.0 })
    });
}

fn bergman_halfspace_suite(cfg: &RunConfig, c: &mut Checks) {
    let mut pts = Points::new(cfg.seed, 7);
    let sample: Vec<(Quaternion<f64>, Quaternion<f64>)> = (0..20).map(|_| (pts.halfspace(), pts.halfspace())).collect();
    c.measure("half-space kernel at (1, 1) is 1/(4 pi)", cfg.tol, || {
        Ok(bergman_halfspace(&Quaternion::one(), &Quaternion::one())?.dist(&Quaternion::real(1.0 / (4.0 * PI))))
    });
    let unit = pts.unit();
    c.measure("half-space kernel restricts to (z + conj(w))^-2 / pi on a slice", cfg.tol, || {
        max_over(sample.iter().map(|(a, b)| {
            let (z, w) = (Complex64::new(a.w, a.x), Complex64::new(b.w, b.x));
            let v = bergman_halfspace(&unit.embed(z), &unit.embed(w))?;
            Ok(v.dist(&unit.embed((z + w.conj()).powi(-2) / PI)))
        }))
    });
    c.measure("half-space kernel is Hermitian", cfg.tol, || {
        max_over(sample.iter().map(|(a, b)| Ok(bergman_halfspace(a, b)?.conj().dist(&bergman_halfspace(b, a)?))))
    });
    c.measure("half-space Bergman-Fueter kernel is the Laplacian of the slice kernel", FD_TOL, || {
        max_over(sample.iter().map(|(a, b)| {
            let fd = laplacian_fd(|x| bergman_halfspace(x, b).unwrap_or(Quaternion::real(f64::NAN)), a, FD_STEP);
            Ok(fd.dist(&bergman_fueter_halfspace(a, b)?))
        }))
    });
    c.measure("half-space Bergman-Fueter kernel is Fueter regular in q", FD_TOL, || {
        Ok(sample
            .iter()
            .map(|(a, b)| cauchy_fueter_fd(|x| bergman_fueter_halfspace(x, b).unwrap_or(Quaternion::real(f64::NAN)), a, FD_STEP).abs())
            .fold(0.0, f64::max))
    });
}

fn bergman_halfball_suite(cfg: &RunConfig, c: &mut Checks) {
    let mut pts = Points::new(cfg.seed, 8);
    let sample: Vec<(Quaternion<f64>, Quaternion<f64>)> = (0..20).map(|_| (pts.halfball(), pts.halfball())).collect();
    c.measure("half-ball kernel equals ball plus half-space kernels via the representation formula", cfg.tol, || {
        max_over(sample.iter().map(|(a, b)| Ok(bergman_halfball(a, b)?.dist(&bergman_halfball_extension(a, b)?))))
    });
    c.measure("product form of the half-ball kernel equals K_ball + pi K_halfspace", cfg.tol, || {
        max_over(sample.iter().map(|(a, b)| {
            let want = bergman_ball(a, b, 0, Form::Closed)?.value + bergman_halfspace(a, b)? * PI;
            Ok(bergman_halfball_star(a, b)?.dist(&want))
        }))
    });
    c.exact("half-ball Bergman-Fueter kernel is the sum of its parts", || {
        for (a, b) in &sample {
            let split = bergman_fueter_ball(a, b, 0, Form::Closed)?.value + bergman_fueter_halfspace(a, b)?;
            if bergman_fueter_halfball(a, b)? != split {
                return Ok(false);
            }
        }
        Ok(true)
    });
    c.measure("half-ball Bergman-Fueter kernel is the Laplacian of the slice kernel", FD_TOL, || {
        max_over(sample.iter().map(|(a, b)| {
            let fd = laplacian_fd(|x| bergman_halfball(x, b).unwrap_or(Quaternion::real(f64::NAN)), a, FD_STEP);
            Ok(fd.dist(&bergman_fueter_halfball(a, b)?))
        }))
    });
    c.measure("half-ball Bergman-Fueter kernel is Fueter regular in q", FD_TOL, || {
        Ok(sample
            .iter()
            .map(|(a, b)| cauchy_fueter_fd(|x| bergman_fueter_halfball(x, b).unwrap_or(Quaternion::real(f64::NAN)), a, FD_STEP).abs())
            .fold(0.0, f64::max))
    });
}

fn wedge(cfg: &RunConfig, c: &mut Checks) {
    let mut pts = Points::new(cfg.seed, 9);
    for n in 1..=3u32 {
        let unit = pts.unit();
        let lo = PI / 2.0 - PI / f64::from(n);
        let sample: Vec<(Complex64, Complex64)> = (0..20)
            .map(|_| {
                let mut pick = || {
                    let th = pts.0.gen_range(lo + 0.05..PI / 2.0 - 0.05);
                    let z = Complex64::from_polar(pts.0.gen_range(0.3..1.5), th);
                    if pts.0.gen_bool(0.5) {
                        z
                    } else {
                        z.conj()
                    }
                };
                (pick(), pick())
            })
            .collect();
        c.measure(format!("wedge kernel of order {n} restricts to the complex wedge kernel"), cfg.tol, || {
            max_over(sample.iter().map(|&(z, w)| {
                let v = bergman_wedge(&unit.embed(z), &unit.embed(w), n)?;
                Ok(rel(&v, &unit.embed(wedge_complex(z, w, n))))
            }))
        });
    }
    let sample: Vec<(Quaternion<f64>, Quaternion<f64>)> = (0..20).map(|_| (pts.halfspace(), pts.halfspace())).collect();
    c.measure("wedge kernel of order 1 equals -pi times the half-space kernel", cfg.tol, || {
        max_over(sample.iter().map(|(a, b)| Ok(bergman_wedge(a, b, 1)?.dist(&(bergman_halfspace(a, b)? * -PI)))))
    });
}

fn generating_function(cfg: &RunConfig, c: &mut Checks) {
    let nt = cfg.truncation;
    let mut pts = Points::new(cfg.seed, 10);
    let sample: Vec<(Quaternion<f64>, Quaternion<f64>)> = (0..50).map(|_| (pts.ball(), pts.ball())).collect();
    c.measure("generating function: series matches 2R^2 + 4 K R", cfg.tol, || {
        Ok(sample.iter().map(|(a, b)| {
            let s = generating_series(a, b, nt).value;
            generating_closed(a, b).map_or(f64::INFINITY, |v| s.dist(&v))
        }).fold(0.0, f64::max))
    });
    c.measure("real-axis form sum (k+1)(k+2)(k+3) (qr)^k / 6 = (1 - qr)^-4", cfg.tol, || {
        Ok(sample.iter().map(|(a, b)| {
            let s = generating_series(&Quaternion::real(a.w), &Quaternion::real(b.w), nt).value * (1.0 / 6.0);
            (s.w - (1.0 - a.w * b.w).powi(-4)).abs()
        }).fold(0.0, f64::max))
    });
    c.measure("generating function is Fueter regular in q", FD_TOL, || {
        Ok(sample.iter().take(10).map(|(a, b)| {
            cauchy_fueter_fd(|x| generating_closed(x, b).unwrap_or(Quaternion::real(f64::NAN)), a, FD_STEP).abs()
        }).fold(0.0, f64::max))
    });
}

fn rkhs(cfg: &RunConfig, c: &mut Checks) {
    let nt = cfg.truncation;
    let mut pts = Points::new(cfg.seed, 11);
    let sample: Vec<(Quaternion<f64>, Quaternion<f64>)> = (0..10).map(|_| (pts.ball() * 2.0, pts.ball() * 2.0)).collect();
    c.measure("G(0, q) = 2", cfg.tol, || Ok(rkhs_g(&Quaternion::zero(), &sample[0].0, nt).value.dist(&Quaternion::real(2.0))));
    c.measure("G(p, q) = conj(G(q, p))", cfg.tol, || {
        Ok(sample.iter().map(|(a, b)| rel(&rkhs_g(a, b, nt).value.conj(), &rkhs_g(b, a, nt).value)).fold(0.0, f64::max))
    });
    c.measure("<G_q', G_q> = G(q, q')", cfg.tol, || {
        Ok(sample.iter().map(|(a, b)| {
            let v = coefficient_inner_product_f64(&g_coefficients(b, nt), &g_coefficients(a, nt), SpaceTag::AH);
            rel(&v, &rkhs_g(a, b, nt).value)
        }).fold(0.0, f64::max))
    });
    let alpha: Vec<Quaternion<f64>> = (0..12).map(|_| pts.raw()).collect();
    let f = RegularSeries::new(alpha.clone());
    c.measure("<f, G_q> = f(q) in A(H)", cfg.tol, || {
        Ok(sample.iter().map(|(a, _)| rel(&coefficient_inner_product_f64(&alpha, &g_coefficients(a, 11), SpaceTag::AH), &regular_eval(&f, a))).fold(0.0, f64::max))
    });
    c.exact("|f(q)| <= |G_q| |f| in A(H)", || {
        let nf = membership_check(&alpha, SpaceTag::AH).norm_sq.sqrt();
        Ok(sample.iter().all(|(a, _)| {
            let ng = membership_check(&g_coefficients(a, nt), SpaceTag::AH).norm_sq.sqrt();
            regular_eval(&f, a).abs() <= ng * nf * (1.0 + 1e-12)
        }))
    });
    c.measure("L(0, r) = 12", cfg.tol, || Ok(rkhs_l(&Quaternion::zero(), &sample[0].1, nt)?.value.dist(&Quaternion::real(12.0))));
    c.measure("L on the real axis matches the direct sum", cfg.tol, || {
        let (a, b) = (0.5, -0.6);
        let v = rkhs_l(&Quaternion::real(a), &Quaternion::real(b), nt)?.value.w;
        let direct: f64 = (0..=nt)
            .map(|k| {
                let kf = k as f64;
                (kf + 1.0).powi(2) * (kf + 2.0).powi(2) * (kf + 3.0) * (a * b).powi(k as i32)
            })
            .sum();
        Ok((v - direct).abs() / direct.abs())
    });
    c.measure("L(q, r) is Fueter regular in q", FD_TOL, || {
        Ok(sample.iter().map(|(a, b)| {
            let (a, b) = (*a * 0.5, *b * 0.5);
            cauchy_fueter_fd(|x| rkhs_l(x, &b, nt).map(|v| v.value).unwrap_or(Quaternion::real(f64::NAN)), &a, FD_STEP).abs()
        }).fold(0.0, f64::max))
    });
}

fn run(name: &str, cfg: &RunConfig) -> Vec<Check> {
    let mut c = Checks::default();
    match name {
        "appell" => appell(cfg, &mut c),
        "fueter-map" => fueter_map(cfg, &mut c),
        "fock-kernel" => fock_kernel_suite(cfg, &mut c),
        "transforms" => transforms(cfg, &mut c),
        "integral-reps" => integral_reps(cfg, &mut c),
        "bergman-ball" => bergman_ball_suite(cfg, &mut c),
        "bergman-halfspace" => bergman_halfspace_suite(cfg, &mut c),
        "bergman-halfball" => bergman_halfball_suite(cfg, &mut c),
        "wedge" => wedge(cfg, &mut c),
        "generating-function" => generating_function(cfg, &mut c),
        "rkhs" => rkhs(cfg, &mut c),
        _ => unreachable!("suite names are validated before running"),
    }
    c.0
}

/// Suite names selected by `--suite`, or an error for unknown names.
pub fn select(suite: &str) -> std::result::Result<Vec<&'static str>, String> {
    if suite == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|s| **s == suite)
        .map(|s| vec![*s])
        .ok_or_else(|| format!("unknown suite '{suite}' (expected one of: {}, all)", SUITES.join(", ")))
}

/// Runs the suites in order and writes a report; returns true when every check passed.
pub fn verify(names: &[&str], cfg: &RunConfig, out: &mut dyn Write) -> std::io::Result<bool> {
    let (mut passed, mut total) = (0, 0);
    for name in names {
        let checks = run(name, cfg);
        writeln!(out, "== {name} ==")?;
        let ok = checks.iter().filter(|c| c.passed()).count();
        for ch in &checks {
            let tag = if ch.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "[{tag}] {}: err {:.3e}, tol {:.1e}", ch.name, ch.err, ch.tol)?;
        }
        writeln!(out, "{name}: {ok}/{} passed", checks.len())?;
        passed += ok;
        total += checks.len();
    }
    writeln!(out, "total: {passed}/{total} passed")?;
    Ok(passed == total)
}
