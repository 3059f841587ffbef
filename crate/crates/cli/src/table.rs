//! `table` subcommand: identities evaluated over a grid, written as CSV.

use std::io::Write;

use fueter_core::kernels::generating_series;
use fueter_core::quadrature::{gauss_hermite, slice_gauss};
use fueter_core::transforms::{fock_moment_closed, fock_moment_integral, phi_gram, phi_gram_series};
use fueter_core::{ImaginaryUnit, Quaternion};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    QSum,
    PhiGram,
    FockMoments,
}

impl Identity {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "qsum" => Ok(Self::QSum),
            "phi-gram" => Ok(Self::PhiGram),
            "fock-moments" => Ok(Self::FockMoments),
            _ => Err(format!("unknown identity '{s}' (expected qsum, phi-gram or fock-moments)")),
        }
    }

    /// Grid variables and their defaults.
    fn variables(self) -> &'static [(&'static str, f64)] {
        match self {
            Self::QSum => &[("q", 0.0), ("r", 0.0)],
            Self::PhiGram => &[("q", 0.0), ("qx", 0.0), ("p", 0.0), ("px", 0.0)],
            Self::FockMoments => &[("k", 0.0), ("x", 0.0)],
        }
    }

    fn quaternion_valued(self) -> bool {
        self == Self::PhiGram
    }
}

/// Values of one grid axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

fn decimals(s: &str) -> i32 {
    let mant = s.split(['e', 'E']).next().unwrap_or(s);
    let exp: i32 = s.split(['e', 'E']).nth(1).and_then(|e| e.parse().ok()).unwrap_or(0);
    let frac = mant.split('.').nth(1).map_or(0, |f| f.len() as i32);
    (frac - exp).max(0)
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("bad number '{s}'"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

/// Parses `name=a:b:step` (inclusive) or `name=v1,v2,…` entries separated by `;`.
/// An empty string is an empty grid.
pub fn parse_grid(spec: &str) -> Result<Vec<Axis>, String> {
    let mut axes: Vec<Axis> = Vec::new();
    for entry in spec.split(';').map(str::trim).filter(|e| !e.is_empty()) {
        let (name, rhs) = entry.split_once('=').ok_or_else(|| format!("grid entry '{entry}' lacks '='"))?;
        let name = name.trim().to_string();
        if axes.iter().any(|a| a.name == name) {
            return Err(format!("grid variable '{name}' given twice"));
        }
        let values = if rhs.contains(':') {
            let parts: Vec<&str> = rhs.split(':').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(format!("range '{rhs}' must be a:b:step"));
            }
            let (a, b, step) = (number(parts[0])?, number(parts[1])?, number(parts[2])?);
            if !(step > 0.0) || b < a {
                return Err(format!("range '{rhs}' needs step > 0 and a <= b"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(format!("range '{rhs}' has too many points"));
            }
            // Snap to the decimal precision of the inputs so 0.1 steps print cleanly.
            let d = decimals(parts[0]).max(decimals(parts[2])).min(15);
            let scale = 10f64.powi(d);
            (0..count).map(|i| ((a + i as f64 * step) * scale).round() / scale).collect()
        } else {
            rhs.split(',').map(number).collect::<Result<Vec<_>, _>>()?
        };
        axes.push(Axis { name, values });
    }
    Ok(axes)
}

fn fmt_q(v: &Quaternion<f64>) -> String {
    format!("{:?},{:?},{:?},{:?}", v.w, v.x, v.y, v.z)
}

/// Writes the CSV for `identity` over the Cartesian product of `axes`.
pub fn write_table(identity: Identity, axes: &[Axis], cfg: &RunConfig, out: &mut dyn Write) -> Result<(), String> {
    let vars = identity.variables();
    for a in axes {
        if !vars.iter().any(|(n, _)| *n == a.name) {
            let names: Vec<&str> = vars.iter().map(|(n, _)| *n).collect();
            return Err(format!("identity does not use '{}' (variables: {})", a.name, names.join(", ")));
        }
    }
    let mut header: Vec<String> = vars.iter().map(|(n, _)| n.to_string()).collect();
    if identity.quaternion_valued() {
        for side in ["lhs", "rhs"] {
            for c in ["w", "x", "y", "z"] {
                header.push(format!("{side}_{c}"));
            }
        }
    } else {
        header.extend(["lhs".into(), "rhs".into()]);
    }
    header.push("abs_error".into());
    let io = |e: std::io::Error| e.to_string();
    writeln!(out, "{}", header.join(",")).map_err(io)?;
    if axes.is_empty() {
        return Ok(());
    }

    let gh = gauss_hermite(cfg.quad_order).map_err(|e| e.to_string())?;
    let sg = slice_gauss(&ImaginaryUnit::i(), cfg.quad_order).map_err(|e| e.to_string())?;

    // Row-major over the variables in their fixed order; unlisted ones keep defaults.
    let lists: Vec<Vec<f64>> = vars
        .iter()
        .map(|(n, d)| axes.iter().find(|a| a.name == *n).map_or(vec![*d], |a| a.values.clone()))
        .collect();
    let total: usize = lists.iter().map(Vec::len).product();
    for idx in 0..total {
        let mut rem = idx;
        let mut point = vec![0.0; lists.len()];
        for (slot, l) in point.iter_mut().zip(&lists).rev() {
            *slot = l[rem % l.len()];
            rem /= l.len();
        }
        let inputs: Vec<String> = point.iter().map(|v| format!("{v:?}")).collect();
        let row = match identity {
            Identity::QSum => {
                let (a, b) = (point[0], point[1]);
                if (a * b).abs() >= 1.0 {
                    return Err(format!("qsum needs |q r| < 1, got q = {a}, r = {b}"));
                }
                let lhs = generating_series(&Quaternion::real(a), &Quaternion::real(b), cfg.truncation).value.w / 6.0;
                let rhs = (1.0 - a * b).powi(-4);
                format!("{lhs:?},{rhs:?},{:?}", (lhs - rhs).abs())
            }
            Identity::PhiGram => {
                let qq = Quaternion::new(point[0], point[1], 0.0, 0.0);
                let pp = Quaternion::new(point[2], point[3], 0.0, 0.0);
                let lhs = phi_gram(&qq, &pp, &gh, cfg.truncation, f64::INFINITY).map_err(|e| e.to_string())?.value;
                let rhs = phi_gram_series(&qq, &pp, cfg.truncation);
                format!("{},{},{:?}", fmt_q(&lhs), fmt_q(&rhs), lhs.dist(&rhs))
            }
            Identity::FockMoments => {
                let (k, x) = (point[0], point[1]);
                if k < 0.0 || k.fract() != 0.0 || k > 1000.0 {
                    return Err(format!("k must be a non-negative integer, got {k}"));
                }
                let lhs = fock_moment_integral(k as u32, x, &sg, f64::INFINITY).map_err(|e| e.to_string())?.value;
                let rhs = fock_moment_closed(k as u32, x);
                format!("{:?},{rhs:?},{:?}", lhs.w, lhs.dist(&Quaternion::real(rhs)))
            }
        };
        writeln!(out, "{},{row}", inputs.join(",")).map_err(io)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ranges_and_lists() {
        let g = parse_grid("q=-0.5:0.5:0.1; r=0.3").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].values.len(), 11);
        assert_eq!(g[0].values[5], 0.0);
        assert_eq!(g[0].values[7], 0.2);
        assert_eq!(g[1].values, vec![0.3]);
        let g = parse_grid("k=0,1,2;x=-0.7,0,0.7").unwrap();
        assert_eq!(g[0].values, vec![0.0, 1.0, 2.0]);
        assert!(parse_grid("").unwrap().is_empty());
        assert!(parse_grid("  ;  ").unwrap().is_empty());
    }

    #[test]
    fn bad_grids() {
        for s in ["q", "q=1:2", "q=1:0:0.1", "q=0:1:0", "q=a", "q=1;q=2", "q=0:1:-1"] {
            assert!(parse_grid(s).is_err(), "{s}");
        }
    }

    #[test]
    fn decimal_places() {
        assert_eq!(decimals("0.1"), 1);
        assert_eq!(decimals("-0.25"), 2);
        assert_eq!(decimals("3"), 0);
        assert_eq!(decimals("1e-3"), 3);
        assert_eq!(decimals("2.5e1"), 0);
    }
}
