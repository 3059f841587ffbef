use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use fueter_core::Quaternion;

/// Settings shared by the subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub suite: String,
    pub truncation: usize,
    pub quad_order: usize,
    pub tol: f64,
    pub seed: u64,
    pub max_degree: u32,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(format!("--tol must be a positive number, got {}", self.tol));
        }
        if self.truncation < self.max_degree as usize + 2 {
            return Err(format!(
                "--truncation ({}) must be at least --max-degree + 2 ({})",
                self.truncation,
                self.max_degree + 2
            ));
        }
        if self.quad_order == 0 {
            return Err("--quad-order must be at least 1".into());
        }
        Ok(())
    }

    pub fn writer(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        })
    }
}

/// Parses `w,x,y,z`.
pub fn parse_quaternion(s: &str) -> Result<Quaternion<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected w,x,y,z but got '{s}'"));
    }
    let mut v = [0.0; 4];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse::<f64>().map_err(|e| format!("bad component '{p}' in '{s}': {e}"))?;
        if !slot.is_finite() {
            return Err(format!("component '{p}' in '{s}' is not finite"));
        }
    }
    Ok(Quaternion::from_array(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig {
            suite: "all".into(),
            truncation: 300,
            quad_order: 80,
            tol: 1e-8,
            seed: 0,
            max_degree: 30,
            output: None,
        }
    }

    #[test]
    fn validation() {
        assert!(cfg().validate().is_ok());
        assert!(RunConfig { tol: 0.0, ..cfg() }.validate().is_err());
        assert!(RunConfig { tol: f64::NAN, ..cfg() }.validate().is_err());
        assert!(RunConfig { truncation: 31, ..cfg() }.validate().is_err());
        assert!(RunConfig { truncation: 32, ..cfg() }.validate().is_ok());
        assert!(RunConfig { quad_order: 0, ..cfg() }.validate().is_err());
    }

    #[test]
    fn quaternion_literals() {
        assert_eq!(parse_quaternion("1, -2.5,0,3e-1").unwrap(), Quaternion::new(1.0, -2.5, 0.0, 0.3));
        assert!(parse_quaternion("1,2,3").is_err());
        assert!(parse_quaternion("1,2,3,x").is_err());
        assert!(parse_quaternion("1,2,3,inf").is_err());
    }
}
