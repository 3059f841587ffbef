//! Quaternionic function theory in code: exact `(q, q̄)`-polynomial algebra,
//! the Cauchy–Fueter operator and Fueter map, the Appell basis `Q_k`, Fock and
//! Bergman type reproducing kernels, the associated transforms, and the
//! Gaussian quadrature rules used to check them.

pub mod appell;
pub mod coords;
pub mod error;
pub mod hermite;
pub mod kernels;
pub mod operators;
pub mod quadrature;
pub mod quaternion;
pub mod scalar;
pub mod series;
pub mod tail;
pub mod transforms;

pub use error::{Error, Result};
pub use quaternion::{ImaginaryUnit, Quaternion, SlicePoint};
pub use scalar::{Rational, Scalar};
pub use series::{QQbarPoly, RegularSeries, SliceSeries};
