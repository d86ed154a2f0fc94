//! Entanglement detectors for bipartite density matrices: negativity of the
//! partial transpose, and the realignment (computable cross norm) criterion.

mod negativity;
mod realignment;

pub use negativity::{
    negativity, negativity_with, partial_transpose_first, partial_transpose_first_with, NegativityResult,
};
pub use realignment::{
    realign, realignment_criterion, realignment_criterion_with, unrealign, RealignmentResult,
};

use crate::error::{DensityCheck, Error, Result};
use crate::matrix::{hermitian_eigen, ComplexMatrix, HERMITIAN_TOL};

/// Tolerance on `|Tr ρ − 1|` and on negative eigenvalues of an input state.
pub const DENSITY_TOL: f64 = 1e-10;

/// Cut-offs separating roundoff from signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Partial-transpose eigenvalues below `-negative_eigenvalue` count as negative.
    pub negative_eigenvalue: f64,
    /// `R` above this counts as a realignment violation.
    pub positive_r: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { negative_eigenvalue: 1e-12, positive_r: 1e-12 }
    }
}

/// Base of the logarithm in `R = log Σσᵢ`. The sign of `R` does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase(f64);

impl LogBase {
    pub const E: LogBase = LogBase(std::f64::consts::E);
    pub const TWO: LogBase = LogBase(2.0);
    pub const TEN: LogBase = LogBase(10.0);

    pub fn new(base: f64) -> Result<Self> {
        if base.is_finite() && base > 1.0 {
            Ok(LogBase(base))
        } else {
            Err(Error::InvalidLogBase(base))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn log(self, x: f64) -> f64 {
        if self == Self::E {
            x.ln()
        } else if self == Self::TWO {
            x.log2()
        } else if self == Self::TEN {
            x.log10()
        } else {
            x.ln() / self.0.ln()
        }
    }

    /// Short name: `e`, `2`, `10`, or the numeric value.
    pub fn name(self) -> String {
        if self == Self::E {
            "e".to_string()
        } else {
            format!("{}", self.0)
        }
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::E
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "e" | "ln" | "natural" => Ok(LogBase::E),
            "2" => Ok(LogBase::TWO),
            "10" => Ok(LogBase::TEN),
            other => {
                let v: f64 = other.parse().map_err(|_| Error::InvalidLogBase(f64::NAN))?;
                LogBase::new(v)
            }
        }
    }
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
///
/// Eigenvalues in `[-DENSITY_TOL, 0)` are clipped to zero and the state is
/// renormalized.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    rho: ComplexMatrix,
    clipped: f64,
}

impl DensityMatrix {
    pub fn new(rho: &ComplexMatrix) -> Result<Self> {
        if !rho.is_square() {
            return Err(Error::InvalidDensityMatrix(DensityCheck::NotSquare));
        }
        let deviation = rho.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(DensityCheck::NotHermitian { deviation }));
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(DensityCheck::Trace { trace: trace.re }));
        }
        let spec = hermitian_eigen(rho)?;
        let min_eigenvalue = spec.values[0];
        if min_eigenvalue < -DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(DensityCheck::NotPositive { min_eigenvalue }));
        }
        if min_eigenvalue >= 0.0 {
            return Ok(DensityMatrix { rho: rho.clone(), clipped: 0.0 });
        }
        let clipped: f64 = spec.values.iter().filter(|&&l| l < 0.0).map(|l| -l).sum();
        log::debug!("clipping {clipped:e} of negative spectral weight from density matrix");
        let kept: f64 = spec.values.iter().map(|l| l.max(0.0)).sum();
        let rho = spec.map_to_matrix(|l| l.max(0.0) / kept);
        Ok(DensityMatrix { rho, clipped })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    /// Total negative eigenvalue weight removed during validation.
    pub fn clipped(&self) -> f64 {
        self.clipped
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }
}

/// Local dimension of a `d²×d²` two-party state with equal parts.
pub(crate) fn equal_split(n: usize) -> Result<usize> {
    let d = (n as f64).sqrt().round() as usize;
    if d * d == n && d >= 1 {
        Ok(d)
    } else {
        Err(Error::BadDimension(format!(
            "{n}x{n} is not a d^2 x d^2 matrix; pass the subsystem dimensions explicitly"
        )))
    }
}

#[cfg(test)]
pub(crate) mod test_states {
    use num_complex::Complex64;
    use rand::Rng;

    use crate::matrix::{tensor_product, ComplexMatrix};

    pub fn random_unit(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
        let v: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.into_iter().map(|z| z / norm).collect()
    }

    pub fn random_product_projector(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
        let a = random_unit(rng, d);
        let b = random_unit(rng, d);
        tensor_product(&ComplexMatrix::outer(&a), &ComplexMatrix::outer(&b))
    }

    /// `(|1,1⟩ + |0,0⟩ + |-1,-1⟩)/√3`.
    pub fn maximally_entangled() -> ComplexMatrix {
        let c = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        let mut v = vec![Complex64::new(0.0, 0.0); 9];
        v[0] = c;
        v[4] = c;
        v[8] = c;
        ComplexMatrix::outer(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn log_base_parsing_and_sign() {
        assert_eq!(LogBase::from_str("e").unwrap(), LogBase::E);
        assert_eq!(LogBase::from_str("10").unwrap(), LogBase::TEN);
        assert!(LogBase::from_str("1").is_err());
        assert!(LogBase::from_str("x").is_err());
        assert!((LogBase::new(3.0).unwrap().log(9.0) - 2.0).abs() < 1e-15);
        for x in [0.2, 1.0, 3.0] {
            let signs: Vec<f64> =
                [LogBase::E, LogBase::TWO, LogBase::TEN].iter().map(|b| b.log(x).signum()).collect();
            assert!(signs.iter().all(|s| *s == signs[0]) || x == 1.0);
        }
    }

    #[test]
    fn density_validation_reports_failed_check() {
        let bad_trace = ComplexMatrix::identity(4);
        assert!(matches!(
            DensityMatrix::new(&bad_trace),
            Err(Error::InvalidDensityMatrix(DensityCheck::Trace { .. }))
        ));
        let not_psd = ComplexMatrix::from_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(&not_psd),
            Err(Error::InvalidDensityMatrix(DensityCheck::NotPositive { .. }))
        ));
        let not_herm = ComplexMatrix::from_real_rows(2, 2, &[0.5, 0.1, 0.0, 0.5]);
        assert!(matches!(
            DensityMatrix::new(&not_herm),
            Err(Error::InvalidDensityMatrix(DensityCheck::NotHermitian { .. }))
        ));
        assert!(matches!(
            DensityMatrix::new(&ComplexMatrix::zeros(2, 3)),
            Err(Error::InvalidDensityMatrix(DensityCheck::NotSquare))
        ));
    }

    #[test]
    fn tiny_negative_eigenvalues_are_clipped() {
        let rho = ComplexMatrix::from_diagonal(&[0.5 + 5e-11, 0.5, -5e-11]);
        let dm = DensityMatrix::new(&rho).unwrap();
        assert!((dm.clipped() - 5e-11).abs() < 1e-20);
        let spec = hermitian_eigen(dm.matrix()).unwrap();
        assert!(spec.values[0] >= 0.0);
        assert!((dm.matrix().trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equal_split_detects_non_squares() {
        assert_eq!(equal_split(9).unwrap(), 3);
        assert_eq!(equal_split(4).unwrap(), 2);
        assert!(matches!(equal_split(6), Err(Error::BadDimension(_))));
    }
}
