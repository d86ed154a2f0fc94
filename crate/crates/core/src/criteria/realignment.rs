use crate::error::{Error, Result};
use crate::matrix::{singular_values, ComplexMatrix};

use super::{equal_split, DensityMatrix, LogBase, Thresholds};

#[derive(Debug, Clone)]
pub struct RealignmentResult {
    /// `Σσᵢ` of the realigned matrix.
    pub trace_norm: f64,
    /// `R = log_base(trace_norm)`.
    pub r_value: f64,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub log_base: LogBase,
    /// `R > thresholds.positive_r`.
    pub entangled_flag: bool,
}

fn block_layout(rho: &ComplexMatrix, block_size: usize) -> Result<usize> {
    if !rho.is_square() {
        return Err(Error::BadDimension(format!(
            "realignment needs a square matrix, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let size = rho.rows();
    if block_size == 0 || !size.is_multiple_of(block_size) {
        return Err(Error::BadDimension(format!(
            "{size}x{size} matrix is not made of {block_size}x{block_size} blocks"
        )));
    }
    Ok(size / block_size)
}

/// Realigns an `m×m` block matrix with `n×n` blocks into an `m²×n²` matrix.
///
/// Row `j·m + i` holds `vec(ρ_{i,j})ᵀ`, blocks taken down each block column in
/// turn; `vec` stacks a block's columns, so entry `(k, l)` of a block lands in
/// column `l·n + k`.
pub fn realign(rho: &ComplexMatrix, block_size: usize) -> Result<ComplexMatrix> {
    let n = block_size;
    let m = block_layout(rho, n)?;
    Ok(ComplexMatrix::from_fn(m * m, n * n, |row, col| {
        let (j, i) = (row / m, row % m);
        let (l, k) = (col / n, col % n);
        rho[(i * n + k, j * n + l)]
    }))
}

/// Inverse of [`realign`] for an `m²×n²` input with `n×n` blocks.
pub fn unrealign(realigned: &ComplexMatrix, block_size: usize) -> Result<ComplexMatrix> {
    let n = block_size;
    let rows = realigned.rows();
    let m = (rows as f64).sqrt().round() as usize;
    if n == 0 || m * m != rows || realigned.cols() != n * n {
        return Err(Error::BadDimension(format!(
            "{}x{} is not a realigned matrix with {n}x{n} blocks",
            rows,
            realigned.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(m * n, m * n, |r, c| {
        let (i, k) = (r / n, r % n);
        let (j, l) = (c / n, c % n);
        realigned[(j * m + i, l * n + k)]
    }))
}

pub fn realignment_criterion(rho: &ComplexMatrix, log_base: LogBase) -> Result<RealignmentResult> {
    realignment_criterion_with(rho, log_base, &Thresholds::default())
}

pub fn realignment_criterion_with(
    rho: &ComplexMatrix,
    log_base: LogBase,
    thresholds: &Thresholds,
) -> Result<RealignmentResult> {
    DensityMatrix::new(rho)?.realignment(log_base, thresholds)
}

impl DensityMatrix {
    pub fn realignment(&self, log_base: LogBase, thresholds: &Thresholds) -> Result<RealignmentResult> {
        let d = equal_split(self.dim())?;
        let singular_values = singular_values(&realign(self.matrix(), d)?)?;
        let trace_norm: f64 = singular_values.iter().sum();
        let r_value = log_base.log(trace_norm);
        Ok(RealignmentResult {
            trace_norm,
            r_value,
            singular_values,
            log_base,
            entangled_flag: r_value > thresholds.positive_r,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_states::*;
    use super::*;
    use crate::matrix::tensor_product;
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Alternative arrangement: rows in block-row order, blocks read row by row.
    /// Equal to [`realign`] up to row and column permutations.
    fn realign_row_major(rho: &ComplexMatrix, n: usize) -> ComplexMatrix {
        let m = rho.rows() / n;
        ComplexMatrix::from_fn(m * m, n * n, |row, col| {
            let (i, j) = (row / m, row % m);
            let (k, l) = (col / n, col % n);
            rho[(i * n + k, j * n + l)]
        })
    }

    #[test]
    fn product_projector_realigns_to_rank_one() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..10 {
            let rho = random_product_projector(&mut rng, 3);
            let s = singular_values(&realign(&rho, 3).unwrap()).unwrap();
            assert!((s[0] - 1.0).abs() < 1e-12);
            assert!(s[1..].iter().all(|x| *x < 1e-12));
        }
    }

    #[test]
    fn maximally_mixed_trace_norm_is_one_third() {
        let rho = ComplexMatrix::identity(9).scale(1.0 / 9.0);
        let r = realignment_criterion(&rho, LogBase::E).unwrap();
        assert!((r.trace_norm - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.r_value < 0.0);
        assert!(!r.entangled_flag);
    }

    #[test]
    fn maximally_entangled_trace_norm_is_three() {
        let r = realignment_criterion(&maximally_entangled(), LogBase::E).unwrap();
        assert!((r.trace_norm - 3.0).abs() < 1e-12);
        assert!((r.r_value - 3f64.ln()).abs() < 1e-12);
        assert!(r.entangled_flag);
    }

    #[test]
    fn pure_product_state_sits_on_the_boundary() {
        let up = ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0]);
        let r = realignment_criterion(&tensor_product(&up, &up), LogBase::E).unwrap();
        assert!((r.trace_norm - 1.0).abs() < 1e-12);
        assert!(r.r_value.abs() < 1e-12);
        assert!(!r.entangled_flag);
    }

    #[test]
    fn unrealign_inverts_realign() {
        let mut rng = StdRng::seed_from_u64(8);
        for (m, n) in [(3, 3), (2, 3), (3, 2), (1, 4)] {
            let a = ComplexMatrix::from_fn(m * n, m * n, |_, _| Complex64::new(rng.gen(), rng.gen()));
            let r = realign(&a, n).unwrap();
            assert_eq!((r.rows(), r.cols()), (m * m, n * n));
            assert_eq!(unrealign(&r, n).unwrap(), a);
        }
    }

    #[test]
    fn realign_rejects_bad_blocks() {
        assert!(matches!(realign(&ComplexMatrix::identity(9), 2), Err(Error::BadDimension(_))));
        assert!(matches!(realign(&ComplexMatrix::zeros(9, 3), 3), Err(Error::BadDimension(_))));
        assert!(matches!(unrealign(&ComplexMatrix::zeros(8, 9), 3), Err(Error::BadDimension(_))));
    }

    #[test]
    fn arrangement_choice_does_not_change_singular_values() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10 {
            let a = ComplexMatrix::from_fn(9, 9, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let s1 = singular_values(&realign(&a, 3).unwrap()).unwrap();
            let s2 = singular_values(&realign_row_major(&a, 3)).unwrap();
            let s3 = singular_values(&realign(&a, 3).unwrap().transpose()).unwrap();
            for ((x, y), z) in s1.iter().zip(&s2).zip(&s3) {
                assert!((x - y).abs() < 1e-12 && (x - z).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn flag_agrees_with_trace_norm_in_every_base() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..20 {
            let psi = random_unit(&mut rng, 9);
            let w: f64 = rng.gen();
            let rho = ComplexMatrix::outer(&psi).scale(w) + ComplexMatrix::identity(9).scale((1.0 - w) / 9.0);
            for base in [LogBase::E, LogBase::TWO, LogBase::TEN] {
                let r = realignment_criterion(&rho, base).unwrap();
                assert_eq!(r.entangled_flag, r.trace_norm > base.value().powf(1e-12));
                assert_eq!(r.r_value, base.log(r.trace_norm));
            }
        }
    }
}
