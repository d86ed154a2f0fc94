use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigenvalues, ComplexMatrix};

use super::{equal_split, DensityMatrix, Thresholds};

#[derive(Debug, Clone)]
pub struct NegativityResult {
    /// `Σ|μᵢ|` over the negative eigenvalues of the partial transpose.
    pub negativity: f64,
    pub negative_eigenvalues: Vec<f64>,
    /// All eigenvalues of the partial transpose, ascending.
    pub pt_spectrum: Vec<f64>,
    /// `‖ρ^{T₁}‖₁ = 1 + 2N` for a unit-trace state.
    pub pt_trace_norm: f64,
}

impl NegativityResult {
    pub fn min_pt_eigenvalue(&self) -> f64 {
        self.pt_spectrum[0]
    }
}

/// Partial transpose on the first factor of a `dim_a·dim_b` square matrix:
/// `out[(i,k),(j,l)] = rho[(j,k),(i,l)]`.
pub fn partial_transpose_first_with(
    rho: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
) -> Result<ComplexMatrix> {
    let n = rho.ensure_square().map_err(|_| {
        Error::BadDimension(format!("partial transpose of a {}x{} matrix", rho.rows(), rho.cols()))
    })?;
    if dim_a == 0 || dim_b == 0 || dim_a * dim_b != n {
        return Err(Error::BadDimension(format!("{n}x{n} matrix cannot be split as {dim_a} x {dim_b}")));
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, k) = (r / dim_b, r % dim_b);
        let (j, l) = (c / dim_b, c % dim_b);
        rho[(j * dim_b + k, i * dim_b + l)]
    }))
}

/// Partial transpose on the first factor, for a `d²×d²` matrix split into two
/// `d`-dimensional parts.
pub fn partial_transpose_first(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = rho.ensure_square().map_err(|_| {
        Error::BadDimension(format!("partial transpose of a {}x{} matrix", rho.rows(), rho.cols()))
    })?;
    let d = equal_split(n)?;
    partial_transpose_first_with(rho, d, d)
}

pub fn negativity(rho: &ComplexMatrix) -> Result<NegativityResult> {
    negativity_with(rho, &Thresholds::default())
}

pub fn negativity_with(rho: &ComplexMatrix, thresholds: &Thresholds) -> Result<NegativityResult> {
    DensityMatrix::new(rho)?.negativity(thresholds)
}

impl DensityMatrix {
    pub fn negativity(&self, thresholds: &Thresholds) -> Result<NegativityResult> {
        let pt = partial_transpose_first(self.matrix())?;
        let pt_spectrum = hermitian_eigenvalues(&pt)?;
        let negative_eigenvalues: Vec<f64> =
            pt_spectrum.iter().copied().filter(|&m| m < -thresholds.negative_eigenvalue).collect();
        // Fold from +0.0: an empty float sum is -0.0.
        let negativity = negative_eigenvalues.iter().fold(0.0, |acc, m| acc + m.abs());
        let pt_trace_norm = pt_spectrum.iter().map(|m| m.abs()).sum();
        Ok(NegativityResult { negativity, negative_eigenvalues, pt_spectrum, pt_trace_norm })
    }
}
