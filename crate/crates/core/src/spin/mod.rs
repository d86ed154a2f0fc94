//! Spin-1 operators and the two-site anisotropic bilinear-biquadratic
//! Hamiltonian
//!
//! ```text
//! H = J·A + K·A² + B·(S1z + S2z),   A = S1x S2x + S1y S2y + Δ S1z S2z
//! ```
//!
//! on the nine-dimensional product basis `|m1, m2⟩`, ordered with
//! `m = 1, 0, -1` and the first site as the slow index.

mod analytic;

pub use analytic::{
    analytic_spectrum_case1, analytic_spectrum_case2, compare_with_numeric, eigenspace_agreement,
    AnalyticEigenpair, AnalyticSpectrum, DerivedQuantities, EigenpairComparison, SpectrumCase,
    SpectrumComparison, DEGENERATE_COUPLING_TOL, RESIDUAL_FLAG_TOL,
};

use num_complex::Complex64;

use crate::matrix::{tensor_product, ComplexMatrix, C_I, C_ONE, C_ZERO};

/// Coupling constants of the two-site model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianParams {
    /// Bilinear exchange.
    pub j: f64,
    /// Biquadratic coupling.
    pub k: f64,
    /// Anisotropy of the z-z exchange.
    pub delta: f64,
    /// Field along z.
    pub b: f64,
}

impl HamiltonianParams {
    pub fn new(j: f64, k: f64, delta: f64, b: f64) -> Self {
        HamiltonianParams { j, k, delta, b }
    }

    pub fn is_finite(&self) -> bool {
        self.j.is_finite() && self.k.is_finite() && self.delta.is_finite() && self.b.is_finite()
    }

    pub fn with_b(self, b: f64) -> Self {
        HamiltonianParams { b, ..self }
    }
}

/// The three spin-1 matrices.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub sx: ComplexMatrix,
    pub sy: ComplexMatrix,
    pub sz: ComplexMatrix,
}

/// Standard spin-1 matrices in the `m = 1, 0, -1` basis, `S_z = diag(1, 0, -1)`.
pub fn spin1_operators() -> SpinOperators {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sx = ComplexMatrix::from_real_rows(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]).scale(h);
    let sy =
        ComplexMatrix::from_row_slice(3, 3, &[C_ZERO, -C_I, C_ZERO, C_I, C_ZERO, -C_I, C_ZERO, C_I, C_ZERO])
            .scale(h);
    let sz = ComplexMatrix::from_diagonal(&[1.0, 0.0, -1.0]);
    SpinOperators { sx, sy, sz }
}

/// Index of `|m1, m2⟩` in the product basis; `m` must be 1, 0 or -1.
pub fn basis_index(m1: i32, m2: i32) -> usize {
    let slot = |m: i32| match m {
        1 => 0,
        0 => 1,
        -1 => 2,
        _ => panic!("spin-1 magnetic quantum number must be -1, 0 or 1, got {m}"),
    };
    slot(m1) * 3 + slot(m2)
}

/// Exchange operator `S1x S2x + S1y S2y + Δ S1z S2z`.
pub fn exchange_operator(delta: f64) -> ComplexMatrix {
    let s = spin1_operators();
    tensor_product(&s.sx, &s.sx) + tensor_product(&s.sy, &s.sy) + tensor_product(&s.sz, &s.sz).scale(delta)
}

/// Total magnetization `S1z + S2z`.
pub fn total_sz() -> ComplexMatrix {
    let s = spin1_operators();
    let id = ComplexMatrix::identity(3);
    tensor_product(&s.sz, &id) + tensor_product(&id, &s.sz)
}

/// Builds the 9×9 Hamiltonian.
pub fn build_hamiltonian(p: &HamiltonianParams) -> ComplexMatrix {
    let a = exchange_operator(p.delta);
    let a2 = &a * &a;
    a.scale(p.j) + a2.scale(p.k) + total_sz().scale(p.b)
}

/// Product state `|m1, m2⟩` as nine amplitudes.
pub fn basis_state(m1: i32, m2: i32) -> Vec<Complex64> {
    let mut v = vec![C_ZERO; 9];
    v[basis_index(m1, m2)] = C_ONE;
    v
}
