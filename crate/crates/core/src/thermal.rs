//! Gibbs states `ρ(T) = e^{−H/T} / Z` (Boltzmann constant set to one).

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, ComplexMatrix};

#[derive(Debug, Clone)]
pub struct ThermalState {
    pub rho: ComplexMatrix,
    pub temperature: f64,
    pub beta: f64,
    /// `Σ e^{−β(λᵢ − λ_min)}`; the true partition function is
    /// `partition_function · e^{−β·energy_shift}`.
    pub partition_function: f64,
    /// Ground-state energy `λ_min` subtracted before exponentiating.
    pub energy_shift: f64,
}

impl ThermalState {
    /// `ln Z` in the unshifted convention; finite even when `Z` itself overflows.
    pub fn log_partition_function(&self) -> f64 {
        self.partition_function.ln() - self.beta * self.energy_shift
    }
}

/// Gibbs state of `h` at `temperature`, through the spectral decomposition of `h`.
pub fn gibbs_state(h: &ComplexMatrix, temperature: f64) -> Result<ThermalState> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    let spec = hermitian_eigen(h)?;
    let beta = 1.0 / temperature;
    let ground = spec.values[0];
    let weights: Vec<f64> = spec.values.iter().map(|&l| (-beta * (l - ground)).exp()).collect();
    let z: f64 = weights.iter().sum();
    let mut k = 0;
    let rho = spec.map_to_matrix(|_| {
        let w = weights[k] / z;
        k += 1;
        w
    });
    Ok(ThermalState { rho, temperature, beta, partition_function: z, energy_shift: ground })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::negativity;
    use crate::matrix::hermitian_eigenvalues;
    use crate::spin::{build_hamiltonian, HamiltonianParams};
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn maximally_mixed() -> ComplexMatrix {
        ComplexMatrix::identity(9).scale(1.0 / 9.0)
    }

    #[test]
    fn zero_hamiltonian_gives_maximally_mixed() {
        for t in [0.01, 1.0, 50.0] {
            let s = gibbs_state(&ComplexMatrix::zeros(9, 9), t).unwrap();
            assert!(s.rho.max_abs_diff(&maximally_mixed()) < 1e-15);
            assert!((s.partition_function - 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_temperature() {
        let h = ComplexMatrix::zeros(9, 9);
        for t in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(gibbs_state(&h, t), Err(Error::NonPositiveTemperature(_))));
        }
        let not_h = ComplexMatrix::from_real_rows(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(gibbs_state(&not_h, 1.0), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn low_temperature_projects_on_ground_state() {
        let h = build_hamiltonian(&HamiltonianParams::new(1.0, 0.0, 1.0, 0.0));
        let s = gibbs_state(&h, 1e-3).unwrap();
        // Ground state (2,-2,2)/√12 on {|1,-1>, |0,0>, |-1,1>}.
        let c = 1.0 / 12f64.sqrt();
        let mut g = vec![Complex64::new(0.0, 0.0); 9];
        g[2] = Complex64::new(2.0 * c, 0.0);
        g[4] = Complex64::new(-2.0 * c, 0.0);
        g[6] = Complex64::new(2.0 * c, 0.0);
        let projector = ComplexMatrix::outer(&g);
        assert!(s.rho.max_abs_diff(&projector) < 1e-12);
        let n = negativity(&s.rho).unwrap().negativity;
        assert!((n - 1.0).abs() < 1e-9);
    }

    #[test]
    fn high_temperature_limit() {
        let h = build_hamiltonian(&HamiltonianParams::new(-1.3, 2.0, 0.7, 1.5));
        let s = gibbs_state(&h, 1e6).unwrap();
        assert!(s.rho.max_abs_diff(&maximally_mixed()) <= 1e-5);
    }

    #[test]
    fn trace_hermiticity_positivity_and_commutation() {
        let h = build_hamiltonian(&HamiltonianParams::new(-1.0, 0.4, -1.0, 0.6));
        for t in [0.05, 0.2, 1.2, 7.0] {
            let s = gibbs_state(&h, t).unwrap();
            assert!((s.rho.trace().re - 1.0).abs() < 1e-12);
            assert!(s.rho.trace().im.abs() < 1e-12);
            assert!(s.rho.is_hermitian(1e-14));
            assert!(hermitian_eigenvalues(&s.rho).unwrap()[0] >= -1e-12);
            assert!(s.rho.commutator(&h).max_abs() < 1e-10);
        }
    }

    #[test]
    fn survives_very_large_beta() {
        let h = build_hamiltonian(&HamiltonianParams::new(-1.0, 0.0, -1.0, 0.0)).scale(1e3);
        let s = gibbs_state(&h, 1e-3).unwrap();
        assert!(s.rho.max_abs().is_finite());
        assert!((s.rho.trace().re - 1.0).abs() < 1e-12);
        assert!(s.log_partition_function().is_finite());
    }

    #[test]
    fn shift_invariance() {
        let h = build_hamiltonian(&HamiltonianParams::new(0.8, -0.6, 1.4, -0.9));
        for c in [-10.0, 0.5, 123.0] {
            let shifted = &h + &ComplexMatrix::identity(9).scale(c);
            let a = gibbs_state(&h, 0.3).unwrap();
            let b = gibbs_state(&shifted, 0.3).unwrap();
            assert!(a.rho.max_abs_diff(&b.rho) < 1e-12);
        }
    }

    #[test]
    fn purity_decreases_with_temperature() {
        let h = build_hamiltonian(&HamiltonianParams::new(-1.0, 0.0, -1.0, 0.0));
        let mut last = f64::INFINITY;
        for i in 0..60 {
            let t = 0.02 + 0.1 * i as f64;
            let rho = gibbs_state(&h, t).unwrap().rho;
            let purity = (&rho * &rho).trace().re;
            assert!(purity <= last + 1e-12);
            last = purity;
        }
    }

    #[test]
    fn basis_covariance() {
        let mut rng = StdRng::seed_from_u64(21);
        let h = build_hamiltonian(&HamiltonianParams::new(-0.5, 0.9, 2.0, 0.3));
        // Random unitary from the eigenbasis of a random Hermitian matrix.
        let a = ComplexMatrix::from_fn(9, 9, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let u = hermitian_eigen(&(&a + &a.adjoint())).unwrap().vectors;
        let rotated = &u * &h * u.adjoint();
        let lhs = gibbs_state(&rotated, 0.4).unwrap().rho;
        let rhs = &u * &gibbs_state(&h, 0.4).unwrap().rho * u.adjoint();
        assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }
}
