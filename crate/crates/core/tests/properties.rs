use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qutrit_thermal::analysis::{evaluate_point, run_sweep_with_threads, Axis, Param, PointParams, SweepSpec};
use qutrit_thermal::criteria::{negativity, realignment_criterion, LogBase};
use qutrit_thermal::matrix::{hermitian_eigen, tensor_product, ComplexMatrix};
use qutrit_thermal::spin::{
    analytic_spectrum_case1, analytic_spectrum_case2, build_hamiltonian, eigenspace_agreement, total_sz,
    HamiltonianParams,
};
use qutrit_thermal::thermal::gibbs_state;
use qutrit_thermal::Complex64;

fn coupling() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

fn random_unitary(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    hermitian_eigen(&(&a + &a.adjoint())).unwrap().vectors
}

fn random_unit(rng: &mut StdRng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> =
        (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamiltonian_hermitian_and_conserves_sz(j in coupling(), k in coupling(), d in coupling(), b in coupling()) {
        let h = build_hamiltonian(&HamiltonianParams::new(j, k, d, b));
        prop_assert!(h.hermiticity_deviation() <= 1e-12);
        prop_assert!(h.commutator(&total_sz()).max_abs() <= 1e-12 * (1.0 + h.max_abs()));
    }

    #[test]
    fn case1_formulas_match_numeric_spectrum(j in coupling(), d in coupling(), b in coupling()) {
        let p = HamiltonianParams::new(j, 0.0, d, b);
        let analytic = analytic_spectrum_case1(&p).unwrap();
        let numeric = hermitian_eigen(&build_hamiltonian(&p)).unwrap();
        for (a, n) in analytic.sorted_values().iter().zip(&numeric.values) {
            prop_assert!((a - n).abs() <= 1e-9);
        }
        prop_assert!(analytic.max_residual() <= 1e-9);
        prop_assert!(eigenspace_agreement(&analytic, &numeric) <= 1e-7);
    }

    #[test]
    fn case2_agrees_with_case1_at_zero_k(j in coupling(), d in coupling(), b in coupling()) {
        prop_assume!(j.abs() > 1e-6);
        let p = HamiltonianParams::new(j, 0.0, d, b);
        let c1 = analytic_spectrum_case1(&p).unwrap().sorted_values();
        let c2 = analytic_spectrum_case2(&p).unwrap().sorted_values();
        for (x, y) in c1.iter().zip(&c2) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn spectrum_is_even_in_field(j in coupling(), k in coupling(), d in coupling(), b in coupling()) {
        let p = HamiltonianParams::new(j, k, d, b);
        let plus = hermitian_eigen(&build_hamiltonian(&p)).unwrap().values;
        let minus = hermitian_eigen(&build_hamiltonian(&p.with_b(-b))).unwrap().values;
        for (x, y) in plus.iter().zip(&minus) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn gibbs_state_is_a_density_matrix(j in coupling(), k in coupling(), d in coupling(), b in coupling(), t in 0.01..10.0f64) {
        let h = build_hamiltonian(&HamiltonianParams::new(j, k, d, b));
        let s = gibbs_state(&h, t).unwrap();
        prop_assert!((s.rho.trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(s.rho.is_hermitian(1e-12));
        prop_assert!(hermitian_eigen(&s.rho).unwrap().values[0] >= -1e-12);
        prop_assert!(s.rho.commutator(&h).max_abs() <= 1e-10);
    }

    #[test]
    fn detectors_are_even_in_field(j in coupling(), k in coupling(), d in coupling(), b in coupling(), t in 0.05..3.0f64) {
        let p = HamiltonianParams::new(j, k, d, b);
        let plus = evaluate_point(&p, t, LogBase::E).unwrap();
        let minus = evaluate_point(&p.with_b(-b), t, LogBase::E).unwrap();
        prop_assert!((plus.negativity.unwrap() - minus.negativity.unwrap()).abs() <= 1e-9);
        prop_assert!((plus.r_value.unwrap() - minus.r_value.unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn pt_min_eigenvalue_tracks_negativity(j in coupling(), k in coupling(), d in coupling(), b in coupling(), t in 0.05..3.0f64) {
        let r = evaluate_point(&HamiltonianParams::new(j, k, d, b), t, LogBase::E).unwrap();
        let n = r.negativity.unwrap();
        prop_assert!(n >= 0.0);
        prop_assert_eq!(r.pt_min_eigenvalue.unwrap() < -1e-12, n > 0.0);
    }
}

#[test]
fn local_unitaries_leave_detectors_unchanged() {
    let mut rng = StdRng::seed_from_u64(101);
    let states = [
        gibbs_state(&build_hamiltonian(&HamiltonianParams::new(-1.0, 0.0, -1.0, 0.3)), 0.2).unwrap().rho,
        gibbs_state(&build_hamiltonian(&HamiltonianParams::new(1.0, -0.8, 2.0, 0.0)), 0.6).unwrap().rho,
        ComplexMatrix::outer(&random_unit(&mut rng, 9)),
    ];
    for rho in &states {
        let n0 = negativity(rho).unwrap().negativity;
        let t0 = realignment_criterion(rho, LogBase::E).unwrap().trace_norm;
        for _ in 0..10 {
            let u = tensor_product(&random_unitary(&mut rng, 3), &random_unitary(&mut rng, 3));
            let rotated = &u * rho * u.adjoint();
            assert!((negativity(&rotated).unwrap().negativity - n0).abs() <= 1e-9);
            assert!((realignment_criterion(&rotated, LogBase::E).unwrap().trace_norm - t0).abs() <= 1e-9);
        }
    }
}

#[test]
fn mixtures_of_product_states_pass_both_tests() {
    let mut rng = StdRng::seed_from_u64(202);
    for _ in 0..200 {
        let terms = rng.gen_range(1..=6);
        let weights: Vec<f64> = (0..terms).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let total: f64 = weights.iter().sum();
        let mut rho = ComplexMatrix::zeros(9, 9);
        for w in weights {
            let a = ComplexMatrix::outer(&random_unit(&mut rng, 3));
            let b = ComplexMatrix::outer(&random_unit(&mut rng, 3));
            rho = rho + tensor_product(&a, &b).scale(w / total);
        }
        assert_eq!(negativity(&rho).unwrap().negativity, 0.0);
        assert!(realignment_criterion(&rho, LogBase::E).unwrap().r_value <= 1e-9);
    }
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let fixed = PointParams::new(-1.0, 0.3, -1.0, 0.0, 0.2);
    let spec = SweepSpec::new(
        fixed,
        Axis::new(Param::B, -2.0, 2.0, 9).unwrap(),
        Some(Axis::new(Param::Delta, -2.0, 2.0, 7).unwrap()),
    );
    let one = run_sweep_with_threads(&spec, 1).unwrap();
    let many = run_sweep_with_threads(&spec, 8).unwrap();
    assert_eq!(one.records, many.records);
}

#[test]
fn symmetric_field_axis_gives_mirrored_records() {
    let fixed = PointParams::new(-1.0, 0.5, 1.5, 0.0, 0.3);
    let spec = SweepSpec::new(fixed, Axis::new(Param::B, -3.0, 3.0, 31).unwrap(), None);
    let res = run_sweep_with_threads(&spec, 4).unwrap();
    for i in 0..31 {
        let (a, b) = (&res.records[i], &res.records[30 - i]);
        assert_eq!(a.params.hamiltonian.b, -b.params.hamiltonian.b);
        assert!((a.negativity.unwrap() - b.negativity.unwrap()).abs() <= 1e-9);
        assert!((a.r_value.unwrap() - b.r_value.unwrap()).abs() <= 1e-9);
    }
}
