mod common;

use common::*;
use proptest::prelude::*;
use qtransistor::baths::{bose_occupation, rates, spectral_density, BathSpec};
use qtransistor::dynamics::{dissipator, solve_ness, Liouvillian};
use qtransistor::infoquant::{entropy, fidelity, mutual_info_2, mutual_info_3, negativity};
use qtransistor::linalg::{hermitian_eig, hermitian_eigenvalues, kron, partial_trace, partial_transpose};
use qtransistor::model::{decompose, Terminal, DEFAULT_BINNING_TOL};
use qtransistor::observables::heat_currents;
use qtransistor::{CMatrix, Density, C64};
use rand::Rng;

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

/// `1/2 G (S rho S^H ... )` written with the double commutators of the master equation.
fn commutator_form(rho: &CMatrix, site: Terminal, d: &qtransistor::Decomposition, bath: &qtransistor::Bath) -> CMatrix {
    let mut out = CMatrix::zeros(8, 8);
    for j in d.jumps(site) {
        let s = &j.computational;
        let sh = s.adjoint();
        let r = rates(j.omega, bath).unwrap();
        let emit = &s.commutator(&rho.matmul(&sh)) + &s.matmul(rho).commutator(&sh);
        let absorb = &sh.commutator(&rho.matmul(s)) + &sh.matmul(rho).commutator(s);
        out += &emit.scale_real(0.5 * r.emission);
        out += &absorb.scale_real(0.5 * r.absorption);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kron_is_associative_and_bilinear(s in seed()) {
        let mut r = rng(s);
        let a = random_matrix(&mut r, 2, 3);
        let a2 = random_matrix(&mut r, 2, 3);
        let b = random_matrix(&mut r, 3, 2);
        let c = random_matrix(&mut r, 2, 2);
        let alpha = gaussian(&mut r);
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12 * left.max_abs());
        let sum = kron(&(&a + &a2.scale(alpha)), &b);
        let split = &kron(&a, &b) + &kron(&a2, &b).scale(alpha);
        prop_assert!(sum.max_abs_diff(&split) <= 1e-12 * sum.max_abs().max(1.0));
    }

    #[test]
    fn hermitian_eig_reconstructs_random_8x8(s in seed()) {
        let mut r = rng(s);
        let a = random_hermitian(&mut r, 8);
        let e = hermitian_eig(&a).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&a) <= 1e-10 * a.max_abs());
        prop_assert!(e.unitarity_defect() <= 1e-10);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn complementary_marginals_of_pure_states_share_spectra(s in seed()) {
        let mut r = rng(s);
        let psi = random_pure(&mut r, 8);
        for (keep, rest) in [(vec![0], vec![1, 2]), (vec![1], vec![0, 2]), (vec![0, 1], vec![2])] {
            let a = hermitian_eigenvalues(&partial_trace(psi.matrix(), &[2, 2, 2], &keep).unwrap()).unwrap();
            let b = hermitian_eigenvalues(&partial_trace(psi.matrix(), &[2, 2, 2], &rest).unwrap()).unwrap();
            let (small, big) = if a.len() < b.len() { (a, b) } else { (b, a) };
            let pad = big.len() - small.len();
            for (k, x) in big.iter().enumerate() {
                let y = if k < pad { 0.0 } else { small[k - pad] };
                prop_assert!((x - y).abs() <= 1e-10, "{big:?} vs {small:?}");
            }
        }
    }

    #[test]
    fn decomposition_of_random_systems_is_covariant_and_complete(s in seed()) {
        let mut r = rng(s);
        let spec = random_spec(&mut r);
        let d = decompose(&spec, DEFAULT_BINNING_TOL).unwrap();
        prop_assert!(d.covariance_defect() <= 1e-9);
        prop_assert!(d.completeness_defect() <= 1e-10);
        prop_assert!(d.bohr.len() <= 28 && d.bohr.iter().all(|&w| w > 0.0));
        prop_assert!(d.eigen.reconstruct().max_abs_diff(&d.hamiltonian) <= 1e-10 * d.hamiltonian.max_abs());
    }

    #[test]
    fn dissipators_are_traceless_and_hermiticity_preserving(s in seed()) {
        let mut r = rng(s);
        let d = decompose(&random_spec(&mut r), DEFAULT_BINNING_TOL).unwrap();
        let rho = random_density(&mut r, 8);
        for site in Terminal::ALL {
            let bath = random_bath(&mut r, d.default_cutoff());
            let out = dissipator(&rho, site, &d, &bath).unwrap();
            let scale = out.max_abs().max(1e-300);
            prop_assert!(out.trace().norm() <= 1e-12 * scale.max(1.0));
            prop_assert!(out.hermitian_deviation() <= 1e-12 * scale);
        }
    }

    #[test]
    fn sandwich_form_equals_commutator_form(s in seed()) {
        let mut r = rng(s);
        let d = decompose(&random_spec(&mut r), DEFAULT_BINNING_TOL).unwrap();
        let rho = random_density(&mut r, 8);
        for site in Terminal::ALL {
            let bath = random_bath(&mut r, d.default_cutoff());
            let a = dissipator(&rho, site, &d, &bath).unwrap();
            let b = commutator_form(rho.matrix(), site, &d, &bath);
            prop_assert!(a.max_abs_diff(&b) <= 1e-12 * b.max_abs().max(1e-300));
        }
    }

    #[test]
    fn zero_temperature_dissipator_has_only_emission_terms(s in seed()) {
        let mut r = rng(s);
        let d = decompose(&random_spec(&mut r), DEFAULT_BINNING_TOL).unwrap();
        let rho = random_density(&mut r, 8);
        let bath = BathSpec::new(0.0, 0.05, 1.0, d.default_cutoff()).unwrap();
        let got = dissipator(&rho, Terminal::Drain, &d, &bath).unwrap();
        let mut want = CMatrix::zeros(8, 8);
        for j in d.jumps(Terminal::Drain) {
            let s = &j.computational;
            let sh = s.adjoint();
            let g = spectral_density(j.omega, &bath).unwrap();
            let term = &s.matmul(rho.matrix()).matmul(&sh) - &sh.matmul(s).anticommutator(rho.matrix()).scale_real(0.5);
            want += &term.scale_real(g);
        }
        prop_assert!(got.max_abs_diff(&want) <= 1e-13 * want.max_abs().max(1e-300));
    }

    #[test]
    fn liouvillians_preserve_trace_and_are_stable(s in seed()) {
        let mut r = rng(s);
        let d = decompose(&random_spec(&mut r), DEFAULT_BINNING_TOL).unwrap();
        let wc = d.default_cutoff();
        let baths = [random_bath(&mut r, wc), random_bath(&mut r, wc), random_bath(&mut r, wc)];
        let l = Liouvillian::from_decomposition(&d, &baths).unwrap();
        prop_assert!(l.trace_preservation_defect() <= 1e-10);
        let spectrum = l.spectrum().unwrap();
        prop_assert!(spectrum.iter().all(|z| z.re <= 1e-10), "{spectrum:?}");
        prop_assert!(spectrum.iter().any(|z| z.norm() <= 1e-10));
    }

    #[test]
    fn first_law_holds_on_random_draws(s in seed()) {
        let mut r = rng(s);
        let d = decompose(&random_spec(&mut r), DEFAULT_BINNING_TOL).unwrap();
        let wc = d.default_cutoff();
        let baths = [random_bath(&mut r, wc), random_bath(&mut r, wc), random_bath(&mut r, wc)];
        let l = Liouvillian::from_decomposition(&d, &baths).unwrap();
        let ness = solve_ness(&l).unwrap();
        let i = heat_currents(&ness.state, &d, &baths).unwrap();
        // Net currents can be tiny next to the gross exchange with each bath,
        // so the sum is compared with the rounding scale of Tr[H D_k(rho)].
        let gross = d.max_abs_energy() * l.norm_bound();
        prop_assert!(i.sum().abs() <= 1e-10 * gross, "{i:?}");
    }

    #[test]
    fn fidelity_is_symmetric(s in seed()) {
        let mut r = rng(s);
        let a = random_density(&mut r, 8);
        let b = random_density(&mut r, 8);
        let (f, g) = (fidelity(&a, &b).unwrap(), fidelity(&b, &a).unwrap());
        prop_assert!((f - g).abs() <= 1e-10 && (0.0..=1.0).contains(&f));
        prop_assert!((fidelity(&a, &a).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn tripartite_information_of_pure_states_vanishes(s in seed()) {
        let mut r = rng(s);
        prop_assert!(mutual_info_3(&random_pure(&mut r, 8)).unwrap().abs() <= 1e-10);
    }

    #[test]
    fn negativity_of_products_vanishes(s in seed()) {
        let mut r = rng(s);
        let a = random_density(&mut r, 2);
        let b = random_density(&mut r, 4);
        let rho = kron(a.matrix(), b.matrix());
        prop_assert!(negativity(&rho, &[2, 4], 0).unwrap() <= 1e-12);
        prop_assert!(negativity(&rho, &[2, 4], 1).unwrap() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn subadditivity_and_nonnegative_mutual_information(s in seed()) {
        let mut r = rng(s);
        let rho: Density = if r.gen_bool(0.3) { random_pure(&mut r, 8) } else { random_density(&mut r, 8) };
        for pair in [(Terminal::Source, Terminal::Modulator), (Terminal::Source, Terminal::Drain), (Terminal::Modulator, Terminal::Drain)] {
            let ab = partial_trace(rho.matrix(), &[2, 2, 2], &[pair.0.index(), pair.1.index()]).unwrap();
            let a = partial_trace(rho.matrix(), &[2, 2, 2], &[pair.0.index()]).unwrap();
            let b = partial_trace(rho.matrix(), &[2, 2, 2], &[pair.1.index()]).unwrap();
            prop_assert!(entropy(&ab).unwrap() <= entropy(&a).unwrap() + entropy(&b).unwrap() + 1e-12);
            prop_assert!(mutual_info_2(&rho, pair).unwrap() >= -1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn partial_transpose_keeps_trace_and_hermiticity(s in seed()) {
        let mut r = rng(s);
        let rho = random_density(&mut r, 8);
        let dims: &[usize] = if r.gen_bool(0.5) { &[2, 4] } else { &[4, 2] };
        let which = r.gen_range(0..2);
        let pt = partial_transpose(rho.matrix(), dims, which).unwrap();
        prop_assert!((pt.trace() - C64::new(1.0, 0.0)).norm() <= 1e-12);
        prop_assert!(pt.hermitian_deviation() <= 1e-12);
        prop_assert!(partial_transpose(&pt, dims, which).unwrap().max_abs_diff(rho.matrix()) == 0.0);
    }

    #[test]
    fn kms_detailed_balance(s in seed()) {
        let mut r = rng(s);
        let omega: f64 = r.gen_range(1e-3..20.0);
        let t: f64 = r.gen_range(1e-3..50.0);
        let lambda = r.gen_range(0.0..1.0);
        let bath = BathSpec::new(t, lambda, r.gen_range(0.1..3.0), r.gen_range(0.5..50.0)).unwrap();
        let g = rates(omega, &bath).unwrap();
        prop_assert!(g.emission >= 0.0 && g.absorption >= 0.0);
        prop_assert!((g.absorption - (-omega / t).exp() * g.emission).abs() <= 4.0 * f64::EPSILON * g.emission);
        let jn = spectral_density(omega, &bath).unwrap() * bose_occupation(omega, t).unwrap();
        prop_assert!((g.absorption - jn).abs() <= 1e-12 * g.emission.max(1e-300));
    }

    #[test]
    fn detailed_balance_ratio_ignores_bath_shape(s in seed()) {
        let mut r = rng(s);
        let omega = r.gen_range(1e-2..10.0);
        let t = r.gen_range(1e-2..20.0);
        let ratio = |lambda: f64, s: f64, wc: f64| {
            let g = rates(omega, &BathSpec::new(t, lambda, s, wc).unwrap()).unwrap();
            g.absorption / g.emission
        };
        let base = ratio(1e-3, 1.0, 10.0);
        let other = ratio(r.gen_range(1e-6..1.0), r.gen_range(0.2..2.5), r.gen_range(1.0..40.0));
        prop_assert!((base - other).abs() <= 1e-13 * base.max(1e-300));
        let weak = rates(omega, &BathSpec::new(t, 1e-4, 1.0, 10.0).unwrap()).unwrap();
        let strong = rates(omega, &BathSpec::new(t, 2e-4, 1.0, 10.0).unwrap()).unwrap();
        prop_assert!(strong.emission > weak.emission && strong.absorption >= weak.absorption);
    }
}
