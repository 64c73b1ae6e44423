//! Independent closed-form and symmetry oracles.

mod common;

use common::*;
use qtransistor::baths::{rates, BathSpec};
use qtransistor::config::fig2;
use qtransistor::dynamics::{dissipator, solve_ness, DensityMatrix, Liouvillian};
use qtransistor::infoquant::{fidelity, reduced_negativity, split_negativity};
use qtransistor::linalg::kron;
use qtransistor::model::{decompose, gibbs_state, Terminal, DEFAULT_BINNING_TOL};
use qtransistor::observables::heat_currents;
use qtransistor::sweep::SweepContext;
use qtransistor::{Bath, CMatrix, Currents, Density, System, C64};
use rand::Rng;

fn solve_currents(spec: &System, baths: &[Bath; 3]) -> Currents {
    let d = decompose(spec, DEFAULT_BINNING_TOL).unwrap();
    let l = Liouvillian::from_decomposition(&d, baths).unwrap();
    let ness = solve_ness(&l).unwrap();
    heat_currents(&ness.state, &d, baths).unwrap()
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn two_qubit_block_spectrum_with_free_drain() {
    // sigma_y sigma_y maps |00> -> -|11> and |01> -> |10>, so the S-M pair
    // splits into two 2x2 blocks with closed-form eigenvalues.
    let mut r = rng(21);
    for _ in 0..200 {
        let (ws, wm, wd, z) = (r.gen_range(0.1..2.0), r.gen_range(0.1..2.0), r.gen_range(0.1..2.0), r.gen_range(-1.0..1.0));
        let spec = System { omega_s: ws, omega_m: wm, omega_d: wd, zeta_sm: z, zeta_md: 0.0, zeta_sd: 0.0 };
        let outer = (0.25 * (ws + wm) * (ws + wm) + z * z).sqrt();
        let inner = (0.25 * (ws - wm) * (ws - wm) + z * z).sqrt();
        let mut want = Vec::new();
        for e in [outer, -outer, inner, -inner] {
            want.push(e + 0.5 * wd);
            want.push(e - 0.5 * wd);
        }
        let d = decompose(&spec, DEFAULT_BINNING_TOL).unwrap();
        let got = sorted(d.energies().to_vec());
        for (g, w) in got.iter().zip(sorted(want)) {
            assert!((g - w).abs() < 1e-12, "{got:?}");
        }
    }
}

#[test]
fn lone_qubit_gibbs_state_is_annihilated() {
    // Uncoupled source qubit: the emission/absorption balance gives
    // p_excited / p_ground = exp(-omega/T), with |0> the excited level.
    let mut r = rng(22);
    for _ in 0..100 {
        let ws: f64 = r.gen_range(0.2..3.0);
        let t: f64 = r.gen_range(0.05..10.0);
        let spec = System { omega_s: ws, omega_m: 0.7, omega_d: 0.4, zeta_sm: 0.0, zeta_md: 0.0, zeta_sd: 0.0 };
        let d = decompose(&spec, DEFAULT_BINNING_TOL).unwrap();
        let bath = BathSpec::new(t, r.gen_range(1e-4..0.1), r.gen_range(0.5..2.0), 10.0).unwrap();
        let z = 2.0 * (0.5 * ws / t).cosh();
        let qubit = CMatrix::diag(&[(-0.5 * ws / t).exp() / z, (0.5 * ws / t).exp() / z]);
        let (a, b) = (r.gen_range(0.0..1.0), r.gen_range(0.0..1.0));
        let rest = kron(&CMatrix::diag(&[a, 1.0 - a]), &CMatrix::diag(&[b, 1.0 - b]));
        let rho = Density::new(kron(&qubit, &rest)).unwrap();
        let out = dissipator(&rho, Terminal::Source, &d, &bath).unwrap();
        let scale = rates(ws, &bath).unwrap().emission;
        assert!(out.max_abs() <= 1e-13 * scale, "{} vs rate {scale}", out.max_abs());
    }
}

#[test]
fn gibbs_state_is_a_fixed_point_at_common_temperature() {
    let mut r = rng(23);
    for _ in 0..50 {
        let d = decompose(&random_spec(&mut r), DEFAULT_BINNING_TOL).unwrap();
        let t = r.gen_range(0.1..10.0);
        let wc = d.default_cutoff();
        let baths = [0, 1, 2].map(|_| BathSpec::new(t, r.gen_range(1e-4..0.1), r.gen_range(0.5..2.0), wc).unwrap());
        let l = Liouvillian::from_decomposition(&d, &baths).unwrap();
        let gibbs = gibbs_state(&d.hamiltonian, t).unwrap();
        let rate = l.norm_bound();
        assert!(l.apply(&gibbs).unwrap().max_abs() <= 1e-12 * rate);
    }
}

#[test]
fn closed_system_spectrum_is_bohr_frequencies() {
    let mut r = rng(24);
    for _ in 0..20 {
        let d = decompose(&random_spec(&mut r), DEFAULT_BINNING_TOL).unwrap();
        let wc = d.default_cutoff();
        let baths = [0, 1, 2].map(|_| BathSpec::new(1.0, 0.0, 1.0, wc).unwrap());
        let l = Liouvillian::from_decomposition(&d, &baths).unwrap();
        let spectrum = l.spectrum().unwrap();
        assert!(spectrum.iter().all(|z| z.re.abs() < 1e-10));
        let e = d.energies();
        let want = sorted(e.iter().flat_map(|a| e.iter().map(move |b| b - a)).collect());
        let got = sorted(spectrum.iter().map(|z| z.im).collect());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-9, "{g} vs {w}");
        }
    }
}

#[test]
fn decoupled_modulator_carries_no_current() {
    let spec = System::reference();
    let d = decompose(&spec, DEFAULT_BINNING_TOL).unwrap();
    let wc = d.default_cutoff();
    let baths = [
        BathSpec::new(10.0, 1e-3, 1.0, wc).unwrap(),
        BathSpec::new(3.0, 0.0, 1.0, wc).unwrap(),
        BathSpec::new(0.5, 1e-3, 1.0, wc).unwrap(),
    ];
    let i = solve_currents(&spec, &baths);
    assert_eq!(i.modulator, 0.0);
    assert!((i.source + i.drain).abs() <= 1e-12 * i.source.abs(), "{i:?}");
    assert!(i.source > 0.0);
}

#[test]
fn mirror_symmetric_transistor_swaps_currents() {
    let spec = System { omega_s: 1.0, omega_m: 0.3, omega_d: 1.0, zeta_sm: 0.5, zeta_md: 0.5, zeta_sd: 0.2 };
    let wc = decompose(&spec, DEFAULT_BINNING_TOL).unwrap().default_cutoff();
    let bath = |t: f64, lambda: f64| BathSpec::new(t, lambda, 1.0, wc).unwrap();
    let forward = solve_currents(&spec, &[bath(3.0, 1e-2), bath(2.0, 5e-3), bath(1.0, 1e-2)]);
    let mirrored = solve_currents(&spec, &[bath(1.0, 1e-2), bath(2.0, 5e-3), bath(3.0, 1e-2)]);
    let scale = forward.max_abs();
    assert!((mirrored.source - forward.drain).abs() <= 1e-9 * scale, "{forward:?} {mirrored:?}");
    assert!((mirrored.drain - forward.source).abs() <= 1e-9 * scale);
    assert!((mirrored.modulator - forward.modulator).abs() <= 1e-9 * scale);
}

#[test]
fn reference_point_current_directions() {
    let ctx = SweepContext::new(fig2()).unwrap();
    let i = ctx.solve(2.5).unwrap().currents;
    assert!(i.source > 0.0, "{i:?}");
    assert!(i.drain < 0.0, "{i:?}");
    assert!(i.modulator.abs() < 0.05 * i.source, "{i:?}");
}

fn ket(amplitudes: &[(usize, f64)]) -> DensityMatrix<f64> {
    let mut psi = vec![C64::new(0.0, 0.0); 8];
    for &(k, a) in amplitudes {
        psi[k] = C64::new(a, 0.0);
    }
    DensityMatrix::pure(&psi).unwrap()
}

#[test]
fn negativity_of_bell_pair_with_spectator() {
    let h = 0.5f64.sqrt();
    // (|00> + |11>)/sqrt2 on S and M, drain in |0>: basis index 4 s + 2 m + d.
    let rho = ket(&[(0, h), (6, h)]);
    assert!((split_negativity(&rho, Terminal::Source).unwrap() - 1.0).abs() < 1e-12);
    assert!(split_negativity(&rho, Terminal::Drain).unwrap().abs() < 1e-12);
    assert!((reduced_negativity(&rho, Terminal::Drain).unwrap() - 1.0).abs() < 1e-12);
    assert!(reduced_negativity(&rho, Terminal::Source).unwrap().abs() < 1e-12);
}

#[test]
fn fidelity_of_commuting_states_is_classical() {
    let mut r = rng(25);
    for _ in 0..100 {
        let mut p: Vec<f64> = (0..8).map(|_| r.gen_range(0.0..1.0)).collect();
        let mut q: Vec<f64> = (0..8).map(|_| r.gen_range(0.0..1.0)).collect();
        let (sp, sq): (f64, f64) = (p.iter().sum(), q.iter().sum());
        p.iter_mut().for_each(|x| *x /= sp);
        q.iter_mut().for_each(|x| *x /= sq);
        let bc: f64 = p.iter().zip(&q).map(|(a, b)| (a * b).sqrt()).sum();
        let rho = DensityMatrix::new(CMatrix::diag(&p)).unwrap();
        let sigma = DensityMatrix::new(CMatrix::diag(&q)).unwrap();
        assert!((fidelity(&rho, &sigma).unwrap() - bc * bc).abs() < 1e-12);
    }
}

#[test]
fn shipped_reference_config_matches_preset() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/fig2.toml");
    let parsed = qtransistor::config::RunConfig::from_file(&path).unwrap();
    assert_eq!(parsed, fig2());
}
