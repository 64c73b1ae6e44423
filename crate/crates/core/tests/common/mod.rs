#![allow(dead_code)]

use qtransistor::baths::BathSpec;
use qtransistor::dynamics::DensityMatrix;
use qtransistor::model::SystemSpec;
use qtransistor::{Bath, CMatrix, Density, System, C64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(r: &mut impl Rng) -> C64 {
    C64::new(r.sample(StandardNormal), r.sample(StandardNormal))
}

pub fn random_matrix(r: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(r))
}

pub fn random_hermitian(r: &mut impl Rng, n: usize) -> CMatrix {
    random_matrix(r, n, n).hermitian_part()
}

pub fn random_ket(r: &mut impl Rng, n: usize) -> Vec<C64> {
    let v: Vec<C64> = (0..n).map(|_| gaussian(r)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Full-rank Ginibre state `G G^H / Tr`.
pub fn random_density(r: &mut impl Rng, n: usize) -> Density {
    let g = random_matrix(r, n, n);
    let m = g.matmul(&g.adjoint());
    let t = m.trace().re;
    DensityMatrix::from_numerical(&m.scale_real(1.0 / t)).unwrap()
}

pub fn random_pure(r: &mut impl Rng, n: usize) -> Density {
    DensityMatrix::pure(&random_ket(r, n)).unwrap()
}

pub fn random_spec(r: &mut impl Rng) -> System {
    SystemSpec {
        omega_s: r.gen_range(0.5..1.5),
        omega_m: r.gen_range(0.05..1.5),
        omega_d: r.gen_range(0.2..1.5),
        zeta_sm: r.gen_range(0.0..1.0),
        zeta_md: r.gen_range(0.0..1.0),
        zeta_sd: r.gen_range(0.0..1.0),
    }
}

pub fn random_bath(r: &mut impl Rng, cutoff: f64) -> Bath {
    BathSpec::new(r.gen_range(0.0..20.0), r.gen_range(1e-6..0.1), r.gen_range(0.3..2.0), cutoff).unwrap()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.max_abs_diff(b)
}
