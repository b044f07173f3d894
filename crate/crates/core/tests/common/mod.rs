#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use qfeedback::linalg::{hermitian_part, hermitian_spectrum, real, ComplexMatrix, ComplexVector};
use qfeedback::state::expm_skew;
use qfeedback::{DensityMatrix, HermitianObservable, MeasurementOperatorSet, PureState, UnitaryOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    DMatrix::from_fn(rows, cols, |_, _| Complex64::new(r.sample(StandardNormal), r.sample(StandardNormal)))
}

pub fn hermitian(r: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    hermitian_part(&gaussian_matrix(r, n, n))
}

/// Random Hermitian with `Tr[H^2] = mu`.
pub fn hermitian_with_power(r: &mut ChaCha8Rng, n: usize, mu: f64) -> HermitianObservable {
    let h = hermitian(r, n);
    let norm = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    HermitianObservable::new(h * real(mu.sqrt() / norm)).unwrap()
}

pub fn unitary(r: &mut ChaCha8Rng, n: usize) -> UnitaryOperator {
    let h = HermitianObservable::new(hermitian(r, n)).unwrap();
    expm_skew(&h, 1.0).unwrap()
}

/// Random full-rank-ish mixed state (Ginibre).
pub fn density(r: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let g = gaussian_matrix(r, n, n);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(hermitian_part(&(m / real(tr)))).unwrap()
}

pub fn pure(r: &mut ChaCha8Rng, n: usize) -> PureState {
    let v: ComplexVector = gaussian_matrix(r, n, 1).column(0).into_owned();
    PureState::normalized(v).unwrap()
}

/// Random complete set of `count` general operators.
pub fn general_set(r: &mut ChaCha8Rng, n: usize, count: usize) -> MeasurementOperatorSet {
    let ks: Vec<ComplexMatrix> = (0..count).map(|_| gaussian_matrix(r, n, n)).collect();
    let mut s = ComplexMatrix::zeros(n, n);
    for k in &ks {
        s += k.adjoint() * k;
    }
    let inv_sqrt = hermitian_spectrum(&hermitian_part(&s)).reconstruct_with(|x| real(1.0 / x.sqrt()));
    MeasurementOperatorSet::new(ks.iter().map(|k| k * &inv_sqrt).collect()).unwrap()
}

/// Random complete set of positive operators (the positive polar factors of a general set).
pub fn pure_set(r: &mut ChaCha8Rng, n: usize, count: usize) -> MeasurementOperatorSet {
    let general = general_set(r, n, count);
    let ops = general
        .ops()
        .iter()
        .map(|k| qfeedback::linalg::psd_sqrt(&hermitian_part(&(k.adjoint() * k))))
        .collect();
    MeasurementOperatorSet::new(ops).unwrap()
}

/// `U diag(values) U^dagger` with random `U`, returning the state and its eigenvectors.
pub fn state_with_spectrum(r: &mut ChaCha8Rng, values: &[f64]) -> (DensityMatrix, ComplexMatrix) {
    let u = unitary(r, values.len()).matrix().clone();
    let d = qfeedback::linalg::diagonal(values);
    (DensityMatrix::new(hermitian_part(&(&u * d * u.adjoint()))).unwrap(), u)
}
