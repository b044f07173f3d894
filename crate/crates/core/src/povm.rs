//! Generalized measurements: construction, validation and application of
//! finite operator sets `{Omega_n}` with `sum_n Omega_n^dagger Omega_n = I`.

use crate::error::{Error, Result};
use crate::linalg::{
    self, ensure_square, frobenius, hermitian_part, hermitian_spectrum, hermiticity_defect, is_finite, real,
    tolerance, ComplexMatrix,
};
use crate::rng::RandomStream;
use crate::state::{DensityMatrix, HermitianObservable, UnitaryOperator};

/// Structural class of a measurement, inferred from its operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasurementKind {
    /// At least one operator is not positive semidefinite.
    General,
    /// Every operator is positive semidefinite (Hermitian).
    Pure,
    /// Every operator is an orthogonal projector.
    Projective,
}

#[derive(Clone, Debug)]
pub struct MeasurementOperatorSet {
    ops: Vec<ComplexMatrix>,
    kind: MeasurementKind,
    residual: f64,
}

impl MeasurementOperatorSet {
    /// Validates shapes and completeness to [`tolerance::COMPLETENESS`].
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_tolerance(ops, tolerance::COMPLETENESS)
    }

    /// As [`Self::new`] with an explicit completeness tolerance, for operator
    /// families that are complete only to a stated order.
    pub fn with_tolerance(ops: Vec<ComplexMatrix>, completeness_tolerance: f64) -> Result<Self> {
        let Some(first) = ops.first() else {
            return Err(Error::InvalidParameter("empty measurement set".into()));
        };
        let n = ensure_square(first)?;
        let mut sum = linalg::zeros(n);
        for op in &ops {
            let m = ensure_square(op)?;
            if m != n {
                return Err(Error::DimensionMismatch { expected: n, found: m });
            }
            if !is_finite(op) {
                return Err(Error::NonFinite);
            }
            sum += op.adjoint() * op;
        }
        let residual = frobenius(&(sum - linalg::identity(n)));
        if residual > completeness_tolerance {
            return Err(Error::Incomplete {
                residual,
                tolerance: completeness_tolerance,
            });
        }
        let kind = classify(&ops);
        Ok(Self { ops, kind, residual })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ops: vec![linalg::identity(n)],
            kind: MeasurementKind::Projective,
            residual: 0.0,
        }
    }

    /// Rank-one projective measurement in the standard basis.
    pub fn computational_basis(n: usize) -> Self {
        let ops = (0..n)
            .map(|k| {
                let mut m = linalg::zeros(n);
                m[(k, k)] = real(1.0);
                m
            })
            .collect();
        Self {
            ops,
            kind: MeasurementKind::Projective,
            residual: 0.0,
        }
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ops[0].nrows()
    }

    pub fn kind(&self) -> MeasurementKind {
        self.kind
    }

    pub fn is_pure(&self) -> bool {
        self.kind != MeasurementKind::General
    }

    /// Frobenius norm of `sum Omega^dagger Omega - I`.
    pub fn completeness_residual(&self) -> f64 {
        self.residual
    }

    /// `{U Omega_n U^dagger}`
    pub fn conjugated(&self, u: &UnitaryOperator) -> Self {
        let ops = self.ops.iter().map(|op| u.conjugate(op)).collect();
        Self {
            ops,
            kind: self.kind,
            residual: self.residual,
        }
    }

    /// Outcome probabilities `Tr[Omega_n rho Omega_n^dagger]`.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<Vec<f64>> {
        self.check_dim(rho)?;
        Ok(self.ops.iter().map(|op| unnormalized_post(op, rho).trace().re).collect())
    }

    fn check_dim(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho.dim(),
            });
        }
        Ok(())
    }
}

fn classify(ops: &[ComplexMatrix]) -> MeasurementKind {
    let mut kind = MeasurementKind::Projective;
    for op in ops {
        if hermiticity_defect(op) > tolerance::HERMITIAN {
            return MeasurementKind::General;
        }
        let h = hermitian_part(op);
        if hermitian_spectrum(&h).min() < -tolerance::PSD {
            return MeasurementKind::General;
        }
        if frobenius(&(&h * &h - &h)) > tolerance::HERMITIAN {
            kind = MeasurementKind::Pure;
        }
    }
    kind
}

pub(crate) fn unnormalized_post(op: &ComplexMatrix, rho: &DensityMatrix) -> ComplexMatrix {
    op * rho.matrix() * op.adjoint()
}

/// One realized measurement outcome.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    pub index: usize,
    pub probability: f64,
    pub post_state: DensityMatrix,
}

/// `Omega_alpha = C exp(-k dt (Q - alpha)^2)` on a uniform `alpha` grid.
///
/// The returned operators carry the quadrature weight `sqrt(delta alpha)` so
/// that they form a complete finite set; `C` is fixed numerically so the
/// discretized completeness holds (its continuum value is `(2 k dt / pi)^{1/4}`).
pub fn gaussian_weak_povm(
    q: &HermitianObservable,
    k: f64,
    dt: f64,
    alpha_grid: &[f64],
) -> Result<MeasurementOperatorSet> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("measurement constant k must be positive, got {k}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    if alpha_grid.len() < 2 {
        return Err(Error::GridTooCoarse("need at least two grid points".into()));
    }
    let step = alpha_grid[1] - alpha_grid[0];
    if !(step > 0.0) {
        return Err(Error::InvalidParameter("alpha grid must be increasing".into()));
    }
    for w in alpha_grid.windows(2) {
        if ((w[1] - w[0]) - step).abs() > 1e-9 * step.max(w[1].abs()) {
            return Err(Error::InvalidParameter("alpha grid must be uniformly spaced".into()));
        }
    }

    let spectrum = crate::state::eig_hermitian(q);
    let kdt = k * dt;
    // Discretized normalization per eigenvalue of Q.
    let sums: Vec<f64> = spectrum
        .values
        .iter()
        .map(|&qi| alpha_grid.iter().map(|&a| (-2.0 * kdt * (qi - a).powi(2)).exp()).sum::<f64>() * step)
        .collect();
    if sums.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::GridTooCoarse("grid misses the support of an eigenvalue of Q".into()));
    }
    let mean = sums.iter().sum::<f64>() / sums.len() as f64;
    let c_squared = 1.0 / mean;
    let worst = sums.iter().map(|s| (c_squared * s - 1.0).abs()).fold(0.0, f64::max);
    if worst * (sums.len() as f64).sqrt() > tolerance::COMPLETENESS {
        return Err(Error::GridTooCoarse(format!(
            "discretized completeness differs across eigenvalues of Q by {worst:.3e}; widen or refine the alpha grid \
             (outcome std ~ {:.3e})",
            0.5 / kdt.sqrt()
        )));
    }
    let scale = (c_squared * step).sqrt();
    let ops = alpha_grid
        .iter()
        .map(|&a| spectrum.reconstruct_with(|qi| real(scale * (-kdt * (qi - a).powi(2)).exp())))
        .collect();
    MeasurementOperatorSet::new(ops)
}

/// Default outcome grid: 2048 points centred on `center`, half-width
/// `6 / sqrt(2 k dt)` plus the spectral radius of `Q`.
pub fn default_alpha_grid(q: &HermitianObservable, k: f64, dt: f64, center: f64) -> Vec<f64> {
    const POINTS: usize = 2048;
    let spectrum = crate::state::eig_hermitian(q);
    let radius = spectrum.values.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let half_width = 6.0 / (2.0 * k * dt).sqrt() + radius;
    let step = 2.0 * half_width / (POINTS - 1) as f64;
    (0..POINTS).map(|i| center - half_width + step * i as f64).collect()
}

/// Photon-counting pair `Omega_0 = I - k Q^2 dt / 2`, `Omega_1 = Q sqrt(k dt)`.
/// Complete only to first order in `k dt`; the set is validated against a
/// tolerance of `(k dt ||Q||^2)^2 / 2` plus the default.
pub fn poisson_povm(q: &HermitianObservable, k: f64, dt: f64) -> Result<MeasurementOperatorSet> {
    if !(k > 0.0 && dt > 0.0 && (k * dt).is_finite()) {
        return Err(Error::InvalidParameter(format!("need k > 0 and dt > 0, got k={k}, dt={dt}")));
    }
    let n = q.dim();
    let q2 = q.matrix() * q.matrix();
    let kdt = k * dt;
    let omega0 = linalg::identity(n) - &q2 * real(0.5 * kdt);
    let omega1 = q.matrix() * real(kdt.sqrt());
    let min = hermitian_spectrum(&omega0).min();
    if min < -tolerance::PSD {
        return Err(Error::InvalidParameter(format!(
            "k dt = {kdt} too large: Omega_0 has eigenvalue {min:.3e}"
        )));
    }
    let spectral_radius_sq = hermitian_spectrum(&q2).max();
    let tol = 0.5 * (kdt * spectral_radius_sq).powi(2) * (n as f64).sqrt() + tolerance::COMPLETENESS;
    MeasurementOperatorSet::with_tolerance(vec![omega0, omega1], tol)
}

/// Two-outcome qubit measurement of strength `kappa`, rotated on the Bloch sphere by `(theta, phi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaMeasurement {
    pub kappa: f64,
    pub theta: f64,
    pub phi: f64,
}

impl KappaMeasurement {
    pub fn new(kappa: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&kappa) {
            return Err(Error::InvalidParameter(format!("kappa must lie in [0, 1], got {kappa}")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!("theta must lie in [0, pi], got {theta}")));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter(format!("phi must be finite, got {phi}")));
        }
        Ok(Self { kappa, theta, phi: phi.rem_euclid(std::f64::consts::TAU) })
    }

    /// The continuous-limit strength `kappa = 1/2 + sqrt(k dt)`.
    pub fn from_rate(k: f64, dt: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(0.5 + (k * dt).sqrt(), theta, phi)
    }
}

/// `{U Omega_0 U^dagger, U Omega_1 U^dagger}` with
/// `Omega_0 = sqrt(kappa)|0><0| + sqrt(1-kappa)|1><1|`,
/// `Omega_1 = sqrt(1-kappa)|0><0| + sqrt(kappa)|1><1|` and `U = U(theta, phi)`.
pub fn kappa_povm(m: &KappaMeasurement) -> Result<MeasurementOperatorSet> {
    let m = KappaMeasurement::new(m.kappa, m.theta, m.phi)?;
    let (a, b) = (m.kappa.sqrt(), (1.0 - m.kappa).sqrt());
    let u = UnitaryOperator::bloch_rotation(m.theta, m.phi);
    let ops = vec![
        hermitian_part(&u.conjugate(&linalg::diagonal(&[a, b]))),
        hermitian_part(&u.conjugate(&linalg::diagonal(&[b, a]))),
    ];
    MeasurementOperatorSet::new(ops)
}

/// Condition on outcome `n`: `rho_n = Omega_n rho Omega_n^dagger / P(n)`.
pub fn apply_outcome(set: &MeasurementOperatorSet, rho: &DensityMatrix, n: usize) -> Result<MeasurementOutcome> {
    set.check_dim(rho)?;
    let op = set.ops.get(n).ok_or(Error::OutcomeOutOfRange { index: n, len: set.len() })?;
    let post = unnormalized_post(op, rho);
    let probability = post.trace().re;
    if !(probability > tolerance::PROBABILITY) {
        return Err(Error::ZeroProbability { index: n, probability });
    }
    Ok(MeasurementOutcome {
        index: n,
        probability,
        post_state: DensityMatrix::from_trusted(hermitian_part(&post) / real(probability)),
    })
}

/// Draw an outcome with probability `Tr[Omega_n rho Omega_n^dagger]`.
/// Consumes exactly one uniform variate from `stream`.
pub fn sample_outcome(
    set: &MeasurementOperatorSet,
    rho: &DensityMatrix,
    stream: &mut RandomStream,
) -> Result<MeasurementOutcome> {
    let probs = set.probabilities(rho)?;
    let total: f64 = probs.iter().filter(|&&p| p > tolerance::PROBABILITY).sum();
    let u = stream.uniform() * total;
    let mut acc = 0.0;
    let mut chosen = None;
    for (i, &p) in probs.iter().enumerate() {
        if p <= tolerance::PROBABILITY {
            continue;
        }
        chosen = Some(i);
        acc += p;
        if u < acc {
            break;
        }
    }
    let index = chosen.ok_or(Error::ZeroProbability { index: 0, probability: total })?;
    apply_outcome(set, rho, index)
}

/// Record-averaged state `sum_n Omega_n rho Omega_n^dagger`.
pub fn nonselective_apply(set: &MeasurementOperatorSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    set.check_dim(rho)?;
    let mut acc = linalg::zeros(set.dim());
    for op in &set.ops {
        acc += unnormalized_post(op, rho);
    }
    let tr = acc.trace().re;
    Ok(DensityMatrix::from_trusted(hermitian_part(&acc) / real(tr)))
}

/// Polar decomposition `Omega = U sqrt(Omega^dagger Omega)`.
pub fn polar_split(omega: &ComplexMatrix) -> Result<(UnitaryOperator, ComplexMatrix)> {
    ensure_square(omega)?;
    if !is_finite(omega) {
        return Err(Error::NonFinite);
    }
    let (u, p) = linalg::polar_decomposition(omega);
    Ok((UnitaryOperator::from_unitary_unchecked(u), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::state::purity;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn diag_state(p: f64) -> DensityMatrix {
        DensityMatrix::diagonal(&[p, 1.0 - p]).unwrap()
    }

    #[test]
    fn gaussian_completeness_on_symmetric_grid() {
        let grid: Vec<f64> = (0..=320).map(|i| -8.0 + 0.05 * i as f64).collect();
        let set = gaussian_weak_povm(&HermitianObservable::pauli_z(), 1.0, 0.01, &grid).unwrap();
        assert!(set.completeness_residual() < 1e-8);
        assert_eq!(set.kind(), MeasurementKind::Pure);
    }

    #[test]
    fn gaussian_rejects_lopsided_grid() {
        let grid: Vec<f64> = (0..=160).map(|i| 0.05 * i as f64).collect();
        let err = gaussian_weak_povm(&HermitianObservable::pauli_z(), 1.0, 0.01, &grid).unwrap_err();
        assert!(matches!(err, Error::GridTooCoarse(_)));
    }

    #[test]
    fn gaussian_zero_strength_limit_is_trivial() {
        let q = HermitianObservable::pauli_z();
        let (k, dt) = (1.0, 1e-12);
        let grid = default_alpha_grid(&q, k, dt, 0.0);
        let set = gaussian_weak_povm(&q, k, dt, &grid).unwrap();
        let rho = DensityMatrix::from_bloch([0.3, -0.2, 0.5]).unwrap();
        // Within a few sigma of the center the operators are proportional to the
        // identity up to 4 k dt |alpha| ~ sqrt(k dt).
        for n in [700, 1024, 1500] {
            let op = &set.ops()[n];
            assert!((op[(0, 0)] - op[(1, 1)]).norm() < 1e-4 * op[(0, 0)].norm());
            let out = apply_outcome(&set, &rho, n).unwrap();
            assert!(frobenius(&(out.post_state.matrix() - rho.matrix())) < 1e-4);
        }
    }

    #[test]
    fn gaussian_commuting_average_is_identity_map() {
        let q = HermitianObservable::pauli_z();
        let grid = default_alpha_grid(&q, 1.0, 0.01, 0.0);
        let set = gaussian_weak_povm(&q, 1.0, 0.01, &grid).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        let avg = nonselective_apply(&set, &rho).unwrap();
        assert!(frobenius(&(avg.matrix() - rho.matrix())) < 1e-10);
    }

    #[test]
    fn poisson_examples() {
        let q = HermitianObservable::diagonal(&[1.0, 0.0]);
        let set = poisson_povm(&q, 1.0, 1e-3).unwrap();
        let dark = DensityMatrix::diagonal(&[0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(set.probabilities(&dark).unwrap()[1], 0.0);

        let set = poisson_povm(&HermitianObservable::pauli_z(), 1.0, 1e-4).unwrap();
        let p = set.probabilities(&DensityMatrix::maximally_mixed(2)).unwrap();
        assert_abs_diff_eq!(p[1], 1e-4, epsilon = 1e-8);
        // Residual is exactly (k dt)^2 Q^4 / 4 per diagonal entry.
        let expected = (1e-4f64).powi(2) / 4.0 * 2f64.sqrt();
        assert_abs_diff_eq!(set.completeness_residual(), expected, epsilon = 1e-15);
        assert!(set.completeness_residual() < 1e-7);

        assert!(poisson_povm(&HermitianObservable::pauli_z(), 10.0, 1.0).is_err());
    }

    #[test]
    fn kappa_half_is_uninformative() {
        let set = kappa_povm(&KappaMeasurement::new(0.5, 1.0, 2.0).unwrap()).unwrap();
        for op in set.ops() {
            assert!(frobenius(&(op - linalg::identity(2) * real(FRAC_1_SQRT_2))) < 1e-14);
        }
        let rho = DensityMatrix::from_bloch([0.1, 0.4, -0.3]).unwrap();
        for n in 0..2 {
            let out = apply_outcome(&set, &rho, n).unwrap();
            assert!(frobenius(&(out.post_state.matrix() - rho.matrix())) < 1e-14);
        }
    }

    #[test]
    fn kappa_one_is_projective() {
        let set = kappa_povm(&KappaMeasurement::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(set.kind(), MeasurementKind::Projective);
        assert!(frobenius(&(&set.ops()[0] - linalg::diagonal(&[1.0, 0.0]))) < 1e-15);
        assert!(frobenius(&(&set.ops()[1] - linalg::diagonal(&[0.0, 1.0]))) < 1e-15);
    }

    #[test]
    fn kappa_three_quarters_outcome_zero() {
        let set = kappa_povm(&KappaMeasurement::new(0.75, 0.0, 0.0).unwrap()).unwrap();
        let out = apply_outcome(&set, &diag_state(0.1), 0).unwrap();
        assert_abs_diff_eq!(out.probability, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(out.post_state.matrix()[(0, 0)].re, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(out.post_state.matrix()[(1, 1)].re, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(purity(&out.post_state), 0.625, epsilon = 1e-15);
    }

    #[test]
    fn kappa_completeness_is_exact() {
        for &(kappa, theta, phi) in &[(0.1, 0.3, 0.0), (0.9, 2.9, 5.0), (0.62, FRAC_PI_2, 1.0)] {
            let set = kappa_povm(&KappaMeasurement::new(kappa, theta, phi).unwrap()).unwrap();
            let sum = &set.ops()[0] * &set.ops()[0] + &set.ops()[1] * &set.ops()[1];
            assert!(frobenius(&(sum - linalg::identity(2))) < 1e-12);
        }
        assert!(KappaMeasurement::new(1.2, 0.0, 0.0).is_err());
        assert!(KappaMeasurement::new(0.5, -0.1, 0.0).is_err());
    }

    #[test]
    fn apply_outcome_examples() {
        let set = MeasurementOperatorSet::computational_basis(2);
        let out = apply_outcome(&set, &diag_state(0.1), 1).unwrap();
        assert_abs_diff_eq!(out.probability, 0.9, epsilon = 1e-15);
        assert!(frobenius(&(out.post_state.matrix() - linalg::diagonal(&[0.0, 1.0]))) < 1e-15);

        let rho = DensityMatrix::from_bloch([0.2, 0.1, 0.3]).unwrap();
        let out = apply_outcome(&MeasurementOperatorSet::identity(2), &rho, 0).unwrap();
        assert_abs_diff_eq!(out.probability, 1.0, epsilon = 1e-15);
        assert!(frobenius(&(out.post_state.matrix() - rho.matrix())) < 1e-15);

        let pure0 = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        assert!(matches!(apply_outcome(&set, &pure0, 1), Err(Error::ZeroProbability { .. })));
        assert!(matches!(apply_outcome(&set, &pure0, 2), Err(Error::OutcomeOutOfRange { .. })));
    }

    #[test]
    fn sampling_deterministic_distribution() {
        let set = kappa_povm(&KappaMeasurement::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        let rho = DensityMatrix::diagonal(&[1.0, 0.0]).unwrap();
        let mut s = RandomStream::from_seed(3);
        for _ in 0..1000 {
            assert_eq!(sample_outcome(&set, &rho, &mut s).unwrap().index, 0);
        }
    }

    #[test]
    fn sampling_frequencies_match() {
        let set = kappa_povm(&KappaMeasurement::new(0.8, 1.0, 0.4).unwrap()).unwrap();
        let rho = DensityMatrix::from_bloch([0.3, 0.0, 0.5]).unwrap();
        let p0 = set.probabilities(&rho).unwrap()[0];
        let mut s = RandomStream::from_seed(99);
        let draws = 100_000;
        let hits = (0..draws).filter(|_| sample_outcome(&set, &rho, &mut s).unwrap().index == 0).count();
        let sigma = (p0 * (1.0 - p0) / draws as f64).sqrt();
        assert!((hits as f64 / draws as f64 - p0).abs() < 4.0 * sigma);
    }

    #[test]
    fn sampling_is_reproducible() {
        let set = kappa_povm(&KappaMeasurement::new(0.7, 0.5, 0.0).unwrap()).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        let run = |seed| {
            let mut s = RandomStream::from_seed(seed);
            (0..200).map(|_| sample_outcome(&set, &rho, &mut s).unwrap().index).collect::<Vec<_>>()
        };
        assert_eq!(run(5), run(5));
    }

    #[test]
    fn nonselective_examples() {
        // Commuting pure measurement leaves the state alone.
        let set = kappa_povm(&KappaMeasurement::new(0.75, 0.0, 0.0).unwrap()).unwrap();
        let rho = diag_state(0.1);
        let avg = nonselective_apply(&set, &rho).unwrap();
        assert!(frobenius(&(avg.matrix() - rho.matrix())) < 1e-15);

        let set = kappa_povm(&KappaMeasurement::new(0.75, FRAC_PI_2, 0.0).unwrap()).unwrap();
        let avg = nonselective_apply(&set, &rho).unwrap();
        assert_abs_diff_eq!(purity(&avg), 0.74, epsilon = 1e-14);

        let mm = DensityMatrix::maximally_mixed(2);
        let avg = nonselective_apply(&set, &mm).unwrap();
        assert!(frobenius(&(avg.matrix() - mm.matrix())) < 1e-15);
    }

    #[test]
    fn polar_examples() {
        let p = ComplexMatrix::from_row_slice(2, 2, &[real(0.6), c(0.1, 0.2), c(0.1, -0.2), real(0.5)]);
        let (u, pos) = polar_split(&p).unwrap();
        assert!(frobenius(&(u.matrix() - linalg::identity(2))) < 1e-12);
        assert!(frobenius(&(pos - &p)) < 1e-12);

        let unitary = crate::state::expm_skew(&HermitianObservable::pauli_y(), 0.7).unwrap();
        let (u, pos) = polar_split(unitary.matrix()).unwrap();
        assert!(frobenius(&(pos - linalg::identity(2))) < 1e-12);
        assert!(frobenius(&(u.matrix() - unitary.matrix())) < 1e-12);
    }

    #[test]
    fn projective_classification() {
        let set = MeasurementOperatorSet::new(vec![linalg::diagonal(&[1.0, 0.0]), linalg::diagonal(&[0.0, 1.0])]).unwrap();
        assert_eq!(set.kind(), MeasurementKind::Projective);
        let u = crate::state::expm_skew(&HermitianObservable::pauli_x(), 0.3).unwrap();
        let general = MeasurementOperatorSet::new(vec![u.matrix().clone()]).unwrap();
        assert_eq!(general.kind(), MeasurementKind::General);
        assert!(MeasurementOperatorSet::new(vec![linalg::diagonal(&[1.0, 0.5])]).is_err());
    }
}
