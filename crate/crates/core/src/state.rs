//! Quantum-state value types and state functionals.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, ensure_square, hermitian_part, hermitian_spectrum, hermiticity_defect, is_finite, max_abs, real,
    tolerance, ComplexMatrix, ComplexVector, Spectrum,
};

/// A Hermitian operator: an observable or a Hamiltonian (with hbar = 1).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianObservable(ComplexMatrix);

impl HermitianObservable {
    /// Validates Hermiticity to [`tolerance::HERMITIAN`] and stores the exact Hermitian part.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        ensure_square(&mat)?;
        if !is_finite(&mat) {
            return Err(Error::NonFinite);
        }
        let defect = hermiticity_defect(&mat);
        if defect > tolerance::HERMITIAN {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self(hermitian_part(&mat)))
    }

    /// Wraps a matrix known to be exactly Hermitian by construction.
    pub(crate) fn from_hermitian_unchecked(mat: ComplexMatrix) -> Self {
        Self(mat)
    }

    pub fn zero(n: usize) -> Self {
        Self(linalg::zeros(n))
    }

    pub fn pauli_x() -> Self {
        Self(linalg::pauli_x())
    }

    pub fn pauli_y() -> Self {
        Self(linalg::pauli_y())
    }

    pub fn pauli_z() -> Self {
        Self(linalg::pauli_z())
    }

    /// Spin component `n . sigma` along a (not necessarily unit) Bloch vector.
    pub fn spin_along(n: [f64; 3]) -> Self {
        let m = linalg::pauli_x() * real(n[0]) + linalg::pauli_y() * real(n[1]) + linalg::pauli_z() * real(n[2]);
        Self(m)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self(linalg::diagonal(values))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(&self.0 * real(factor))
    }

    /// `Tr[A^2]`, the sum of squared eigenvalues.
    pub fn squared_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl std::ops::Add for &HermitianObservable {
    type Output = HermitianObservable;
    fn add(self, rhs: Self) -> HermitianObservable {
        HermitianObservable(&self.0 + &rhs.0)
    }
}

/// A unitary operator.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOperator(ComplexMatrix);

impl UnitaryOperator {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let n = ensure_square(&mat)?;
        if !is_finite(&mat) {
            return Err(Error::NonFinite);
        }
        let defect = max_abs(&(&mat * mat.adjoint() - linalg::identity(n)));
        if defect > tolerance::UNITARY {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self(mat))
    }

    pub(crate) fn from_unitary_unchecked(mat: ComplexMatrix) -> Self {
        Self(mat)
    }

    pub fn identity(n: usize) -> Self {
        Self(linalg::identity(n))
    }

    /// The qubit Bloch-sphere rotation taking `|0>` to
    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>` and `|1>` to
    /// `cos(theta/2)|1> - e^{-i phi} sin(theta/2)|0>`.
    pub fn bloch_rotation(theta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        Self(ComplexMatrix::from_row_slice(
            2,
            2,
            &[real(c), -e.conj() * s, e * s, real(c)],
        ))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `U A U^dagger`
    pub fn conjugate(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &self.0 * a * self.0.adjoint()
    }

    pub fn apply_to(&self, rho: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::from_trusted(hermitian_part(&self.conjugate(rho.matrix())))
    }
}

/// A normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState(ComplexVector);

impl PureState {
    pub fn new(vec: ComplexVector) -> Result<Self> {
        if !vec.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec.norm();
        if (norm - 1.0).abs() > tolerance::TRACE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self(vec))
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(vec: ComplexVector) -> Result<Self> {
        let norm = vec.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(vec / real(norm))
    }

    pub fn from_amplitudes(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(ComplexVector::from_column_slice(amplitudes))
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = ComplexVector::zeros(n);
        v[k] = real(1.0);
        Self(v)
    }

    /// Qubit state with Bloch vector along (theta, phi) in spherical angles.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        Self(ComplexVector::from_column_slice(&[real(c), Complex64::from_polar(s, phi)]))
    }

    /// Spin-up along +x: `(|0> + |1>)/sqrt 2`.
    pub fn plus_x() -> Self {
        Self::bloch(std::f64::consts::FRAC_PI_2, 0.0)
    }

    pub(crate) fn from_normalized_unchecked(vec: ComplexVector) -> Self {
        Self(vec)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.0
    }

    pub fn with_phase(&self, phase: f64) -> Self {
        Self(&self.0 * Complex64::from_polar(1.0, phase))
    }

    /// `|psi><psi|`
    pub fn projector(&self) -> ComplexMatrix {
        linalg::outer(&self.0, &self.0)
    }

    pub fn evolve(&self, u: &UnitaryOperator) -> Self {
        Self(u.matrix() * &self.0)
    }
}

/// A density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

/// Result of projecting an arbitrary matrix onto the physical state space.
#[derive(Clone, Debug)]
pub struct Projection {
    pub state: DensityMatrix,
    /// Smallest eigenvalue of the Hermitian part, before clipping and renormalization.
    pub min_eigenvalue: f64,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity to the crate tolerances.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        ensure_square(&mat)?;
        if mat.nrows() == 0 {
            return Err(Error::InvalidParameter("empty density matrix".into()));
        }
        if !is_finite(&mat) {
            return Err(Error::NonFinite);
        }
        let defect = hermiticity_defect(&mat);
        if defect > tolerance::HERMITIAN {
            return Err(Error::NotHermitian(defect));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > tolerance::TRACE || tr.im.abs() > tolerance::TRACE {
            return Err(Error::InvalidTrace(tr.re));
        }
        let h = hermitian_part(&mat);
        let min = hermitian_spectrum(&h).min();
        if min < -tolerance::PSD {
            return Err(Error::NotPositive(min));
        }
        Ok(Self(h))
    }

    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        Self(mat)
    }

    /// Hermitize, clip negative eigenvalues to zero, renormalize the trace.
    pub fn project(mat: &ComplexMatrix) -> Result<Projection> {
        ensure_square(mat)?;
        if !is_finite(mat) {
            return Err(Error::NonFinite);
        }
        let h = hermitian_part(mat);
        let spectrum = hermitian_spectrum(&h);
        let min_eigenvalue = spectrum.min();
        let state = if min_eigenvalue >= 0.0 {
            let tr = h.trace().re;
            if !(tr > 0.0) {
                return Err(Error::InvalidTrace(tr));
            }
            Self(h / real(tr))
        } else {
            let total: f64 = spectrum.values.iter().map(|&x| x.max(0.0)).sum();
            if !(total > 0.0) {
                return Err(Error::InvalidTrace(total));
            }
            Self(hermitian_part(&spectrum.reconstruct_with(|x| real(x.max(0.0) / total))))
        };
        Ok(Projection { state, min_eigenvalue })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self(psi.projector())
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self(linalg::identity(n) / real(n as f64))
    }

    /// Diagonal state from a probability vector.
    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        Self::new(linalg::diagonal(probabilities))
    }

    /// Qubit state `(I + r . sigma) / 2`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let m = (linalg::identity(2) + HermitianObservable::spin_along(r).into_matrix()) * real(0.5);
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn spectrum(&self) -> Spectrum {
        hermitian_spectrum(&self.0)
    }

    /// Bloch vector of a qubit state.
    pub fn bloch_vector(&self) -> [f64; 3] {
        debug_assert_eq!(self.dim(), 2);
        let off = self.0[(0, 1)];
        [2.0 * off.re, -2.0 * off.im, self.0[(0, 0)].re - self.0[(1, 1)].re]
    }

    /// `<A> = Tr[A rho]`
    pub fn expectation(&self, a: &HermitianObservable) -> f64 {
        linalg::trace_product_re(a.matrix(), &self.0)
    }
}

/// Canonical Hermitian eigendecomposition (see [`Spectrum`]).
pub fn eig_hermitian(a: &HermitianObservable) -> Spectrum {
    hermitian_spectrum(a.matrix())
}

/// `exp(-i H t)`
pub fn expm_skew(h: &HermitianObservable, t: f64) -> Result<UnitaryOperator> {
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite time {t}")));
    }
    let spectrum = eig_hermitian(h);
    Ok(UnitaryOperator(spectrum.reconstruct_with(|lambda| Complex64::from_polar(1.0, -lambda * t))))
}

/// `Tr[rho^2]`
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.0.iter().map(|z| z.norm_sqr()).sum()
}

/// `-Tr[rho ln rho]` in nats, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of(&rho.spectrum().values)
}

pub(crate) fn entropy_of(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum::<f64>()
        .max(0.0)
}

/// `<psi|rho|psi>`
pub fn overlap(rho: &DensityMatrix, psi: &PureState) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: psi.dim(),
        });
    }
    Ok(overlap_unchecked(rho.matrix(), psi.vector()))
}

pub(crate) fn overlap_unchecked(rho: &ComplexMatrix, psi: &ComplexVector) -> f64 {
    psi.dotc(&(rho * psi)).re
}

/// `(1/2) Tr|rho - sigma|`
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let diff = &rho.0 - &sigma.0;
    Ok(0.5 * hermitian_spectrum(&diff).values.iter().map(|x| x.abs()).sum::<f64>())
}

/// True iff `lambda` majorizes `mu`: every partial sum of the descending-sorted
/// `lambda` dominates the corresponding partial sum of `mu`.
pub fn majorizes(lambda: &[f64], mu: &[f64]) -> Result<bool> {
    majorizes_with_slack(lambda, mu, 0.0)
}

/// [`majorizes`] with an absolute slack on every partial-sum comparison.
pub fn majorizes_with_slack(lambda: &[f64], mu: &[f64], slack: f64) -> Result<bool> {
    if lambda.len() != mu.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            found: mu.len(),
        });
    }
    for (name, v) in [("lambda", lambda), ("mu", mu)] {
        let total: f64 = v.iter().sum();
        if (total - 1.0).abs() > tolerance::TRACE {
            return Err(Error::InvalidParameter(format!("{name} sums to {total}, not 1")));
        }
    }
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (l, m) = (sorted(lambda), sorted(mu));
    let (mut sl, mut sm) = (0.0, 0.0);
    for (a, b) in l.iter().zip(m.iter()) {
        sl += a;
        sm += b;
        if sl < sm - slack {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, frobenius};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, LN_2, PI};

    #[test]
    fn eig_identity_is_standard_basis() {
        let s = eig_hermitian(&HermitianObservable::diagonal(&[1.0, 1.0]));
        assert_eq!(s.values, vec![1.0, 1.0]);
        assert!(frobenius(&(s.vectors - linalg::identity(2))) < 1e-15);
    }

    #[test]
    fn eig_diagonal_descending() {
        let s = eig_hermitian(&HermitianObservable::diagonal(&[0.1, 0.9]));
        assert_abs_diff_eq!(s.values[0], 0.9);
        assert_abs_diff_eq!(s.values[1], 0.1);
        assert_abs_diff_eq!(s.vector(0)[1].re, 1.0);
        assert_abs_diff_eq!(s.vector(1)[0].re, 1.0);
    }

    #[test]
    fn eig_pauli_x() {
        let s = eig_hermitian(&HermitianObservable::pauli_x());
        assert_abs_diff_eq!(s.values[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values[1], -1.0, epsilon = 1e-15);
        let (v0, v1) = (s.vector(0), s.vector(1));
        assert_abs_diff_eq!(v0[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(v0[1].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(v1[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(v1[1].re, -FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(0.0), real(0.0)]);
        assert!(matches!(HermitianObservable::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn expm_examples() {
        let zero = expm_skew(&HermitianObservable::zero(2), 3.7).unwrap();
        assert!(frobenius(&(zero.matrix() - linalg::identity(2))) < 1e-15);

        let z = expm_skew(&HermitianObservable::pauli_z(), PI).unwrap();
        assert!(frobenius(&(z.matrix() + linalg::identity(2))) < 1e-14);

        let x = expm_skew(&HermitianObservable::pauli_x(), FRAC_PI_2).unwrap();
        assert!(frobenius(&(x.matrix() - linalg::pauli_x() * c(0.0, -1.0))) < 1e-14);
    }

    #[test]
    fn purity_examples() {
        assert_abs_diff_eq!(purity(&DensityMatrix::from_pure(&PureState::plus_x())), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(purity(&DensityMatrix::maximally_mixed(3)), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(purity(&DensityMatrix::diagonal(&[0.1, 0.9]).unwrap()), 0.82, epsilon = 1e-15);
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(von_neumann_entropy(&DensityMatrix::from_pure(&PureState::plus_x())), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(von_neumann_entropy(&DensityMatrix::maximally_mixed(2)), LN_2, epsilon = 1e-15);
        let expected = -0.25 * 0.25f64.ln() - 0.75 * 0.75f64.ln();
        assert_abs_diff_eq!(von_neumann_entropy(&DensityMatrix::diagonal(&[0.25, 0.75]).unwrap()), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(expected, 0.5623, epsilon = 1e-4);
    }

    #[test]
    fn overlap_examples() {
        let psi = PureState::bloch(1.1, 0.3);
        assert_abs_diff_eq!(overlap(&DensityMatrix::from_pure(&psi), &psi).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(overlap(&DensityMatrix::maximally_mixed(2), &psi).unwrap(), 0.5, epsilon = 1e-15);
        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        assert_abs_diff_eq!(overlap(&rho, &PureState::basis(2, 0)).unwrap(), 0.7, epsilon = 1e-15);
        assert!(matches!(overlap(&rho, &PureState::basis(3, 0)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn trace_distance_examples() {
        let a = DensityMatrix::diagonal(&[0.1, 0.9]).unwrap();
        let b = DensityMatrix::diagonal(&[0.9, 0.1]).unwrap();
        assert_abs_diff_eq!(trace_distance(&a, &a).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(trace_distance(&a, &b).unwrap(), 0.8, epsilon = 1e-15);
        let up = DensityMatrix::from_pure(&PureState::plus_x());
        let down = DensityMatrix::from_pure(&PureState::bloch(FRAC_PI_2, PI));
        assert_abs_diff_eq!(trace_distance(&up, &down).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&[1.0, 0.0], &[0.5, 0.5]).unwrap());
        assert!(!majorizes(&[0.5, 0.5], &[1.0, 0.0]).unwrap());
        assert!(majorizes(&[0.6, 0.4], &[0.55, 0.45]).unwrap());
        assert!(majorizes(&[0.5, 0.5], &[0.2, 0.3, 0.5]).is_err());
    }

    #[test]
    fn density_rejects_bad_inputs() {
        assert!(matches!(DensityMatrix::diagonal(&[0.5, 0.6]), Err(Error::InvalidTrace(_))));
        assert!(matches!(DensityMatrix::diagonal(&[1.5, -0.5]), Err(Error::NotPositive(_))));
        let m = ComplexMatrix::from_row_slice(2, 2, &[real(0.5), c(0.1, 0.1), c(0.1, 0.1), real(0.5)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn projection_clips_and_renormalizes() {
        let m = linalg::diagonal(&[1.2, -0.2]);
        let p = DensityMatrix::project(&m).unwrap();
        assert_abs_diff_eq!(p.min_eigenvalue, -0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(purity(&p.state), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn bloch_rotation_maps_basis() {
        let u = UnitaryOperator::bloch_rotation(0.8, 1.3);
        let v = u.matrix() * PureState::basis(2, 0).vector();
        assert_abs_diff_eq!(v[0].re, (0.4f64).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!((v[1] - Complex64::from_polar((0.4f64).sin(), 1.3)).norm(), 0.0, epsilon = 1e-15);
        assert!(UnitaryOperator::new(u.matrix().clone()).is_ok());
    }
}
