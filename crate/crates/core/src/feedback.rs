//! Optimal feedback controls for steering a state toward a pure target.
//!
//! Three constructions: the finite unitary that pairs the eigenvectors of the
//! state with those of the target, and the greedy infinitesimal Hamiltonian
//! under the constraint `Tr[H^2] <= mu`, which has a first-order branch
//! (generic case), a second-order branch (target commutes with the state but
//! is not its top eigenvector) and a no-op branch.

use crate::error::{Error, Result};
use crate::linalg::{self, frobenius, hermitian_spectrum, outer, real, ComplexMatrix, ComplexVector, I};
use crate::state::{DensityMatrix, HermitianObservable, PureState, UnitaryOperator};

/// Bound on the feedback Hamiltonian, `sum_n lambda_n(H)^2 <= mu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeedbackStrength(f64);

impl FeedbackStrength {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidParameter(format!("feedback strength must be positive, got {mu}")));
        }
        Ok(Self(mu))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FeedbackBranch {
    FirstOrder,
    SecondOrder,
    NoOp,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeedbackDiagnostics {
    /// `<psi|rho^2|psi>`
    pub a: f64,
    /// `<psi|rho|psi>`
    pub b: f64,
    /// `||[|psi><psi|, rho]||_F`
    pub commutator_norm: f64,
}

#[derive(Clone, Debug)]
pub struct FeedbackDecision {
    pub branch: FeedbackBranch,
    pub hamiltonian: HermitianObservable,
    pub diagnostics: FeedbackDiagnostics,
}

/// `U = sum_j |sigma_j><rho_j|`, both eigenbases in descending eigenvalue order.
pub fn optimal_unitary(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<UnitaryOperator> {
    check_dim(rho.dim(), sigma.dim())?;
    let from = rho.spectrum();
    let to = sigma.spectrum();
    Ok(UnitaryOperator::from_unitary_unchecked(&to.vectors * from.vectors.adjoint()))
}

/// Default degeneracy threshold `1e-8 ||rho||_F`.
pub fn default_degeneracy_threshold(rho: &DensityMatrix) -> f64 {
    1e-8 * frobenius(rho.matrix())
}

/// Greedy optimal feedback Hamiltonian saturating `Tr[H^2] = mu`.
///
/// * `||[sigma, rho]||_F > tau`: `H = i chi [sigma, rho]` with `chi` fixed by the constraint;
/// * otherwise, if the target is not the top eigenvector of `rho`:
///   `H = sqrt(mu/2) (|1><psi| + |psi><1|)` with `|1>` the top eigenvector orthogonalized against the target;
/// * otherwise `H = 0`.
///
/// `tau` defaults to [`default_degeneracy_threshold`].
pub fn optimal_feedback(
    rho: &DensityMatrix,
    target: &PureState,
    mu: FeedbackStrength,
    tau: Option<f64>,
) -> Result<FeedbackDecision> {
    check_dim(rho.dim(), target.dim())?;
    let tau = tau.unwrap_or_else(|| default_degeneracy_threshold(rho));
    let mut psi = target.vector().clone();
    // The construction depends only on the ray of the target.
    linalg::fix_phase(&mut psi);

    let v = rho.matrix() * &psi;
    let a = v.norm_squared();
    let b = psi.dotc(&v).re;
    // [sigma, rho] = |psi><v| - |v><psi|
    let comm = outer(&psi, &v) - outer(&v, &psi);
    let commutator_norm = frobenius(&comm);
    let diagnostics = FeedbackDiagnostics { a, b, commutator_norm };

    if commutator_norm > tau {
        let generator = &comm * I;
        let chi = (mu.value() / (commutator_norm * commutator_norm)).sqrt();
        let h = linalg::hermitian_part(&(generator * real(chi)));
        return Ok(FeedbackDecision {
            branch: FeedbackBranch::FirstOrder,
            hamiltonian: HermitianObservable::from_hermitian_unchecked(h),
            diagnostics,
        });
    }

    let spectrum = rho.spectrum();
    if b >= spectrum.max() - tau {
        return Ok(FeedbackDecision {
            branch: FeedbackBranch::NoOp,
            hamiltonian: HermitianObservable::zero(rho.dim()),
            diagnostics,
        });
    }

    let top = spectrum.vector(0);
    let mut partner: ComplexVector = &top - &psi * psi.dotc(&top);
    let norm = partner.norm();
    if norm < 1e-12 {
        // Top eigenvector coincides with the target to working precision.
        return Ok(FeedbackDecision {
            branch: FeedbackBranch::NoOp,
            hamiltonian: HermitianObservable::zero(rho.dim()),
            diagnostics,
        });
    }
    partner /= real(norm);
    let h = (outer(&partner, &psi) + outer(&psi, &partner)) * real((0.5 * mu.value()).sqrt());
    Ok(FeedbackDecision {
        branch: FeedbackBranch::SecondOrder,
        hamiltonian: HermitianObservable::from_hermitian_unchecked(linalg::hermitian_part(&h)),
        diagnostics,
    })
}

/// First-order fidelity gain `-i <psi|[H, rho]|psi>`.
pub fn first_order_gain(h: &HermitianObservable, rho: &DensityMatrix, target: &PureState) -> Result<f64> {
    check_dim(rho.dim(), h.dim())?;
    check_dim(rho.dim(), target.dim())?;
    let psi = target.vector();
    let comm = linalg::commutator(h.matrix(), rho.matrix());
    Ok((psi.dotc(&(comm * psi)) * (-I)).re)
}

/// Second-order fidelity gain `<psi|H (rho - lambda_T) H|psi>` for a target that is an
/// eigenvector of `rho` (within `tau`, default [`default_degeneracy_threshold`]),
/// evaluated as `sum_n (lambda_n - lambda_T) |<n|H|psi>|^2` in the eigenbasis of `rho`.
pub fn second_order_gain(
    h: &HermitianObservable,
    rho: &DensityMatrix,
    target: &PureState,
    tau: Option<f64>,
) -> Result<f64> {
    check_dim(rho.dim(), h.dim())?;
    check_dim(rho.dim(), target.dim())?;
    let tau = tau.unwrap_or_else(|| default_degeneracy_threshold(rho));
    let psi = target.vector();
    let v = rho.matrix() * psi;
    let lambda_t = psi.dotc(&v).re;
    let residual = (&v - psi * real(lambda_t)).norm();
    if residual > tau.max(1e-12) {
        return Err(Error::NotEigenvector(residual));
    }
    let spectrum = hermitian_spectrum(rho.matrix());
    let h_psi = h.matrix() * psi;
    let amplitudes = spectrum.vectors.adjoint() * h_psi;
    Ok(spectrum
        .values
        .iter()
        .zip(amplitudes.iter())
        .map(|(&lambda, amp)| (lambda - lambda_t) * amp.norm_sqr())
        .sum())
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `Tr[H^2]` of a decision, for constraint checks.
pub fn hamiltonian_power(h: &ComplexMatrix) -> f64 {
    h.iter().map(|z| z.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::overlap;
    use approx::assert_abs_diff_eq;

    fn mu(x: f64) -> FeedbackStrength {
        FeedbackStrength::new(x).unwrap()
    }

    #[test]
    fn first_order_plus_to_zero() {
        let rho = DensityMatrix::from_pure(&PureState::plus_x());
        let target = PureState::basis(2, 0);
        let d = optimal_feedback(&rho, &target, mu(1.0), None).unwrap();
        assert_eq!(d.branch, FeedbackBranch::FirstOrder);
        assert_abs_diff_eq!(d.diagnostics.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.diagnostics.b, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.diagnostics.a - d.diagnostics.b.powi(2), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(d.hamiltonian.squared_norm(), 1.0, epsilon = 1e-12);
        // Symbolic oracle: i[|0><0|, |+><+|] = -sigma_y / 2, scaled to Tr[H^2] = 1.
        let expected = linalg::pauli_y() * real(-std::f64::consts::FRAC_1_SQRT_2);
        assert!(frobenius(&(d.hamiltonian.matrix() - expected)) < 1e-12);
        let gain = first_order_gain(&d.hamiltonian, &rho, &target).unwrap();
        assert_abs_diff_eq!(gain, (2.0 * 1.0 * 0.25f64).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn second_order_commuting_state() {
        let rho = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        let target = PureState::basis(2, 0);
        let d = optimal_feedback(&rho, &target, mu(2.0), None).unwrap();
        assert_eq!(d.branch, FeedbackBranch::SecondOrder);
        assert!(frobenius(&(d.hamiltonian.matrix() - linalg::pauli_x())) < 1e-14);
        assert_abs_diff_eq!(d.hamiltonian.squared_norm(), 2.0, epsilon = 1e-12);
        let gain = second_order_gain(&d.hamiltonian, &rho, &target, None).unwrap();
        assert_abs_diff_eq!(gain, (0.7 - 0.3) * 2.0 / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn noop_when_target_is_top() {
        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        let d = optimal_feedback(&rho, &PureState::basis(2, 0), mu(1.0), None).unwrap();
        assert_eq!(d.branch, FeedbackBranch::NoOp);
        assert_eq!(d.hamiltonian.squared_norm(), 0.0);
    }

    #[test]
    fn gains_vanish_for_trivial_inputs() {
        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        let target = PureState::basis(2, 1);
        let commuting = HermitianObservable::pauli_z();
        assert_abs_diff_eq!(first_order_gain(&commuting, &rho, &target).unwrap(), 0.0);
        assert_abs_diff_eq!(second_order_gain(&HermitianObservable::zero(2), &rho, &target, None).unwrap(), 0.0);
        let off = DensityMatrix::from_pure(&PureState::plus_x());
        assert!(matches!(
            second_order_gain(&commuting, &off, &target, None),
            Err(Error::NotEigenvector(_))
        ));
    }

    #[test]
    fn top_target_never_gains_at_second_order() {
        let rho = DensityMatrix::diagonal(&[0.6, 0.3, 0.1]).unwrap();
        let target = PureState::basis(3, 0);
        for h in [linalg::pauli_x(), linalg::pauli_y()] {
            let mut big = linalg::zeros(3);
            big.view_mut((0, 0), (2, 2)).copy_from(&h);
            let h = HermitianObservable::new(big).unwrap();
            assert!(second_order_gain(&h, &rho, &target, None).unwrap() <= 1e-15);
        }
    }

    #[test]
    fn optimal_unitary_examples() {
        let a = PureState::bloch(0.4, 1.0);
        let b = PureState::bloch(2.0, -0.5);
        let u = optimal_unitary(&DensityMatrix::from_pure(&a), &DensityMatrix::from_pure(&b)).unwrap();
        let after = u.apply_to(&DensityMatrix::from_pure(&a));
        assert_abs_diff_eq!(overlap(&after, &b).unwrap(), 1.0, epsilon = 1e-12);

        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        let e2 = PureState::basis(2, 1);
        let u = optimal_unitary(&rho, &DensityMatrix::from_pure(&e2)).unwrap();
        assert_abs_diff_eq!(overlap(&u.apply_to(&rho), &e2).unwrap(), 0.7, epsilon = 1e-12);

        let rho = DensityMatrix::from_bloch([0.2, -0.3, 0.4]).unwrap();
        let u = optimal_unitary(&rho, &rho).unwrap();
        assert!(frobenius(&(u.apply_to(&rho).matrix() - rho.matrix())) < 1e-12);
    }

    #[test]
    fn rejects_mismatched_dims() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(optimal_feedback(&rho, &PureState::basis(3, 0), mu(1.0), None).is_err());
        assert!(FeedbackStrength::new(0.0).is_err());
    }
}
