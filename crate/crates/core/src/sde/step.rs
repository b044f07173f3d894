//! Single Euler–Maruyama steps of the diffusive stochastic master equation
//!
//! `d rho = -i[H, rho] dt - k [Q,[Q, rho]] dt + sqrt(2k) (Q rho + rho Q - 2 <Q> rho) dW`
//!
//! followed by projection back onto the state space.

use crate::error::{Error, Result};
use crate::linalg::{real, ComplexMatrix, I};
use crate::state::{DensityMatrix, HermitianObservable};

/// A step whose unprojected state has an eigenvalue below `-MAX_CLIPPED_EIGENVALUE`
/// is rejected instead of silently clipped.
pub const MAX_CLIPPED_EIGENVALUE: f64 = 0.05;

/// Unprojected increment of one Euler–Maruyama step, with optional
/// `sigma_z` dephasing at rate `beta` (qubits only).
#[allow(clippy::too_many_arguments)]
pub(crate) fn euler_maruyama(
    rho: &ComplexMatrix,
    q: &ComplexMatrix,
    k: f64,
    h: &ComplexMatrix,
    beta: f64,
    dt: f64,
    dw: f64,
) -> (ComplexMatrix, f64) {
    let mut next = rho.clone();
    let h_rho = h * rho;
    let unitary = &h_rho - h_rho.adjoint();
    next -= unitary * (I * dt);
    let mut mean_q = 0.0;
    if k != 0.0 {
        let q_rho = q * rho;
        mean_q = q_rho.trace().re;
        let rho_q = q_rho.adjoint();
        // [Q,[Q,rho]] = Q^2 rho + rho Q^2 - 2 Q rho Q
        let qq_rho = q * &q_rho;
        let dd = &qq_rho + qq_rho.adjoint() - q * &rho_q * real(2.0);
        next -= dd * real(k * dt);
        let innovation = &q_rho + &rho_q - rho * real(2.0 * mean_q);
        next += innovation * real((2.0 * k).sqrt() * dw);
    }
    if beta != 0.0 {
        // [sz,[sz,rho]] = 4 * offdiag(rho) for a qubit
        let f = 4.0 * beta * dt;
        next[(0, 1)] -= rho[(0, 1)] * f;
        next[(1, 0)] -= rho[(1, 0)] * f;
    }
    let dy = if k == 0.0 { 0.0 } else { 4.0 * k * mean_q * dt + (2.0 * k).sqrt() * dw };
    (next, dy)
}

/// Project an unprojected step result; `Err(min_eigenvalue)` if the step must be rejected.
pub(crate) fn project_step(mat: &ComplexMatrix) -> Result<std::result::Result<DensityMatrix, f64>> {
    let p = DensityMatrix::project(mat)?;
    if p.min_eigenvalue < -MAX_CLIPPED_EIGENVALUE {
        return Ok(Err(p.min_eigenvalue));
    }
    Ok(Ok(p.state))
}

fn check(rho: &DensityMatrix, q: &HermitianObservable, h: &HermitianObservable, k: f64, dt: f64) -> Result<()> {
    for found in [q.dim(), h.dim()] {
        if found != rho.dim() {
            return Err(Error::DimensionMismatch { expected: rho.dim(), found });
        }
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("measurement rate must be non-negative, got {k}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("time step must be positive, got {dt}")));
    }
    Ok(())
}

/// One measured step. Returns the projected state and the record increment
/// `dy = 4k <Q> dt + sqrt(2k) dW` (zero when `k = 0`).
pub fn sme_step(
    rho: &DensityMatrix,
    q: &HermitianObservable,
    k: f64,
    h: &HermitianObservable,
    dt: f64,
    dw: f64,
) -> Result<(DensityMatrix, f64)> {
    check(rho, q, h, k, dt)?;
    let (next, dy) = euler_maruyama(rho.matrix(), q.matrix(), k, h.matrix(), 0.0, dt, dw);
    match project_step(&next)? {
        Ok(state) => Ok((state, dy)),
        Err(min_eigenvalue) => Err(Error::StepRejected { time: f64::NAN, min_eigenvalue }),
    }
}

/// Record-averaged (Lindblad) step: the stochastic term is dropped.
pub fn nonselective_step(
    rho: &DensityMatrix,
    q: &HermitianObservable,
    k: f64,
    h: &HermitianObservable,
    dt: f64,
) -> Result<DensityMatrix> {
    check(rho, q, h, k, dt)?;
    let (next, _) = euler_maruyama(rho.matrix(), q.matrix(), k, h.matrix(), 0.0, dt, 0.0);
    match project_step(&next)? {
        Ok(state) => Ok(state),
        Err(min_eigenvalue) => Err(Error::StepRejected { time: f64::NAN, min_eigenvalue }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, frobenius};
    use crate::state::{purity, PureState};
    use approx::assert_abs_diff_eq;

    #[test]
    fn eigenstate_is_fixed_point() {
        let rho = DensityMatrix::from_pure(&PureState::basis(2, 0));
        let (next, dy) =
            sme_step(&rho, &HermitianObservable::pauli_z(), 1.0, &HermitianObservable::zero(2), 1e-3, 0.02).unwrap();
        assert!(frobenius(&(next.matrix() - rho.matrix())) < 1e-15);
        assert_abs_diff_eq!(dy, 4e-3 + 2f64.sqrt() * 0.02, epsilon = 1e-15);
    }

    #[test]
    fn deterministic_limit_is_unitary() {
        let rho = DensityMatrix::from_pure(&PureState::plus_x());
        let h = HermitianObservable::pauli_z();
        let (next, dy) = sme_step(&rho, &HermitianObservable::zero(2), 0.0, &h, 1e-3, 0.7).unwrap();
        assert_eq!(dy, 0.0);
        let expected = rho.matrix() - commutator(h.matrix(), rho.matrix()) * (I * 1e-3);
        // equal up to the O(dt^2) trace/positivity projection
        assert!(frobenius(&(next.matrix() - expected)) < 1e-5);
    }

    #[test]
    fn matches_explicit_double_commutator() {
        let rho = DensityMatrix::from_bloch([0.3, -0.2, 0.5]).unwrap();
        let q = HermitianObservable::spin_along([0.6, 0.0, 0.8]);
        let (next, _) = euler_maruyama(rho.matrix(), q.matrix(), 0.7, &crate::linalg::zeros(2), 0.0, 1e-3, 0.0);
        let dd = commutator(q.matrix(), &commutator(q.matrix(), rho.matrix()));
        let expected = rho.matrix() - dd * real(0.7e-3);
        assert!(frobenius(&(next - expected)) < 1e-15);
    }

    #[test]
    fn nonselective_step_dephases() {
        let rho = DensityMatrix::from_pure(&PureState::plus_x());
        let next =
            nonselective_step(&rho, &HermitianObservable::pauli_z(), 1.0, &HermitianObservable::zero(2), 1e-3).unwrap();
        assert!(purity(&next) < 1.0);
        assert_abs_diff_eq!(next.matrix()[(0, 0)].re, 0.5, epsilon = 1e-15);
    }
}
