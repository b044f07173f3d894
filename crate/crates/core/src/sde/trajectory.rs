//! Measured, feedback-controlled trajectories.

use log::warn;
use num_complex::Complex64;

use super::step::{euler_maruyama, project_step};
use crate::error::{Error, Result};
use crate::feedback::{optimal_feedback, FeedbackDecision, FeedbackStrength};
use crate::linalg::{hermitian_spectrum, ComplexMatrix, ComplexVector};
use crate::rng::{BrownianPath, RandomStream};
use crate::state::{overlap_unchecked, purity, DensityMatrix, HermitianObservable, PureState};

/// `dt * max(k, beta, ||H0||)` above this logs a warning.
pub const COARSE_STEP_WARNING: f64 = 0.05;

/// Integration parameters of the stochastic master equation.
#[derive(Clone, Debug)]
pub struct SmeConfig {
    /// Measurement rate `k`.
    pub k: f64,
    /// Free Hamiltonian `H0`.
    pub h0: HermitianObservable,
    /// `sigma_z` dephasing rate `beta` (qubits only).
    pub dephasing: f64,
    pub dt: f64,
    pub t_end: f64,
}

impl SmeConfig {
    pub fn new(k: f64, h0: HermitianObservable, dt: f64, t_end: f64) -> Self {
        Self { k, h0, dephasing: 0.0, dt, t_end }
    }

    pub fn with_dephasing(mut self, beta: f64) -> Self {
        self.dephasing = beta;
        self
    }

    /// Number of steps, `round(t_end / dt)`.
    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        let param = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.k >= 0.0 && self.k.is_finite()) {
            return param(format!("measurement rate must be non-negative, got {}", self.k));
        }
        if !(self.dephasing >= 0.0 && self.dephasing.is_finite()) {
            return param(format!("dephasing rate must be non-negative, got {}", self.dephasing));
        }
        if self.dephasing > 0.0 && dim != 2 {
            return param("sigma_z dephasing is defined for qubits only".into());
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return param(format!("time step must be positive, got {}", self.dt));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return param(format!("end time must be non-negative, got {}", self.t_end));
        }
        if self.h0.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: self.h0.dim() });
        }
        let h_norm = hermitian_spectrum(self.h0.matrix())
            .values
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        let scale = self.dt * self.k.max(self.dephasing).max(h_norm);
        if scale > COARSE_STEP_WARNING {
            warn!("coarse time step: dt * max(k, beta, ||H0||) = {scale:.3}");
        }
        Ok(())
    }
}

/// Which observable is measured at each step.
#[derive(Clone, Debug)]
pub enum MeasurementPolicy {
    Fixed(HermitianObservable),
    /// Qubit only: measure the Pauli operator along the Bloch direction at
    /// polar angle `theta` from the current Bloch vector `n` of the state.
    /// The azimuth `phi` is measured from the projection of `z` orthogonal
    /// to `n` (from `x` when `n` is along `z`), toward `n x e1`.
    RelativeAngle { theta: f64, phi: f64 },
}

impl MeasurementPolicy {
    pub fn relative_angle(theta: f64) -> Self {
        Self::RelativeAngle { theta, phi: 0.0 }
    }
}

/// The target pure state as a function of time.
#[derive(Clone, Debug)]
pub enum TargetTrajectory {
    Fixed(PureState),
    /// `psi(t) = exp(-i G t) psi(0)`.
    Precessing { initial: PureState, generator: HermitianObservable },
}

impl TargetTrajectory {
    pub fn dim(&self) -> usize {
        match self {
            Self::Fixed(p) => p.dim(),
            Self::Precessing { initial, .. } => initial.dim(),
        }
    }

    pub fn at(&self, t: f64) -> PureState {
        PureState::from_normalized_unchecked(TargetEvaluator::new(self).at(t))
    }
}

/// Precomputed spectral form of a target trajectory.
pub(crate) struct TargetEvaluator {
    vectors: ComplexMatrix,
    values: Vec<f64>,
    coefficients: ComplexVector,
    fixed: Option<ComplexVector>,
}

impl TargetEvaluator {
    pub(crate) fn new(target: &TargetTrajectory) -> Self {
        match target {
            TargetTrajectory::Fixed(p) => Self {
                vectors: ComplexMatrix::zeros(0, 0),
                values: Vec::new(),
                coefficients: ComplexVector::zeros(0),
                fixed: Some(p.vector().clone()),
            },
            TargetTrajectory::Precessing { initial, generator } => {
                let s = hermitian_spectrum(generator.matrix());
                let coefficients = s.vectors.adjoint() * initial.vector();
                Self { vectors: s.vectors, values: s.values, coefficients, fixed: None }
            }
        }
    }

    pub(crate) fn at(&self, t: f64) -> ComplexVector {
        if let Some(v) = &self.fixed {
            return v.clone();
        }
        let mut c = self.coefficients.clone();
        for (z, &l) in c.iter_mut().zip(&self.values) {
            *z *= Complex64::from_polar(1.0, -l * t);
        }
        &self.vectors * c
    }
}

/// Everything that defines one controlled trajectory apart from its noise.
#[derive(Clone, Debug)]
pub struct ControlProblem {
    pub sme: SmeConfig,
    pub policy: MeasurementPolicy,
    /// `None` disables feedback.
    pub feedback: Option<FeedbackStrength>,
    pub target: TargetTrajectory,
    pub initial: DensityMatrix,
}

impl ControlProblem {
    pub fn validate(&self) -> Result<()> {
        let dim = self.initial.dim();
        self.sme.validate(dim)?;
        if self.target.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: self.target.dim() });
        }
        if let TargetTrajectory::Precessing { generator, .. } = &self.target {
            if generator.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: generator.dim() });
            }
        }
        match &self.policy {
            MeasurementPolicy::Fixed(q) if q.dim() != dim => {
                Err(Error::DimensionMismatch { expected: dim, found: q.dim() })
            }
            MeasurementPolicy::RelativeAngle { theta, phi } => {
                if dim != 2 {
                    return Err(Error::InvalidParameter("relative-angle measurement needs a qubit".into()));
                }
                if !(theta.is_finite() && phi.is_finite()) {
                    return Err(Error::NonFinite);
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Picks the measured observable from the current state.
struct Selector {
    fixed: Option<ComplexMatrix>,
    theta: f64,
    phi: f64,
    axis: [f64; 3],
}

impl Selector {
    fn new(policy: &MeasurementPolicy) -> Self {
        match policy {
            MeasurementPolicy::Fixed(q) => {
                Self { fixed: Some(q.matrix().clone()), theta: 0.0, phi: 0.0, axis: [0.0, 0.0, 1.0] }
            }
            MeasurementPolicy::RelativeAngle { theta, phi } => {
                Self { fixed: None, theta: *theta, phi: *phi, axis: [0.0, 0.0, 1.0] }
            }
        }
    }

    fn observable(&mut self, rho: &DensityMatrix) -> ComplexMatrix {
        if let Some(q) = &self.fixed {
            return q.clone();
        }
        let r = rho.bloch_vector();
        let len = norm(r);
        // Keep the previous axis when the eigenbasis is degenerate.
        if len > 1e-12 {
            self.axis = r.map(|x| x / len);
        }
        HermitianObservable::spin_along(relative_direction(self.axis, self.theta, self.phi)).into_matrix()
    }
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Unit vector at polar angle `theta` and azimuth `phi` around the unit axis `n`.
pub fn relative_direction(n: [f64; 3], theta: f64, phi: f64) -> [f64; 3] {
    let reject = |u: [f64; 3]| {
        let d = u[0] * n[0] + u[1] * n[1] + u[2] * n[2];
        [u[0] - d * n[0], u[1] - d * n[1], u[2] - d * n[2]]
    };
    let mut e1 = reject([0.0, 0.0, 1.0]);
    if norm(e1) < 1e-9 {
        e1 = reject([1.0, 0.0, 0.0]);
    }
    let l = norm(e1);
    let e1 = e1.map(|x| x / l);
    let e2 = cross(n, e1);
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    std::array::from_fn(|i| ct * n[i] + st * (cp * e1[i] + sp * e2[i]))
}

/// What the integrator exposes after each step (and once for the initial state).
pub(crate) struct StepView<'a> {
    pub step: usize,
    pub time: f64,
    pub state: &'a DensityMatrix,
    pub target: &'a ComplexVector,
    /// Record increment of the step that produced `state` (0 for the initial state).
    pub dy: f64,
    /// Feedback applied during the step that produced `state`.
    pub feedback: Option<&'a FeedbackDecision>,
}

/// Integrate one trajectory, calling `observe` on the initial state and after every step.
/// `noise` must produce increments of length `problem.sme.dt`.
pub(crate) fn integrate<F>(problem: &ControlProblem, noise: &mut BrownianPath<'_>, mut observe: F) -> Result<()>
where
    F: FnMut(&StepView<'_>),
{
    let sme = &problem.sme;
    let steps = sme.steps();
    let dt = sme.dt;
    debug_assert!((noise.fine_dt() - dt).abs() <= 1e-12 * dt);
    let targets = TargetEvaluator::new(&problem.target);
    let mut selector = Selector::new(&problem.policy);
    let mut rho = problem.initial.clone();
    let mut target = targets.at(0.0);
    observe(&StepView { step: 0, time: 0.0, state: &rho, target: &target, dy: 0.0, feedback: None });
    for n in 0..steps {
        let t = n as f64 * dt;
        let q = selector.observable(&rho);
        let decision = match problem.feedback {
            Some(mu) => {
                let psi = PureState::from_normalized_unchecked(target.clone());
                Some(optimal_feedback(&rho, &psi, mu, None)?)
            }
            None => None,
        };
        let h_total = match &decision {
            Some(d) => sme.h0.matrix() + d.hamiltonian.matrix(),
            None => sme.h0.matrix().clone(),
        };
        let dw = noise.next_increment();
        let (next, dy) = euler_maruyama(rho.matrix(), &q, sme.k, &h_total, sme.dephasing, dt, dw);
        rho = match project_step(&next)? {
            Ok(state) => state,
            Err(min_eigenvalue) => return Err(Error::StepRejected { time: t, min_eigenvalue }),
        };
        let time = (n + 1) as f64 * dt;
        target = targets.at(time);
        observe(&StepView { step: n + 1, time, state: &rho, target: &target, dy, feedback: decision.as_ref() });
    }
    Ok(())
}

/// Sampled output of one trajectory.
#[derive(Clone, Debug)]
pub struct TrajectoryResult {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub purity: Vec<f64>,
    /// `<psi_T(t)|rho(t)|psi_T(t)>`
    pub overlap: Vec<f64>,
    /// Measurement record increments summed over each sampling interval (0 at `t = 0`).
    pub records: Vec<f64>,
    /// Feedback Hamiltonian of the last step of each sampling interval (zero at `t = 0`
    /// and when feedback is off).
    pub feedback: Vec<HermitianObservable>,
    pub seed: u64,
    pub stream: u64,
}

/// Run one trajectory, storing every `sample_stride`-th step (and the final one).
pub fn run_control_trajectory(
    problem: &ControlProblem,
    stream: &mut RandomStream,
    sample_stride: usize,
) -> Result<TrajectoryResult> {
    problem.validate()?;
    if sample_stride == 0 {
        return Err(Error::InvalidParameter("sample stride must be positive".into()));
    }
    let steps = problem.sme.steps();
    let dim = problem.initial.dim();
    let mut out = TrajectoryResult {
        times: Vec::new(),
        states: Vec::new(),
        purity: Vec::new(),
        overlap: Vec::new(),
        records: Vec::new(),
        feedback: Vec::new(),
        seed: stream.seed(),
        stream: stream.stream_id(),
    };
    let mut record = 0.0;
    let dt = problem.sme.dt;
    integrate(problem, &mut BrownianPath::new(stream, dt, 0), |v| {
        record += v.dy;
        if v.step % sample_stride == 0 || v.step == steps {
            out.times.push(v.time);
            out.purity.push(purity(v.state));
            out.overlap.push(overlap_unchecked(v.state.matrix(), v.target));
            out.states.push(v.state.clone());
            out.records.push(record);
            out.feedback.push(match v.feedback {
                Some(d) => d.hamiltonian.clone(),
                None => HermitianObservable::zero(dim),
            });
            record = 0.0;
        }
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn relative_direction_frame() {
        let n = [1.0, 0.0, 0.0];
        let v = relative_direction(n, 0.0, 0.3);
        assert_abs_diff_eq!(v[0], 1.0, epsilon = 1e-15);
        let v = relative_direction(n, std::f64::consts::FRAC_PI_2, 0.0);
        assert_abs_diff_eq!(v[2], 1.0, epsilon = 1e-15);
        // along z the frame falls back to x
        let v = relative_direction([0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2, 0.0);
        assert_abs_diff_eq!(v[0], 1.0, epsilon = 1e-15);
        let v = relative_direction([0.0, 0.6, 0.8], 1.1, 2.3);
        assert_abs_diff_eq!(norm(v), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(0.6 * v[1] + 0.8 * v[2], 1.1f64.cos(), epsilon = 1e-15);
    }

    #[test]
    fn precessing_target_matches_exponential() {
        let g = HermitianObservable::pauli_z().scaled(std::f64::consts::PI);
        let target = TargetTrajectory::Precessing { initial: PureState::plus_x(), generator: g.clone() };
        let psi = target.at(0.37);
        let expected = crate::state::expm_skew(&g, 0.37).unwrap().matrix() * PureState::plus_x().vector();
        assert!((psi.vector() - expected).norm() < 1e-14);
    }

    #[test]
    fn unmeasured_free_run_is_deterministic() {
        let problem = ControlProblem {
            sme: SmeConfig::new(0.0, HermitianObservable::pauli_z(), 1e-3, 0.5),
            policy: MeasurementPolicy::Fixed(HermitianObservable::pauli_z()),
            feedback: None,
            target: TargetTrajectory::Precessing {
                initial: PureState::plus_x(),
                generator: HermitianObservable::pauli_z(),
            },
            initial: DensityMatrix::from_pure(&PureState::plus_x()),
        };
        let a = run_control_trajectory(&problem, &mut RandomStream::new(1, 0, 0), 50).unwrap();
        let b = run_control_trajectory(&problem, &mut RandomStream::new(2, 0, 0), 50).unwrap();
        assert_eq!(a.times.len(), 11);
        assert_eq!(a.purity, b.purity);
        assert!(a.overlap.iter().all(|&f| (f - 1.0).abs() < 1e-5));
        assert!(a.records.iter().all(|&r| r == 0.0));
    }
}
