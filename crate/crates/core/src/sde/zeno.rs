//! Dragging a pure state along a geodesic with a sequence of projective measurements.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{outer, real, ComplexVector};
use crate::povm::{sample_outcome, MeasurementOperatorSet};
use crate::rng::RandomStream;
use crate::state::{DensityMatrix, PureState};

#[derive(Clone, Debug)]
pub struct ZenoRun {
    /// Every measurement selected the projector onto the path state.
    pub success: bool,
    /// Outcome index of each measurement (0 = on the path).
    pub outcomes: Vec<usize>,
    pub final_state: DensityMatrix,
}

/// Fubini–Study angle `arccos |<a|b>|`.
pub fn geodesic_angle(a: &PureState, b: &PureState) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(a.vector().dotc(b.vector()).norm().min(1.0).acos())
}

/// Measure `{P_i, I - P_i}` for the path states `|eps_i>`, `eps_i = i gamma / M`, `i = 1..M`,
/// where `|eps> = cos(eps)|source> + sin(eps)|e>` runs from `source` to `target` (up to phase).
/// All `M` measurements are performed even after a failure.
pub fn inverse_zeno_run(
    source: &PureState,
    target: &PureState,
    steps: usize,
    stream: &mut RandomStream,
) -> Result<ZenoRun> {
    if steps == 0 {
        return Err(Error::InvalidParameter("at least one measurement is needed".into()));
    }
    let gamma = geodesic_angle(source, target)?;
    let s = source.vector();
    let overlap = s.dotc(target.vector());
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { real(1.0) };
    let mut e: ComplexVector = target.vector() * phase.conj() - s * real(overlap.norm());
    let len = e.norm();
    if len > 1e-14 {
        e /= real(len);
    } else {
        e.fill(Complex64::new(0.0, 0.0));
    }
    let n = source.dim();
    let mut rho = DensityMatrix::from_pure(source);
    let mut outcomes = Vec::with_capacity(steps);
    for i in 1..=steps {
        let eps = gamma * i as f64 / steps as f64;
        let v: ComplexVector = s * real(eps.cos()) + &e * real(eps.sin());
        let p = outer(&v, &v);
        let set = MeasurementOperatorSet::new(vec![p.clone(), crate::linalg::identity(n) - p])?;
        let outcome = sample_outcome(&set, &rho, stream)?;
        outcomes.push(outcome.index);
        rho = outcome.post_state;
    }
    Ok(ZenoRun { success: outcomes.iter().all(|&o| o == 0), outcomes, final_state: rho })
}

/// Probability that every measurement lands on the path, `cos(gamma/M)^(2M)`.
pub fn zeno_success_probability(gamma: f64, steps: usize) -> f64 {
    (gamma / steps as f64).cos().powi(2 * steps as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::overlap;

    #[test]
    fn successful_run_ends_on_target() {
        let target = PureState::basis(2, 1).with_phase(0.7);
        let mut stream = RandomStream::from_seed(3);
        let mut seen = false;
        for _ in 0..20 {
            let run = inverse_zeno_run(&PureState::basis(2, 0), &target, 50, &mut stream).unwrap();
            if run.success {
                seen = true;
                assert!((overlap(&run.final_state, &target).unwrap() - 1.0).abs() < 1e-12);
            }
        }
        assert!(seen);
    }

    #[test]
    fn identical_endpoints_always_succeed() {
        let a = PureState::bloch(0.3, 0.2);
        let run = inverse_zeno_run(&a, &a.with_phase(1.0), 5, &mut RandomStream::from_seed(1)).unwrap();
        assert!(run.success);
    }
}
