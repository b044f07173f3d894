//! Time evolution: stochastic master equation steps, controlled trajectories
//! and measurement-driven state transfer.

mod step;
mod trajectory;
mod zeno;

pub(crate) use trajectory::integrate;

pub use step::{nonselective_step, sme_step, MAX_CLIPPED_EIGENVALUE};
pub use trajectory::{
    relative_direction, run_control_trajectory, ControlProblem, MeasurementPolicy, SmeConfig, TargetTrajectory,
    TrajectoryResult, COARSE_STEP_WARNING,
};
pub use zeno::{geodesic_angle, inverse_zeno_run, zeno_success_probability, ZenoRun};
