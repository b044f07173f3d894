//! One measured, feedback-controlled trajectory of a precessing, dephasing spin.
//!
//! cargo run --release --example trajectory -- [theta] [seed]

use qfeedback::sde::{run_control_trajectory, ControlProblem, MeasurementPolicy, SmeConfig, TargetTrajectory};
use qfeedback::{DensityMatrix, FeedbackStrength, HermitianObservable, PureState, RandomStream};

fn main() -> qfeedback::Result<()> {
    let mut args = std::env::args().skip(1);
    let theta: f64 = args.next().map(|a| a.parse().expect("theta")).unwrap_or(std::f64::consts::FRAC_PI_2);
    let seed: u64 = args.next().map(|a| a.parse().expect("seed")).unwrap_or(1);

    let h0 = HermitianObservable::pauli_z().scaled(std::f64::consts::PI);
    let problem = ControlProblem {
        sme: SmeConfig::new(2.0, h0.clone(), 5e-5, 2.0).with_dephasing(0.4),
        policy: MeasurementPolicy::relative_angle(theta),
        feedback: Some(FeedbackStrength::new(10.0)?),
        target: TargetTrajectory::Precessing { initial: PureState::plus_x(), generator: h0 },
        initial: DensityMatrix::from_pure(&PureState::plus_x()),
    };
    let traj = run_control_trajectory(&problem, &mut RandomStream::new(seed, 0, 0), 2000)?;
    println!("{:>6} {:>9} {:>9} {:>9}", "t", "purity", "overlap", "record");
    for i in 0..traj.times.len() {
        println!("{:>6.2} {:>9.5} {:>9.5} {:>9.4}", traj.times[i], traj.purity[i], traj.overlap[i], traj.records[i]);
    }
    Ok(())
}
