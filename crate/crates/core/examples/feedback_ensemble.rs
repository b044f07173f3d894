//! Time-averaged purity and target overlap of the feedback loop for several
//! measurement angles, averaged over an ensemble of trajectories.
//!
//! cargo run --release --example feedback_ensemble -- [realizations] [mu] [phi]

use qfeedback::ensemble::{theta_experiment, EnsembleConfig};
use qfeedback::sde::{ControlProblem, MeasurementPolicy, SmeConfig, TargetTrajectory};
use qfeedback::{DensityMatrix, FeedbackStrength, HermitianObservable, PureState};

fn main() -> qfeedback::Result<()> {
    let mut args = std::env::args().skip(1);
    let realizations: usize = args.next().map(|a| a.parse().expect("realizations")).unwrap_or(50);
    let mu: f64 = args.next().map(|a| a.parse().expect("mu")).unwrap_or(10.0);
    let phi: f64 = args.next().map(|a| a.parse().expect("phi")).unwrap_or(0.0);

    let h0 = HermitianObservable::pauli_z().scaled(std::f64::consts::PI);
    let problem = ControlProblem {
        sme: SmeConfig::new(2.0, h0.clone(), 5e-5, 2.0).with_dephasing(0.4),
        policy: MeasurementPolicy::relative_angle(0.0),
        feedback: FeedbackStrength::new(mu).ok(),
        target: TargetTrajectory::Precessing { initial: PureState::plus_x(), generator: h0 },
        initial: DensityMatrix::from_pure(&PureState::plus_x()),
    };
    let base = EnsembleConfig::new(problem, realizations, 7);
    let thetas: Vec<f64> = (0..5).map(|i| i as f64 * std::f64::consts::PI / 8.0).collect();

    let start = std::time::Instant::now();
    println!("{:>8} {:>18} {:>18}", "theta", "purity", "overlap");
    for row in theta_experiment(&base, &thetas, phi)? {
        let se = |e: qfeedback::stats::Estimate| e.se.unwrap_or(f64::NAN);
        println!(
            "{:>8.4} {:>9.5} ± {:.5} {:>9.5} ± {:.5}",
            row.theta,
            row.purity.mean,
            se(row.purity),
            row.overlap.mean,
            se(row.overlap)
        );
    }
    println!("{realizations} trajectories per angle in {:.1?}", start.elapsed());
    Ok(())
}
