//! Average final purity and excess noise of a qubit measurement as a function
//! of the angle between the measurement basis and the state's eigenbasis.
//!
//! cargo run --example information_disturbance -- [p] [kappa]

use qfeedback::metrics::{strength, theta_sweep};
use qfeedback::povm::kappa_povm;
use qfeedback::KappaMeasurement;

fn main() -> qfeedback::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let p = args.next().unwrap_or(0.1);
    let kappa = args.next().unwrap_or(0.75);

    let thetas: Vec<f64> = (0..=12).map(|i| i as f64 * std::f64::consts::PI / 12.0).collect();
    println!("{:>8} {:>10} {:>10} {:>10}", "theta", "i_f_p", "n_e_p", "n_e_v");
    for row in theta_sweep(p, kappa, &thetas)? {
        println!("{:>8.4} {:>10.6} {:>10.6} {:>10.6}", row.theta, row.i_f_p, row.n_e_p, row.n_e_v);
    }

    let report = strength(&kappa_povm(&KappaMeasurement::new(kappa, 0.0, 0.0)?)?)?;
    println!("strength: s_v = {}, s_p = {}", report.s_v, report.s_p);
    Ok(())
}
