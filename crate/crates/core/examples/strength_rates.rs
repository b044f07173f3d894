//! How fast a continuous measurement of sigma_z gains strength, starting from I/2.

use qfeedback::metrics::{quoted_rates, strength_rate_numeric, RateOptions};
use qfeedback::HermitianObservable;

fn main() -> qfeedback::Result<()> {
    let q = HermitianObservable::pauli_z();
    println!("{:>5} {:>18} {:>18} {:>10} {:>10}", "k", "ds_p/dt", "ds_v/dt", "quoted_p", "quoted_v");
    for k in [0.5, 1.0, 2.0] {
        let est = strength_rate_numeric(&q, k, &RateOptions::default())?;
        let (qv, qp) = quoted_rates(&q, k);
        println!(
            "{k:>5} {:>9.3} ± {:>6.3} {:>9.3} ± {:>6.3} {qp:>10.3} {qv:>10.3}",
            est.rate_p.mean,
            est.rate_p.se.unwrap_or(0.0),
            est.rate_v.mean,
            est.rate_v.se.unwrap_or(0.0)
        );
    }
    Ok(())
}
