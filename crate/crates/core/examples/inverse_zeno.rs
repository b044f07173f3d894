//! Dragging |0> to |1> with M projective measurements along the connecting geodesic.
//!
//! cargo run --release --example inverse_zeno -- [runs]

use qfeedback::sde::{geodesic_angle, inverse_zeno_run, zeno_success_probability};
use qfeedback::{PureState, RandomStream};

fn main() -> qfeedback::Result<()> {
    let runs: usize = std::env::args().nth(1).map(|a| a.parse().expect("runs")).unwrap_or(2000);
    let (source, target) = (PureState::basis(2, 0), PureState::basis(2, 1));
    let gamma = geodesic_angle(&source, &target)?;
    println!("{:>5} {:>10} {:>10}", "M", "observed", "expected");
    for (label, m) in [1usize, 2, 5, 10, 50, 200].into_iter().enumerate() {
        let mut stream = RandomStream::new(3, 0, label as u64);
        let mut wins = 0;
        for _ in 0..runs {
            wins += inverse_zeno_run(&source, &target, m, &mut stream)?.success as usize;
        }
        println!("{m:>5} {:>10.4} {:>10.4}", wins as f64 / runs as f64, zeno_success_probability(gamma, m));
    }
    Ok(())
}
