//! Density matrices, pure states, overlaps and distances.

use qfeedback::state::{majorizes, overlap, purity, trace_distance, von_neumann_entropy};
use qfeedback::{DensityMatrix, PureState, UnitaryOperator};

fn main() -> qfeedback::Result<()> {
    let plus = PureState::plus_x();
    let rho = DensityMatrix::diagonal(&[0.1, 0.9])?;
    println!("rho = diag(0.1, 0.9)");
    println!("  purity   {:.6}", purity(&rho));
    println!("  entropy  {:.6} nats", von_neumann_entropy(&rho));
    println!("  <+|rho|+> {:.6}", overlap(&rho, &plus)?);

    let mixed = DensityMatrix::maximally_mixed(2);
    println!("trace distance to I/2: {:.6}", trace_distance(&rho, &mixed)?);

    let spectrum = rho.spectrum();
    println!("eigenvalues {:?}", spectrum.values);
    println!("I/2 majorized by rho: {}", majorizes(&spectrum.values, &[0.5, 0.5])?);

    let u = UnitaryOperator::bloch_rotation(std::f64::consts::FRAC_PI_2, 0.0);
    let rotated = u.apply_to(&rho);
    println!("Bloch vector before {:?}", rho.bloch_vector());
    println!("Bloch vector after a quarter turn about y {:?}", rotated.bloch_vector());
    Ok(())
}
