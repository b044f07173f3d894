//! The three branches of the optimal feedback Hamiltonian and the optimal finite unitary.

use qfeedback::feedback::{first_order_gain, optimal_feedback, optimal_unitary, second_order_gain};
use qfeedback::state::overlap;
use qfeedback::{DensityMatrix, FeedbackStrength, PureState};

fn main() -> qfeedback::Result<()> {
    let mu = FeedbackStrength::new(1.0)?;
    let target = PureState::basis(2, 0);

    let rho = DensityMatrix::from_pure(&PureState::plus_x());
    let d = optimal_feedback(&rho, &target, mu, None)?;
    println!("|+> toward |0>: {:?}", d.branch);
    println!("  H = {}", d.hamiltonian.matrix());
    println!("  dF/dt = {:.6}", first_order_gain(&d.hamiltonian, &rho, &target)?);

    let rho = DensityMatrix::diagonal(&[0.3, 0.7])?;
    let d = optimal_feedback(&rho, &target, mu, None)?;
    println!("diag(0.3, 0.7) toward |0>: {:?}", d.branch);
    println!("  d2F/dt2 / 2 = {:.6}", second_order_gain(&d.hamiltonian, &rho, &target, None)?);

    let rho = DensityMatrix::diagonal(&[0.7, 0.3])?;
    println!("diag(0.7, 0.3) toward |0>: {:?}", optimal_feedback(&rho, &target, mu, None)?.branch);

    let u = optimal_unitary(&rho, &DensityMatrix::from_pure(&PureState::basis(2, 1)))?;
    println!("best unitary reaches overlap {:.6}", overlap(&u.apply_to(&rho), &PureState::basis(2, 1))?);
    Ok(())
}
