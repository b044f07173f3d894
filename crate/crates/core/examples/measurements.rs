//! Building, validating and applying measurement operator sets.

use qfeedback::povm::{
    apply_outcome, default_alpha_grid, gaussian_weak_povm, kappa_povm, nonselective_apply, poisson_povm,
    polar_split, sample_outcome,
};
use qfeedback::state::purity;
use qfeedback::{DensityMatrix, HermitianObservable, KappaMeasurement, RandomStream};

fn main() -> qfeedback::Result<()> {
    let rho = DensityMatrix::diagonal(&[0.1, 0.9])?;

    // Two-outcome qubit measurement of strength kappa along Bloch angle theta.
    let set = kappa_povm(&KappaMeasurement::new(0.75, std::f64::consts::FRAC_PI_2, 0.0)?)?;
    println!("kappa set: {:?}, completeness residual {:.1e}", set.kind(), set.completeness_residual());
    println!("outcome probabilities {:?}", set.probabilities(&rho)?);
    let out = apply_outcome(&set, &rho, 0)?;
    println!("after outcome 0: purity {:.4}", purity(&out.post_state));
    println!("record-averaged purity {:.4}", purity(&nonselective_apply(&set, &rho)?));

    let mut stream = RandomStream::from_seed(1);
    let drawn: Vec<usize> = (0..10).map(|_| sample_outcome(&set, &rho, &mut stream).map(|o| o.index)).collect::<Result<_, _>>()?;
    println!("ten sampled outcomes {drawn:?}");

    // Discretized Gaussian weak measurement of sigma_z.
    let q = HermitianObservable::pauli_z();
    let (k, dt) = (1.0, 0.01);
    let gauss = gaussian_weak_povm(&q, k, dt, &default_alpha_grid(&q, k, dt, 0.0))?;
    println!("gaussian set: {} operators, residual {:.1e}", gauss.len(), gauss.completeness_residual());

    let counting = poisson_povm(&q, k, 1e-3)?;
    println!("counting pair residual {:.1e} (first order in k dt)", counting.completeness_residual());

    let (u, p) = polar_split(&(qfeedback::linalg::pauli_x() * &set.ops()[0]))?;
    println!("polar split: unitary factor {:?}, positive factor trace {:.4}", u.matrix().shape(), p.trace().re);
    Ok(())
}
