//! Figures of merit for measurements: average post-measurement uncertainty,
//! strength, disturbance, and the strength rate of a continuous measurement.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_spectrum, tolerance, trace_product_re, ComplexMatrix};
use crate::povm::{kappa_povm, nonselective_apply, unnormalized_post, KappaMeasurement, MeasurementKind};
use crate::povm::MeasurementOperatorSet;
use crate::rng::RandomStream;
use crate::sde::sme_step;
use crate::state::{entropy_of, purity, von_neumann_entropy, DensityMatrix, HermitianObservable, PureState};
use crate::stats::{Accumulator, Estimate};

/// Uncertainties below this count as zero when mapping to strengths.
pub const ZERO_UNCERTAINTY: f64 = 1e-12;
/// Singular values below this fraction of the largest one count as zero when ranking operators.
pub const RANK_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Strength {
    Finite(f64),
    Infinite,
}

impl Strength {
    fn from_uncertainty(u: f64, offset: f64) -> Self {
        if u < ZERO_UNCERTAINTY {
            Strength::Infinite
        } else {
            Strength::Finite((1.0 / u - offset).max(0.0))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Strength::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Strength::Finite(x) => Some(*x),
            Strength::Infinite => None,
        }
    }
}

impl std::fmt::Display for Strength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strength::Finite(x) => write!(f, "{x}"),
            Strength::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrengthReport {
    /// Average post-measurement entropy at `I/N` (nats).
    pub u_v: f64,
    /// Average post-measurement impurity at `I/N`.
    pub u_p: f64,
    /// `1/u_v - 1/ln N`
    pub s_v: Strength,
    /// `1/u_p - N/(N-1)`
    pub s_p: Strength,
    /// Some operator has rank exactly one.
    pub has_rank_one: bool,
}

impl StrengthReport {
    /// Infinite strength: a rank-one operator is present, or an uncertainty vanishes.
    pub fn is_infinite(&self) -> bool {
        self.has_rank_one || self.s_v.is_infinite() || self.s_p.is_infinite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DisturbanceReport {
    /// `S(rho_f) - S(rho)` (nats)
    pub n_e_v: f64,
    /// `Tr[rho^2] - Tr[rho_f^2]`
    pub n_e_p: f64,
    /// Average post-measurement purity.
    pub i_f_p: f64,
}

/// Unnormalized post-states with their probabilities; outcomes at or below the
/// probability floor are dropped.
fn branches(set: &MeasurementOperatorSet, rho: &DensityMatrix) -> Result<Vec<(f64, ComplexMatrix)>> {
    if set.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: set.dim(), found: rho.dim() });
    }
    Ok(set
        .ops()
        .iter()
        .map(|op| {
            let post = unnormalized_post(op, rho);
            (post.trace().re, post)
        })
        .filter(|(p, _)| *p > tolerance::PROBABILITY)
        .collect())
}

/// `sum_n P(n) S(rho_n)`.
pub fn uncertainty_v(set: &MeasurementOperatorSet, rho: &DensityMatrix) -> Result<f64> {
    Ok(branches(set, rho)?
        .iter()
        .map(|(p, post)| {
            let values: Vec<f64> = hermitian_spectrum(post).values.iter().map(|x| x / p).collect();
            p * entropy_of(&values)
        })
        .sum())
}

/// `1 - sum_n Tr[(Omega_n rho Omega_n^dagger)^2] / P(n)`.
pub fn uncertainty_p(set: &MeasurementOperatorSet, rho: &DensityMatrix) -> Result<f64> {
    let kept: f64 = branches(set, rho)?.iter().map(|(p, post)| trace_product_re(post, post) / p).sum();
    Ok(1.0 - kept)
}

fn rank(op: &ComplexMatrix) -> usize {
    let s = op.clone().svd(false, false).singular_values;
    let max = s.iter().fold(0.0f64, |m, &x| m.max(x));
    if max == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > RANK_TOLERANCE * max).count()
}

/// Strengths from the uncertainties at the maximally mixed state.
pub fn strength(set: &MeasurementOperatorSet) -> Result<StrengthReport> {
    let n = set.dim();
    if n < 2 {
        return Err(Error::InvalidParameter("strength needs dimension at least 2".into()));
    }
    let mixed = DensityMatrix::maximally_mixed(n);
    let u_v = uncertainty_v(set, &mixed)?;
    let u_p = uncertainty_p(set, &mixed)?;
    let nf = n as f64;
    Ok(StrengthReport {
        u_v,
        u_p,
        s_v: Strength::from_uncertainty(u_v, 1.0 / nf.ln()),
        s_p: Strength::from_uncertainty(u_p, nf / (nf - 1.0)),
        has_rank_one: set.ops().iter().any(|op| rank(op) == 1),
    })
}

/// Entropy and purity changes of the record-averaged state, and the average final purity.
pub fn disturbance(set: &MeasurementOperatorSet, rho: &DensityMatrix) -> Result<DisturbanceReport> {
    let rho_f = nonselective_apply(set, rho)?;
    Ok(DisturbanceReport {
        n_e_v: von_neumann_entropy(&rho_f) - von_neumann_entropy(rho),
        n_e_p: purity(rho) - purity(&rho_f),
        i_f_p: 1.0 - uncertainty_p(set, rho)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub i_f_p: f64,
    pub n_e_p: f64,
    pub n_e_v: f64,
}

/// Disturbance of the qubit measurement with strength `kappa` along Bloch angle
/// `theta` (azimuth 0), applied to `diag(p, 1-p)`, for each `theta`.
pub fn theta_sweep(p: f64, kappa: f64, thetas: &[f64]) -> Result<Vec<SweepRow>> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!("p must lie in (0, 1), got {p}")));
    }
    let rho = DensityMatrix::diagonal(&[p, 1.0 - p])?;
    thetas
        .iter()
        .map(|&theta| {
            let set = kappa_povm(&KappaMeasurement::new(kappa, theta, 0.0)?)?;
            let d = disturbance(&set, &rho)?;
            Ok(SweepRow { theta, i_f_p: d.i_f_p, n_e_p: d.n_e_p, n_e_v: d.n_e_v })
        })
        .collect()
}

/// For a measurement made of positive operators, the record-averaged fidelity
/// with any pure state cannot exceed the largest eigenvalue of `rho`.
pub fn fidelity_bound_check(set: &MeasurementOperatorSet, rho: &DensityMatrix, target: &PureState) -> Result<bool> {
    if set.kind() == MeasurementKind::General {
        return Err(Error::NotPureMeasurement);
    }
    if target.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: target.dim() });
    }
    let rho_f = nonselective_apply(set, rho)?;
    let fidelity = crate::state::overlap(&rho_f, target)?;
    Ok(fidelity <= rho.spectrum().max() + 1e-12)
}

/// Settings of the short-horizon ensemble behind [`strength_rate_numeric`].
#[derive(Clone, Copy, Debug)]
pub struct RateOptions {
    pub realizations: usize,
    /// Horizon in units of `1 / (k ||Q||^2)`.
    pub horizon: f64,
    pub steps: usize,
    pub seed: u64,
}

impl Default for RateOptions {
    fn default() -> Self {
        Self { realizations: 4000, horizon: 1e-4, steps: 20, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateEstimate {
    /// `d s_v / dt` at `I/N`.
    pub rate_v: Estimate,
    /// `d s_p / dt` at `I/N`.
    pub rate_p: Estimate,
    /// Horizon actually simulated.
    pub horizon: f64,
}

/// Rates of growth of `s_v` and `s_p` for a continuous measurement of `q` at rate `k`,
/// starting from `I/N`: `s(h) / h` for a short horizon `h`, with `u(h)` averaged over
/// independent trajectories and standard errors by the delta method.
pub fn strength_rate_numeric(q: &HermitianObservable, k: f64, options: &RateOptions) -> Result<RateEstimate> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("measurement rate must be non-negative, got {k}")));
    }
    let n = q.dim();
    if n < 2 {
        return Err(Error::InvalidParameter("rates need dimension at least 2".into()));
    }
    if options.realizations < 2 || options.steps == 0 || !(options.horizon > 0.0) {
        return Err(Error::InvalidParameter("rate estimator needs >= 2 realizations, >= 1 step and a positive horizon".into()));
    }
    let radius = hermitian_spectrum(q.matrix()).values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if k == 0.0 || radius == 0.0 {
        return Ok(RateEstimate { rate_v: Estimate::exact(0.0), rate_p: Estimate::exact(0.0), horizon: 0.0 });
    }
    let horizon = options.horizon / (k * radius * radius);
    let dt = horizon / options.steps as f64;
    let zero = HermitianObservable::zero(n);
    let samples: Vec<(f64, f64)> = (0..options.realizations)
        .into_par_iter()
        .map(|i| {
            let mut stream = RandomStream::new(options.seed, i as u64, RATE_STREAM_LABEL);
            let mut rho = DensityMatrix::maximally_mixed(n);
            for _ in 0..options.steps {
                let dw = stream.wiener_increment(dt);
                rho = sme_step(&rho, q, k, &zero, dt, dw)?.0;
            }
            Ok((von_neumann_entropy(&rho), 1.0 - purity(&rho)))
        })
        .collect::<Result<_>>()?;
    let mut u_v = Accumulator::default();
    let mut u_p = Accumulator::default();
    for &(v, p) in &samples {
        u_v.push(v);
        u_p.push(p);
    }
    let nf = n as f64;
    let rate = |acc: &Accumulator, offset: f64| {
        let e = acc.estimate();
        Estimate {
            mean: (1.0 / e.mean - offset) / horizon,
            se: e.se.map(|se| se / (e.mean * e.mean) / horizon),
        }
    };
    Ok(RateEstimate { rate_v: rate(&u_v, 1.0 / nf.ln()), rate_p: rate(&u_p, nf / (nf - 1.0)), horizon })
}

const RATE_STREAM_LABEL: u64 = 0x7261_7465;

/// Closed-form rates `(d s_v/dt, d s_p/dt)` at `I/N` as commonly quoted,
/// `4k/(N ln^2 N) (Tr[Q^2] + 3 Tr[Q]^2)` and `8k N^2/(N-1)^2 Tr[Q^2]`.
/// Kept for comparison with [`strength_rate_numeric`]; the purity expression
/// disagrees with the simulated rate by a constant factor.
pub fn quoted_rates(q: &HermitianObservable, k: f64) -> (f64, f64) {
    let n = q.dim() as f64;
    let tr_q = q.matrix().trace().re;
    let tr_q2 = q.squared_norm();
    let ln = n.ln();
    (
        4.0 * k / (n * ln * ln) * (tr_q2 + 3.0 * tr_q * tr_q),
        8.0 * k * n * n / ((n - 1.0) * (n - 1.0)) * tr_q2,
    )
}
