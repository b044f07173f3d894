//! Parallel ensembles of controlled trajectories.
//!
//! Trajectory `i` always draws from stream `(master_seed, i, label)` and the
//! per-trajectory summaries are reduced in index order, so statistics are
//! bit-identical for any thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{real, ComplexMatrix};
use crate::rng::{BrownianPath, RandomStream};
use crate::sde::{integrate, ControlProblem, MeasurementPolicy};
use crate::state::{overlap_unchecked, purity};
use crate::stats::{Accumulator, Estimate};

/// Trajectories simulated concurrently before their summaries are folded in.
const CHUNK: usize = 64;

#[derive(Clone, Debug)]
pub struct EnsembleConfig {
    pub problem: ControlProblem,
    pub realizations: usize,
    pub master_seed: u64,
    /// Distinguishes the random streams of different experiments sharing a seed.
    pub stream_label: u64,
    /// Statistics are taken every `stat_stride` steps (and at the final step).
    pub stat_stride: usize,
    /// Samples before this time are excluded from the time averages.
    pub average_from: f64,
    /// Integrate on the grid `dt / 2^refinement` while keeping the sample times
    /// and each realization's Brownian path (see [`BrownianPath`]). Comparing
    /// refinements then measures the time-step error without resampling noise.
    pub refinement: u32,
}

impl EnsembleConfig {
    pub fn new(problem: ControlProblem, realizations: usize, master_seed: u64) -> Self {
        Self { problem, realizations, master_seed, stream_label: 0, stat_stride: 10, average_from: 0.0, refinement: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct EnsembleStats {
    pub times: Vec<f64>,
    pub purity: Vec<Estimate>,
    pub overlap: Vec<Estimate>,
    /// Ensemble-mean state at each sample time.
    pub mean_state: Vec<ComplexMatrix>,
    /// Entrywise standard errors of the real and imaginary parts of the mean state.
    pub mean_state_se: Option<Vec<ComplexMatrix>>,
    /// Per-trajectory time average of purity over samples with `t >= average_from`, then averaged.
    pub time_avg_purity: Estimate,
    pub time_avg_overlap: Estimate,
    pub realizations: usize,
}

struct Summary {
    purity: Vec<f64>,
    overlap: Vec<f64>,
    states: Vec<ComplexMatrix>,
}

/// The problem as integrated: step and stride scaled by the refinement.
struct Plan {
    problem: ControlProblem,
    coarse_dt: f64,
    stride: usize,
    levels: u32,
}

impl Plan {
    fn new(config: &EnsembleConfig) -> Self {
        let factor = 1usize << config.refinement;
        let mut problem = config.problem.clone();
        problem.sme.dt /= factor as f64;
        Plan { problem, coarse_dt: config.problem.sme.dt, stride: config.stat_stride * factor, levels: config.refinement }
    }

    fn sample_times(&self) -> Vec<(usize, f64)> {
        let steps = self.problem.sme.steps();
        let dt = self.problem.sme.dt;
        (0..=steps).filter(|&n| n % self.stride == 0 || n == steps).map(|n| (n, n as f64 * dt)).collect()
    }
}

fn run_one(config: &EnsembleConfig, plan: &Plan, index: usize) -> Result<Summary> {
    let steps = plan.problem.sme.steps();
    let stride = plan.stride;
    let mut stream = RandomStream::new(config.master_seed, index as u64, config.stream_label);
    let (seed, stream_id) = (stream.seed(), stream.stream_id());
    let mut summary = Summary { purity: Vec::new(), overlap: Vec::new(), states: Vec::new() };
    let mut noise = BrownianPath::new(&mut stream, plan.coarse_dt, plan.levels);
    integrate(&plan.problem, &mut noise, |v| {
        if v.step % stride == 0 || v.step == steps {
            summary.purity.push(purity(v.state));
            summary.overlap.push(overlap_unchecked(v.state.matrix(), v.target));
            summary.states.push(v.state.matrix().clone());
        }
    })
    .map_err(|e| Error::Trajectory { trajectory: index, seed, stream: stream_id, source: Box::new(e) })?;
    Ok(summary)
}

/// Run `realizations` independent trajectories and collect per-time and time-averaged statistics.
pub fn run_ensemble(config: &EnsembleConfig) -> Result<EnsembleStats> {
    config.problem.validate()?;
    if config.realizations == 0 {
        return Err(Error::InvalidParameter("at least one realization is needed".into()));
    }
    if config.stat_stride == 0 {
        return Err(Error::InvalidParameter("statistics stride must be positive".into()));
    }
    if config.refinement > 16 {
        return Err(Error::InvalidParameter(format!("refinement {} is too deep", config.refinement)));
    }
    let plan = Plan::new(config);
    let samples = plan.sample_times();
    let m = samples.len();
    let dim = config.problem.initial.dim();
    let averaged: Vec<usize> =
        (0..m).filter(|&j| samples[j].1 >= config.average_from - 1e-12 * config.problem.sme.dt).collect();
    if averaged.is_empty() {
        return Err(Error::InvalidParameter("no samples after the transient".into()));
    }

    let mut purity_acc = vec![Accumulator::default(); m];
    let mut overlap_acc = vec![Accumulator::default(); m];
    let mut re_acc = vec![vec![Accumulator::default(); dim * dim]; m];
    let mut im_acc = vec![vec![Accumulator::default(); dim * dim]; m];
    let mut avg_purity = Accumulator::default();
    let mut avg_overlap = Accumulator::default();

    let indices: Vec<usize> = (0..config.realizations).collect();
    for chunk in indices.chunks(CHUNK) {
        let summaries: Vec<Summary> = chunk.par_iter().map(|&i| run_one(config, &plan, i)).collect::<Result<_>>()?;
        for s in &summaries {
            for j in 0..m {
                purity_acc[j].push(s.purity[j]);
                overlap_acc[j].push(s.overlap[j]);
                for (e, z) in s.states[j].iter().enumerate() {
                    re_acc[j][e].push(z.re);
                    im_acc[j][e].push(z.im);
                }
            }
            let mean_over = |xs: &[f64]| averaged.iter().map(|&j| xs[j]).sum::<f64>() / averaged.len() as f64;
            avg_purity.push(mean_over(&s.purity));
            avg_overlap.push(mean_over(&s.overlap));
        }
    }

    let mean_state = (0..m)
        .map(|j| {
            ComplexMatrix::from_iterator(
                dim,
                dim,
                re_acc[j].iter().zip(&im_acc[j]).map(|(r, i)| real(r.mean()) + crate::linalg::I * i.mean()),
            )
        })
        .collect();
    let mean_state_se = (config.realizations > 1).then(|| {
        (0..m)
            .map(|j| {
                ComplexMatrix::from_iterator(
                    dim,
                    dim,
                    re_acc[j].iter().zip(&im_acc[j]).map(|(r, i)| {
                        let se = |a: &Accumulator| a.estimate().se.unwrap_or(0.0);
                        crate::linalg::c(se(r), se(i))
                    }),
                )
            })
            .collect()
    });

    Ok(EnsembleStats {
        times: samples.iter().map(|s| s.1).collect(),
        purity: purity_acc.iter().map(Accumulator::estimate).collect(),
        overlap: overlap_acc.iter().map(Accumulator::estimate).collect(),
        mean_state,
        mean_state_se,
        time_avg_purity: avg_purity.estimate(),
        time_avg_overlap: avg_overlap.estimate(),
        realizations: config.realizations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaRow {
    pub theta: f64,
    pub purity: Estimate,
    pub overlap: Estimate,
}

/// Time-averaged purity and target overlap as a function of the measurement
/// angle relative to the state, each angle on its own stream label.
pub fn theta_experiment(base: &EnsembleConfig, thetas: &[f64], phi: f64) -> Result<Vec<ThetaRow>> {
    thetas
        .iter()
        .enumerate()
        .map(|(i, &theta)| {
            let mut config = base.clone();
            config.problem.policy = MeasurementPolicy::RelativeAngle { theta, phi };
            config.stream_label = base.stream_label.wrapping_add(i as u64);
            let stats = run_ensemble(&config)?;
            Ok(ThetaRow { theta, purity: stats.time_avg_purity, overlap: stats.time_avg_overlap })
        })
        .collect()
}
