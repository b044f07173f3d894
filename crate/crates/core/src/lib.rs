//! Quantum measurement, feedback and stochastic master equation toolkit.
//!
//! Finite-dimensional states and operators live in [`state`], measurement
//! operator sets in [`povm`], information/disturbance figures of merit in
//! [`metrics`], optimal control in [`feedback`], time evolution in [`sde`],
//! and parallel Monte Carlo ensembles in [`ensemble`].

pub mod cli;
pub mod ensemble;
pub mod error;
pub mod feedback;
pub mod linalg;
pub mod metrics;
pub mod povm;
pub mod rng;
pub mod sde;
pub mod state;
pub mod stats;

pub use error::{Error, Result};
pub use feedback::{optimal_feedback, optimal_unitary, FeedbackBranch, FeedbackDecision, FeedbackStrength};
pub use povm::{KappaMeasurement, MeasurementOperatorSet, MeasurementOutcome};
pub use rng::{BrownianPath, RandomStream};
pub use state::{DensityMatrix, HermitianObservable, PureState, UnitaryOperator};
