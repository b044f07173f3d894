//! Sample means with standard errors.

/// A Monte Carlo estimate. `se` is `None` when it is undefined (fewer than two samples).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub se: Option<f64>,
}

impl Estimate {
    pub fn exact(mean: f64) -> Self {
        Self { mean, se: Some(0.0) }
    }

    /// `|mean - reference| <= sigmas * se` (false when `se` is undefined).
    pub fn within(&self, reference: f64, sigmas: f64) -> bool {
        self.se.is_some_and(|se| (self.mean - reference).abs() <= sigmas * se)
    }

    /// Relative standard error `se / |mean|`.
    pub fn relative_se(&self) -> Option<f64> {
        self.se.map(|se| se / self.mean.abs())
    }
}

/// Running sum and sum of squares; order-sensitive, so feed it in a fixed order.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    n: usize,
    sum: f64,
    sum_sq: f64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.n as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> Option<f64> {
        if self.n < 2 {
            return None;
        }
        let n = self.n as f64;
        Some(((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0))
    }

    pub fn estimate(&self) -> Estimate {
        Estimate { mean: self.mean(), se: self.variance().map(|v| (v / self.n as f64).sqrt()) }
    }
}
