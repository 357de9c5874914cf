use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::summation::compensated_sum;

/// A batch of strictly positive observations, stored as order statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Sample {
    sorted: Vec<f64>,
}

impl Sample {
    /// Validates and sorts the observations.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::InvalidObservation { index, value });
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { sorted: values })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    /// Always false; a sample holds at least one observation.
    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Observations in ascending order.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// The `j`-th order statistic, 1-based as in `X_(1) ≤ … ≤ X_(n)`.
    pub fn order_statistic(&self, j: usize) -> Option<f64> {
        j.checked_sub(1).and_then(|i| self.sorted.get(i).copied())
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.sum_of(|x| x) / self.len() as f64
    }

    /// `Σ_j h(X_j)` with compensated accumulation.
    pub fn sum_of<F: Fn(f64) -> f64>(&self, h: F) -> f64 {
        compensated_sum(self.sorted.iter().map(|&x| h(x)))
    }

    /// Multiplies every observation by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.sorted.iter().map(|x| x * factor).collect())
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Sample> for Vec<f64> {
    fn from(s: Sample) -> Self {
        s.sorted
    }
}
