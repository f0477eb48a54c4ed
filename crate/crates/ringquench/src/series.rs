//! Sampled observable trajectories, the common currency passed between the
//! evolvers and the analysis tools.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A real-valued trajectory `t → value` with strictly increasing sample times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    values: Vec<f64>,
    pub label: String,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        check_times(&times, values.len())?;
        Ok(TimeSeries { times, values, label: label.into() })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Sample spacing, assuming a uniform grid.
    pub fn dt(&self) -> f64 {
        if self.times.len() < 2 {
            0.0
        } else {
            (self.times[self.times.len() - 1] - self.times[0]) / (self.times.len() - 1) as f64
        }
    }
}

/// A complex-valued trajectory with the same time-grid contract.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSeries {
    times: Vec<f64>,
    values: Vec<Complex64>,
    pub label: String,
}

impl ComplexSeries {
    pub fn new(times: Vec<f64>, values: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        check_times(&times, values.len())?;
        Ok(ComplexSeries { times, values, label: label.into() })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn modulus(&self) -> TimeSeries {
        TimeSeries {
            times: self.times.clone(),
            values: self.values.iter().map(|v| v.norm()).collect(),
            label: format!("|{}|", self.label),
        }
    }
}

fn check_times(times: &[f64], n_values: usize) -> Result<()> {
    if times.len() != n_values {
        return Err(Error::Series(format!(
            "{} times but {} values",
            times.len(),
            n_values
        )));
    }
    for w in times.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::Series(format!(
                "sample times not strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Uniform grid of `samples` points covering `[0, t_max]` inclusive.
pub fn time_grid(t_max: f64, samples: usize) -> Vec<f64> {
    assert!(samples >= 2);
    let dt = t_max / (samples - 1) as f64;
    (0..samples).map(|i| i as f64 * dt).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_increasing_times() {
        assert!(TimeSeries::new(vec![0.0, 1.0, 1.0], vec![0.0; 3], "x").is_err());
        assert!(TimeSeries::new(vec![0.0, 1.0], vec![0.0; 3], "x").is_err());
        assert!(TimeSeries::new(vec![0.0, 1.0, 2.0], vec![0.0; 3], "x").is_ok());
    }

    #[test]
    fn grid_covers_range() {
        let g = time_grid(10.0, 41);
        assert_eq!(g.len(), 41);
        assert_eq!(g[0], 0.0);
        assert!((g[40] - 10.0).abs() < 1e-12);
    }
}
