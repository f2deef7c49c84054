use super::ProcessError;

/// Strictly increasing time points `0 = t_0 < t_1 < ... < t_M = T`, `M ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    points: Vec<f64>,
}

impl TimeGrid {
    pub fn uniform(horizon: f64, steps: usize) -> Result<Self, ProcessError> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(ProcessError::InvalidGrid(format!("horizon must be > 0, got {horizon}")));
        }
        if steps == 0 {
            return Err(ProcessError::InvalidGrid("need at least one step".into()));
        }
        let mut points: Vec<f64> = (0..=steps).map(|k| horizon * k as f64 / steps as f64).collect();
        points[steps] = horizon;
        Ok(Self { points })
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self, ProcessError> {
        if points.len() < 2 {
            return Err(ProcessError::InvalidGrid("need at least two points".into()));
        }
        if points[0] != 0.0 {
            return Err(ProcessError::InvalidGrid("grid must start at 0".into()));
        }
        if points.iter().any(|t| !t.is_finite()) || points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ProcessError::InvalidGrid("points must be finite and strictly increasing".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Number of steps `M`.
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn horizon(&self) -> f64 {
        self.points[self.steps()]
    }

    pub fn max_step(&self) -> f64 {
        self.points.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Index of `t` in the grid, allowing for rounding in how `t` was computed.
    pub fn index_of(&self, t: f64) -> Result<usize, ProcessError> {
        let tol = 1e-12 * self.horizon().max(1.0);
        let i = self.points.partition_point(|&p| p < t - tol);
        match self.points.get(i) {
            Some(&p) if (p - t).abs() <= tol => Ok(i),
            _ => Err(ProcessError::NotOnGrid(t)),
        }
    }

    /// Every `stride`-th point; the last point must be kept.
    pub fn coarsen(&self, stride: usize) -> Result<Self, ProcessError> {
        if stride == 0 || !self.steps().is_multiple_of(stride) {
            return Err(ProcessError::InvalidGrid(format!("cannot coarsen {} steps by {stride}", self.steps())));
        }
        Ok(Self { points: self.points.iter().step_by(stride).copied().collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid() {
        let g = TimeGrid::uniform(2.0, 4).unwrap();
        assert_eq!(g.points(), &[0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(g.steps(), 4);
        assert_eq!(g.max_step(), 0.5);
        assert_eq!(g.index_of(1.5).unwrap(), 3);
        assert!(g.index_of(1.25).is_err());
        assert_eq!(g.coarsen(2).unwrap().points(), &[0.0, 1.0, 2.0]);
        assert!(g.coarsen(3).is_err());
    }

    #[test]
    fn invalid_grids() {
        assert!(TimeGrid::uniform(0.0, 4).is_err());
        assert!(TimeGrid::uniform(1.0, 0).is_err());
        assert!(TimeGrid::from_points(vec![0.0]).is_err());
        assert!(TimeGrid::from_points(vec![0.1, 0.2]).is_err());
        assert!(TimeGrid::from_points(vec![0.0, 0.2, 0.2]).is_err());
        assert!(TimeGrid::from_points(vec![0.0, 0.3, 1.0]).is_ok());
    }
}
