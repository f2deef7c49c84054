use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{ProcessError, TimeChange, TimeGrid};
use crate::exec::{self, Backend};

/// Recorded in reports so runs can be reproduced elsewhere.
pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha 0.9): key from seed_from_u64(seed), stream = path index; N(0,1) via rand_distr StandardNormal";

/// `N` simulated paths of `X` on a grid, stored row-major (one row per path).
#[derive(Debug, Clone, PartialEq)]
pub struct PathEnsemble {
    grid: TimeGrid,
    h: TimeChange,
    qv: Vec<f64>,
    n_paths: usize,
    seed: u64,
    values: Vec<f64>,
}

pub fn generate(h: &TimeChange, grid: &TimeGrid, n_paths: usize, seed: u64) -> Result<PathEnsemble, ProcessError> {
    generate_with(Backend::default(), h, grid, n_paths, seed)
}

/// Path `i` uses its own ChaCha8 stream derived from `(seed, i)`; increments
/// over `[t_k, t_{k+1}]` are `N(0, h(t_{k+1}) - h(t_k))`.
pub fn generate_with(
    backend: Backend,
    h: &TimeChange,
    grid: &TimeGrid,
    n_paths: usize,
    seed: u64,
) -> Result<PathEnsemble, ProcessError> {
    if n_paths == 0 {
        return Err(ProcessError::NoPaths);
    }
    let qv = h.check_on(grid)?;
    let sd: Vec<f64> = qv.windows(2).map(|w| (w[1] - w[0]).sqrt()).collect();
    let width = grid.points().len();
    let key = ChaCha8Rng::seed_from_u64(seed).get_seed();
    let mut values = vec![0.0; n_paths * width];
    exec::for_each_chunk_mut(backend, &mut values, width, |i, row| {
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(i as u64);
        let mut x = 0.0;
        row[0] = 0.0;
        for (slot, s) in row[1..].iter_mut().zip(&sd) {
            let z: f64 = rng.sample(StandardNormal);
            x += s * z;
            *slot = x;
        }
    });
    Ok(PathEnsemble { grid: grid.clone(), h: h.clone(), qv, n_paths, seed, values })
}

impl PathEnsemble {
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn time_change(&self) -> &TimeChange {
        &self.h
    }

    /// `h(t_k)` at each grid point.
    pub fn quadratic_variation(&self) -> &[f64] {
        &self.qv
    }

    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn path(&self, i: usize) -> &[f64] {
        let w = self.grid.points().len();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn paths(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks(self.grid.points().len())
    }

    /// `X_{t_k}` across all paths.
    pub fn column(&self, k: usize) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.paths().map(move |p| p[k])
    }

    /// One row per path, one column per grid time.
    pub fn write_csv<W: Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(self.grid.points().iter().map(|t| format!("t={t:?}")))?;
        for p in self.paths() {
            w.write_record(p.iter().map(|x| format!("{x:?}")))?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_column_is_zero_and_seed_reproduces() {
        let grid = TimeGrid::uniform(1.0, 8).unwrap();
        let a = generate(&TimeChange::Identity, &grid, 50, 42).unwrap();
        let b = generate(&TimeChange::Identity, &grid, 50, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.column(0).all(|x| x == 0.0));
        let c = generate(&TimeChange::Identity, &grid, 50, 43).unwrap();
        assert_ne!(a.path(3), c.path(3));
    }

    #[test]
    fn paths_do_not_depend_on_ensemble_size_or_backend() {
        let grid = TimeGrid::uniform(2.0, 5).unwrap();
        let small = generate_with(Backend::Sequential, &TimeChange::Identity, &grid, 10, 7).unwrap();
        let large = generate_with(Backend::default(), &TimeChange::Identity, &grid, 1000, 7).unwrap();
        for i in 0..10 {
            assert_eq!(small.path(i), large.path(i));
        }
    }

    #[test]
    fn zero_time_change_gives_zero_paths() {
        let h = TimeChange::piecewise_linear(vec![(0.0, 0.0), (1.0, 0.0)]).unwrap();
        let grid = TimeGrid::uniform(1.0, 4).unwrap();
        let e = generate(&h, &grid, 20, 1).unwrap();
        assert!(e.paths().all(|p| p.iter().all(|&x| x == 0.0)));
    }

    #[test]
    fn rejects_bad_inputs() {
        let grid = TimeGrid::uniform(1.0, 4).unwrap();
        assert!(matches!(generate(&TimeChange::Identity, &grid, 0, 1), Err(ProcessError::NoPaths)));
        let h = TimeChange::piecewise_linear(vec![(0.0, 0.0), (0.5, 1.0), (1.0, 0.2)]).unwrap();
        assert!(matches!(generate(&h, &grid, 5, 1), Err(ProcessError::InvalidTimeChange(_))));
    }

    #[test]
    fn csv_dump_has_one_row_per_path() {
        let grid = TimeGrid::uniform(1.0, 2).unwrap();
        let e = generate(&TimeChange::Identity, &grid, 3, 9).unwrap();
        let mut buf = Vec::new();
        e.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("t=0.0,t=0.5,t=1.0\n0.0,"));
    }
}
