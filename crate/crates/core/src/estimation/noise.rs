use rayon::prelude::*;

use super::{Pipeline, ScanConfig};
use crate::error::{invalid, Result};
use crate::sequence::{sample_noise_indexed, NoiseParams, NoiseTrajectory};

/// Ensemble statistics at one detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseRow {
    pub delta: f64,
    /// Mean parity-corrected ⟨Ĵz⟩ over trajectories.
    pub mean: f64,
    pub std_error: f64,
    /// Parity-corrected ⟨Ĵz⟩ without noise.
    pub noiseless: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NoiseCurve {
    pub rows: Vec<NoiseRow>,
    pub samples: usize,
}

impl NoiseCurve {
    pub const COLUMNS: [&'static str; 4] = ["delta", "jz_parity_corrected", "jz_std_error", "jz_noiseless"];

    /// Largest |mean − noiseless| over the grid.
    pub fn max_deviation(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.mean - r.noiseless).abs())
            .fold(0.0, f64::max)
    }
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        if self.count == 1 {
            self.mean = x;
            return;
        }
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    fn std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

/// Monte Carlo average of the detuning curve under bounded noise.
///
/// Trajectory `i` is drawn from stream `i` of the master seed and reused at
/// every detuning, so curves are reproducible and smooth in δ regardless of
/// thread scheduling.
pub fn noise_mc_average(config: &ScanConfig) -> Result<NoiseCurve> {
    config.validate()?;
    if config.mc_samples == 0 {
        return Err(invalid("mc_samples", "need at least one trajectory"));
    }
    let params = match config.noise {
        Some(p) => p,
        None => NoiseParams::new(0.0, config.default_grid_step(), 0)?,
    };
    let pipeline = Pipeline::new(config)?;
    let trajectories: Vec<NoiseTrajectory> = (0..config.mc_samples as u64)
        .into_par_iter()
        .map(|i| sample_noise_indexed(&params, config.window, i))
        .collect();
    let rows = config
        .delta_grid
        .par_iter()
        .map(|&delta| {
            let noiseless = pipeline.simulate(delta, None)?.jz_mean;
            let mut acc = Welford::default();
            for tr in &trajectories {
                acc.push(pipeline.simulate(delta, Some(tr))?.jz_mean);
            }
            Ok(NoiseRow {
                delta,
                mean: acc.mean,
                std_error: acc.std_error(),
                noiseless,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NoiseCurve {
        rows,
        samples: config.mc_samples,
    })
}
