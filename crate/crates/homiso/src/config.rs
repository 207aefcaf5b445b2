/// Tolerances, seed, and iteration limits shared by the constructions.
///
/// All pass/fail decisions in this crate are relative to a form scale,
/// never absolute; `tolerance` is that relative threshold. `rank_tol`
/// is the singular-value ratio below which a direction is treated as
/// dependent.
#[derive(Debug, Clone)]
pub struct ConstructionConfig {
    /// Relative residual threshold for certification and root residuals.
    pub tolerance: f64,
    /// Rank decisions accept sigma_min > rank_tol * sigma_max.
    pub rank_tol: f64,
    /// Seed for every random choice (scale sampling, greedy restarts).
    pub rng_seed: u64,
    /// Iteration cap for the simultaneous polynomial root finder.
    pub max_root_iter: usize,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            rank_tol: 1e-10,
            rng_seed: 0,
            max_root_iter: 200,
        }
    }
}

impl ConstructionConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            rng_seed: seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if !(self.tolerance > 0.0) || !(self.rank_tol > 0.0) {
            return Err(crate::Error::InvalidArgument(
                "tolerance and rank_tol must be positive".into(),
            ));
        }
        Ok(())
    }
}
