use serde::{Deserialize, Serialize};

/// Tolerances and sampling knobs shared by the library entry points and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Relative singular-value cutoff for numerical rank.
    pub tol_rank: f64,
    /// Relative distance used to cluster and match eigenvalues.
    pub tol_eig: f64,
    /// Relative residual bound for recovered eigenvectors.
    pub tol_residual: f64,
    pub sample_points: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self { tol_rank: 1e-10, tol_eig: 1e-8, tol_residual: 1e-8, sample_points: 20, seed: 42 }
    }
}

impl Config {
    pub fn validate(&self) -> crate::Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !(ok(self.tol_rank) && ok(self.tol_eig) && ok(self.tol_residual)) {
            return Err(crate::Error::Input("tolerances must be positive and finite".into()));
        }
        Ok(())
    }
}
