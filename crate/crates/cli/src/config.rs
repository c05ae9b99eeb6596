use serde::{Deserialize, Serialize};

use bhqnm::complex_scaling::{MAX_DIM, MAX_THETA, MIN_BASIS};
use bhqnm::normal_form::MIN_BARRIER_HEIGHT;
use bhqnm::spacetime::{critical_data, BlackHoleParams, MAX_TAYLOR_DEGREE};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Potential,
    Gsymbol,
    Lattice,
    Count,
    Direct,
    Pseudo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Potential => "potential",
            Command::Gsymbol => "gsymbol",
            Command::Lattice => "lattice",
            Command::Count => "count",
            Command::Direct => "direct",
            Command::Pseudo => "pseudo",
        }
    }
}

/// Tortoise grid of the potential table. `points = 0` is an empty grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

impl Grid {
    pub fn nodes(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.x_min],
            n => (0..n).map(|i| self.x_min + (self.x_max - self.x_min) * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub m: f64,
    pub lambda: f64,
    pub theta: f64,
    /// Inclusive `[ℓ_min, ℓ_max]`.
    pub ell_range: [u32; 2],
    pub n_max: u32,
    pub t: f64,
    pub r_list: Vec<f64>,
    pub series_degree: usize,
    pub h_order: usize,
    pub basis_size: usize,
    pub output_path: Option<String>,
    pub format: Format,
    pub grid: Grid,
    /// Semiclassical parameter of the rotated oscillator.
    pub pseudo_h: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m: 1.0,
            lambda: 0.0,
            theta: 0.3,
            ell_range: [1, 4],
            n_max: 4,
            t: 0.05,
            r_list: vec![25.0, 50.0, 100.0, 200.0],
            series_degree: 16,
            h_order: 4,
            basis_size: 151,
            output_path: None,
            format: Format::Csv,
            grid: Grid { x_min: -20.0, x_max: 40.0, points: 601 },
            pseudo_h: 0.05,
        }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn params(&self) -> Result<BlackHoleParams, CliError> {
        BlackHoleParams::new(self.m, self.lambda).map_err(|e| bad(e.to_string()))
    }

    /// Constraints shared by all commands plus those of `cmd`.
    pub fn validate(&self, cmd: Command) -> Result<(), CliError> {
        let p = self.params()?;
        let e0 = critical_data(&p).map_err(|e| bad(e.to_string()))?.e0;
        if e0 < MIN_BARRIER_HEIGHT {
            return Err(bad(format!("barrier height {e0} too small for the normal form")));
        }
        if !(self.theta >= 0.0 && self.theta <= MAX_THETA) {
            return Err(bad(format!("theta = {} outside [0, {MAX_THETA}]", self.theta)));
        }
        let [lo, hi] = self.ell_range;
        if lo < 1 || hi < lo {
            return Err(bad(format!("ell_range [{lo}, {hi}] must satisfy 1 ≤ lo ≤ hi")));
        }
        if !(self.t > 0.0 && self.t <= 0.3) {
            return Err(bad(format!("t = {} outside (0, 0.3]", self.t)));
        }
        if self.r_list.iter().any(|r| !(r.is_finite() && *r >= 1.0)) {
            return Err(bad("r_list entries must be finite and ≥ 1"));
        }
        if self.r_list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(bad("r_list must be strictly increasing"));
        }
        if self.series_degree > MAX_TAYLOR_DEGREE || self.series_degree < 2 * self.h_order + 4 {
            return Err(bad(format!(
                "series_degree {} must lie in [2·h_order + 4, {MAX_TAYLOR_DEGREE}] (h_order = {})",
                self.series_degree, self.h_order
            )));
        }
        if self.basis_size < 8 || self.basis_size > MAX_DIM {
            return Err(bad(format!("basis_size {} outside [8, {MAX_DIM}]", self.basis_size)));
        }
        if !(self.grid.x_min.is_finite() && self.grid.x_max.is_finite() && self.grid.x_min <= self.grid.x_max) {
            return Err(bad("grid needs finite x_min ≤ x_max"));
        }
        if !(self.pseudo_h > 0.0 && self.pseudo_h.is_finite()) {
            return Err(bad(format!("pseudo_h = {} must be positive", self.pseudo_h)));
        }
        if matches!(&self.output_path, Some(s) if s.is_empty()) {
            return Err(bad("output_path is empty"));
        }
        if cmd == Command::Direct {
            if self.theta <= 0.0 {
                return Err(bad("direct needs theta > 0"));
            }
            if self.basis_size < MIN_BASIS {
                return Err(bad(format!("direct needs basis_size ≥ {MIN_BASIS}")));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| bad(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
