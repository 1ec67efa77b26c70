//! Spec files: weight, profile and optional run parameters.
//!
//! ```json
//! {"m": 2, "profile": {"kind": "cosh_power", "alpha": 1.0}, "params": {"samples": 500}}
//! ```

use std::fs;
use std::path::Path;

use qbl_core::certify::{CertifyParams, ProbeParams, WitnessParams};
use qbl_core::profiles::{linspace, RhoProfile};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    CoshPower { alpha: f64 },
    Constant { c: f64 },
    Grid { h_max: f64, log_rho: Vec<f64> },
}

impl ProfileSpec {
    pub fn build(&self) -> Result<RhoProfile> {
        let p = match self {
            Self::CoshPower { alpha } => RhoProfile::cosh_power(*alpha)?,
            Self::Constant { c } => RhoProfile::constant(*c)?,
            Self::Grid { h_max, log_rho } => {
                if !(*h_max > 0.0) {
                    return Err(CliError::Spec(format!("profile.h_max must be positive, got {h_max}")));
                }
                RhoProfile::grid(*h_max, log_rho.clone())?
            }
        };
        Ok(p)
    }
}

/// Optional run parameters. Missing keys take the library defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub seed: Option<u64>,
    pub samples: usize,
    pub radius: f64,
    pub circle_points: usize,
    pub max_circle_points: usize,
    pub probe_h_max: f64,
    pub probe_x_max: f64,
    pub h_check_max: f64,
    pub h_check_steps: usize,
    pub tau_max: f64,
    pub tau_steps: usize,
    pub curve_x_min: f64,
    pub curve_x_max: f64,
    pub curve_steps: usize,
    pub tol_refute: f64,
    pub witness_tau_max: f64,
    pub witness_scan_steps: usize,
}

impl Default for Params {
    fn default() -> Self {
        let c = CertifyParams::default();
        let w = WitnessParams::default();
        Self {
            seed: None,
            samples: c.probe.samples,
            radius: c.probe.radius,
            circle_points: c.probe.circle_points,
            max_circle_points: c.probe.max_circle_points,
            probe_h_max: c.probe.h_max,
            probe_x_max: c.probe.x_max,
            h_check_max: c.h_check_max,
            h_check_steps: c.h_check_steps,
            tau_max: c.tau_max,
            tau_steps: c.tau_steps,
            curve_x_min: -3.0,
            curve_x_max: 3.0,
            curve_steps: 24,
            tol_refute: c.tol_refute,
            witness_tau_max: w.tau_scan_max,
            witness_scan_steps: w.scan_steps,
        }
    }
}

impl Params {
    fn validate(&self) -> Result<()> {
        let positive = [
            ("radius", self.radius),
            ("probe_h_max", self.probe_h_max),
            ("probe_x_max", self.probe_x_max),
            ("h_check_max", self.h_check_max),
            ("tau_max", self.tau_max),
            ("tol_refute", self.tol_refute),
            ("witness_tau_max", self.witness_tau_max),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Spec(format!("params.{name} must be positive, got {v}")));
            }
        }
        let counts = [
            ("samples", self.samples),
            ("circle_points", self.circle_points),
            ("max_circle_points", self.max_circle_points),
            ("h_check_steps", self.h_check_steps),
            ("tau_steps", self.tau_steps),
            ("curve_steps", self.curve_steps),
            ("witness_scan_steps", self.witness_scan_steps),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(CliError::Spec(format!("params.{name} must be positive")));
            }
        }
        if !(self.curve_x_min < self.curve_x_max) {
            return Err(CliError::Spec("params.curve_x_min must be below curve_x_max".into()));
        }
        self.probe(0).validate()?;
        Ok(())
    }

    pub fn probe(&self, seed: u64) -> ProbeParams {
        ProbeParams {
            seed,
            samples: self.samples,
            radius: self.radius,
            circle_points: self.circle_points,
            max_circle_points: self.max_circle_points,
            h_max: self.probe_h_max,
            x_max: self.probe_x_max,
        }
    }

    pub fn certify(&self, seed: u64) -> CertifyParams {
        CertifyParams {
            h_check_max: self.h_check_max,
            h_check_steps: self.h_check_steps,
            tau_max: self.tau_max,
            tau_steps: self.tau_steps,
            curve_x: linspace(self.curve_x_min, self.curve_x_max, self.curve_steps),
            probe: self.probe(seed),
            tol_refute: self.tol_refute,
        }
    }

    pub fn witness(&self) -> WitnessParams {
        WitnessParams {
            tau_scan_max: self.witness_tau_max,
            scan_steps: self.witness_scan_steps,
            ..WitnessParams::default()
        }
    }
}

/// A parsed and validated spec file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub m: i32,
    pub profile: ProfileSpec,
    #[serde(default)]
    pub params: Params,
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SpecFile = serde_json::from_str(text)?;
        spec.profile.build()?;
        spec.params.validate()?;
        Ok(spec)
    }

    /// The profile, shifted so that `ρ(0) = 1`.
    pub fn rho(&self) -> Result<RhoProfile> {
        Ok(self.profile.build()?.normalize())
    }

    pub fn was_normalized(&self) -> Result<bool> {
        Ok(self.profile.build()?.is_normalized())
    }
}

pub fn parse_spec(path: &Path) -> Result<SpecFile> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    SpecFile::from_json(&text)
}
