//! Flat `key = value` run configuration.

use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use champagne::classical::{EMValue, EllipseLoop, MonodromyOptions};
use champagne::lattice::TransportOptions;
use champagne::quantum::QuantumConfig;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopPreset {
    Enclosing,
    NonEnclosing,
}

impl FromStr for LoopPreset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "enclosing" => Ok(LoopPreset::Enclosing),
            "non-enclosing" => Ok(LoopPreset::NonEnclosing),
            _ => Err(format!("unknown loop preset '{s}' (enclosing, non-enclosing)")),
        }
    }
}

impl Display for LoopPreset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LoopPreset::Enclosing => "enclosing",
            LoopPreset::NonEnclosing => "non-enclosing",
        })
    }
}

/// Which family of default loops a command draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopKind {
    Classical,
    Quantum,
}

/// Explicit loop fields; each one overrides the preset.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LoopOverrides {
    pub center_e: Option<f64>,
    pub center_j: Option<f64>,
    pub semi_e: Option<f64>,
    pub semi_j: Option<f64>,
    pub samples: Option<usize>,
    pub phase: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub quantum: QuantumConfig,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub seed: u64,
    pub weyl_samples: usize,
    pub curve_samples: usize,
    pub loop_preset: LoopPreset,
    pub loop_overrides: LoopOverrides,
    /// Transport on `χ⁻¹(σ(P_ε))` instead of the joint spectrum.
    pub spectral: bool,
    pub snap_fraction: f64,
    pub rounding_threshold: f64,
    pub winding_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = TransportOptions::default();
        Self {
            quantum: QuantumConfig::default(),
            threads: 0,
            seed: 1,
            weyl_samples: 200_000,
            curve_samples: 400,
            loop_preset: LoopPreset::Enclosing,
            loop_overrides: LoopOverrides::default(),
            spectral: false,
            snap_fraction: t.snap_fraction,
            rounding_threshold: t.rounding_threshold,
            winding_tol: MonodromyOptions::default().winding_tol,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, String>
where
    T::Err: Display,
{
    value.parse().map_err(|e| format!("{key} = {value}: {e}"))
}

fn parse_m_max(value: &str) -> std::result::Result<Option<u32>, String> {
    if value == "auto" {
        Ok(None)
    } else {
        parse("m_max", value).map(Some)
    }
}

impl RunConfig {
    #[cfg(test)]
    pub const KEYS: &'static [&'static str] = &[
        "h",
        "epsilon",
        "e_max",
        "grid_n",
        "radius",
        "m_max",
        "threads",
        "seed",
        "weyl_samples",
        "curve_samples",
        "loop",
        "loop_center_e",
        "loop_center_j",
        "loop_semi_e",
        "loop_semi_j",
        "loop_samples",
        "loop_phase",
        "spectral",
        "snap_fraction",
        "rounding_threshold",
        "winding_tol",
    ];

    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        let lo = &mut self.loop_overrides;
        match key {
            "h" => self.quantum.h = parse(key, value)?,
            "epsilon" => self.quantum.epsilon = parse(key, value)?,
            "e_max" => self.quantum.e_max = parse(key, value)?,
            "grid_n" => self.quantum.grid_n = parse(key, value)?,
            "radius" => self.quantum.radius = parse(key, value)?,
            "m_max" => self.quantum.m_max = parse_m_max(value)?,
            "threads" => self.threads = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "weyl_samples" => self.weyl_samples = parse(key, value)?,
            "curve_samples" => self.curve_samples = parse(key, value)?,
            "loop" => self.loop_preset = parse(key, value)?,
            "loop_center_e" => lo.center_e = Some(parse(key, value)?),
            "loop_center_j" => lo.center_j = Some(parse(key, value)?),
            "loop_semi_e" => lo.semi_e = Some(parse(key, value)?),
            "loop_semi_j" => lo.semi_j = Some(parse(key, value)?),
            "loop_samples" => lo.samples = Some(parse(key, value)?),
            "loop_phase" => lo.phase = Some(parse(key, value)?),
            "spectral" => self.spectral = parse(key, value)?,
            "snap_fraction" => self.snap_fraction = parse(key, value)?,
            "rounding_threshold" => self.rounding_threshold = parse(key, value)?,
            "winding_tol" => self.winding_tol = parse(key, value)?,
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }

    /// Applies every `key = value` line of `text` on top of `self`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let mut seen = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if seen.contains(&key) {
                return Err(CliError::Config(format!("line {}: duplicate key '{key}'", no + 1)));
            }
            seen.push(key);
            self.set(key, value)
                .map_err(|e| CliError::Config(format!("line {}: {e}", no + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.quantum.validate()?;
        if self.curve_samples < 2 {
            return Err(CliError::Config("curve_samples must be >= 2".into()));
        }
        if self.weyl_samples == 0 {
            return Err(CliError::Config("weyl_samples must be positive".into()));
        }
        for (key, v) in [
            ("snap_fraction", self.snap_fraction),
            ("rounding_threshold", self.rounding_threshold),
            ("winding_tol", self.winding_tol),
        ] {
            if !(v > 0.0 && v < 0.5) {
                return Err(CliError::Config(format!("{key} must lie in (0, 0.5), got {v}")));
            }
        }
        Ok(())
    }

    pub fn ellipse(&self, kind: LoopKind) -> EllipseLoop {
        let base = match (kind, self.loop_preset) {
            (LoopKind::Classical, LoopPreset::Enclosing) => EllipseLoop::default_enclosing(),
            (LoopKind::Quantum, LoopPreset::Enclosing) => EllipseLoop::default_quantum(),
            (_, LoopPreset::NonEnclosing) => EllipseLoop::default_non_enclosing(),
        };
        let o = &self.loop_overrides;
        EllipseLoop {
            center: EMValue::new(o.center_e.unwrap_or(base.center.e), o.center_j.unwrap_or(base.center.j)),
            semi_e: o.semi_e.unwrap_or(base.semi_e),
            semi_j: o.semi_j.unwrap_or(base.semi_j),
            samples: o.samples.unwrap_or(base.samples),
            phase: o.phase.unwrap_or(base.phase),
        }
    }

    pub fn transport_options(&self) -> TransportOptions {
        TransportOptions {
            snap_fraction: self.snap_fraction,
            rounding_threshold: self.rounding_threshold,
            ..TransportOptions::default()
        }
    }

    pub fn monodromy_options(&self) -> MonodromyOptions {
        MonodromyOptions {
            winding_tol: self.winding_tol,
            ..MonodromyOptions::default()
        }
    }

    /// Every resolved setting in `KEYS` order, loop fields as used by `kind`.
    pub fn echo(&self, kind: LoopKind) -> Vec<(&'static str, String)> {
        let q = &self.quantum;
        let lp = self.ellipse(kind);
        let num = |x: f64| format!("{x:?}");
        vec![
            ("h", num(q.h)),
            ("epsilon", num(q.epsilon)),
            ("e_max", num(q.e_max)),
            ("grid_n", q.grid_n.to_string()),
            ("radius", num(q.radius)),
            ("m_max", q.m_max.map_or("auto".into(), |m| m.to_string())),
            ("threads", self.threads.to_string()),
            ("seed", self.seed.to_string()),
            ("weyl_samples", self.weyl_samples.to_string()),
            ("curve_samples", self.curve_samples.to_string()),
            ("loop", self.loop_preset.to_string()),
            ("loop_center_e", num(lp.center.e)),
            ("loop_center_j", num(lp.center.j)),
            ("loop_semi_e", num(lp.semi_e)),
            ("loop_semi_j", num(lp.semi_j)),
            ("loop_samples", lp.samples.to_string()),
            ("loop_phase", num(lp.phase)),
            ("spectral", self.spectral.to_string()),
            ("snap_fraction", num(self.snap_fraction)),
            ("rounding_threshold", num(self.rounding_threshold)),
            ("winding_tol", num(self.winding_tol)),
        ]
    }
}
