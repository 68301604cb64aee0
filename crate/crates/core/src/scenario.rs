//! Scenario documents and the bundled presets.
//!
//! A scenario is a JSON object:
//!
//! ```json
//! {
//!   "transmitter": {"x": -0.2, "y": 0.1},
//!   "receiver": {"x": 0.2, "y": 0.1},
//!   "frequencies": {"start": 56.5e9, "step": 0.25e9, "count": 30},
//!   "grid": {"x_min": -0.5, "x_max": 0.5, "y_min": 0.5, "y_max": 1.0, "nx": 201, "ny": 101},
//!   "targets": [{"position": {"x": 0.1, "y": 0.7}}],
//!   "speed_of_light": 299792458
//! }
//! ```
//!
//! `frequencies` takes either `step` or `stop` (inclusive end point), not
//! both. Target `reflectivity` is `{"re": .., "im": ..}` and defaults to 1.
//! Unknown fields are rejected.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::{
    wave_numbers, FrequencyGrid, PixelGrid, Target, TargetScene, WaveNumbers, SPEED_OF_LIGHT,
};
use crate::geometry::{AntennaPair, Point2D};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyConfig {
    pub start: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexConfig {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub position: Point2D,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reflectivity: Option<ComplexConfig>,
}

/// The on-disk scenario document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub transmitter: Point2D,
    pub receiver: Point2D,
    pub frequencies: FrequencyConfig,
    pub grid: PixelGrid,
    pub targets: Vec<TargetConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed_of_light: Option<f64>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            // serde_json appends " at line L column C"; the error carries those separately
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
            Error::Parse {
                line: Some(e.line()),
                column: Some(e.column()),
                message,
            }
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario config serializes");
        s.push('\n');
        s
    }

    /// Checks every field and builds the runtime scenario. Errors name the
    /// offending field.
    pub fn build(&self) -> Result<Scenario> {
        let field = |name: &str, e: Error| Error::parse(format!("field `{name}`: {e}"));

        let pair = AntennaPair::new(self.transmitter, self.receiver)
            .map_err(|e| field("transmitter/receiver", e))?;
        let f = &self.frequencies;
        let frequencies = match (f.step, f.stop) {
            (Some(step), None) => FrequencyGrid::new(f.start, step, f.count),
            (None, Some(stop)) => FrequencyGrid::spanning(f.start, stop, f.count),
            (Some(_), Some(_)) => Err(Error::InvalidArgument(
                "give either `step` or `stop`, not both".into(),
            )),
            (None, None) => Err(Error::InvalidArgument(
                "one of `step` or `stop` is required".into(),
            )),
        }
        .map_err(|e| field("frequencies", e))?;
        self.grid.validate().map_err(|e| field("grid", e))?;

        let mut targets = Vec::with_capacity(self.targets.len());
        for (i, t) in self.targets.iter().enumerate() {
            if !t.position.is_finite() {
                return Err(Error::parse(format!(
                    "field `targets[{i}].position`: coordinates must be finite"
                )));
            }
            let r = t
                .reflectivity
                .map_or(Complex64::new(1.0, 0.0), |r| Complex64::new(r.re, r.im));
            if !(r.re.is_finite() && r.im.is_finite()) {
                return Err(Error::parse(format!(
                    "field `targets[{i}].reflectivity`: must be finite"
                )));
            }
            targets.push(Target {
                position: t.position,
                reflectivity: r,
            });
        }

        let speed_of_light = self.speed_of_light.unwrap_or(SPEED_OF_LIGHT);
        let wave_numbers =
            wave_numbers(&frequencies, speed_of_light).map_err(|e| field("speed_of_light", e))?;

        Ok(Scenario {
            pair,
            frequencies,
            grid: self.grid,
            scene: TargetScene::new(targets),
            speed_of_light,
            wave_numbers,
        })
    }
}

/// A validated scenario with its wave numbers precomputed.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub pair: AntennaPair,
    pub frequencies: FrequencyGrid,
    pub grid: PixelGrid,
    pub scene: TargetScene,
    pub speed_of_light: f64,
    wave_numbers: WaveNumbers,
}

impl Scenario {
    pub fn new(
        pair: AntennaPair,
        frequencies: FrequencyGrid,
        grid: PixelGrid,
        scene: TargetScene,
        speed_of_light: f64,
    ) -> Result<Self> {
        grid.validate()?;
        let wave_numbers = wave_numbers(&frequencies, speed_of_light)?;
        Ok(Self {
            pair,
            frequencies,
            grid,
            scene,
            speed_of_light,
            wave_numbers,
        })
    }

    pub fn wave_numbers(&self) -> &WaveNumbers {
        &self.wave_numbers
    }

    /// `M`.
    pub fn frequency_count(&self) -> usize {
        self.wave_numbers.len()
    }

    pub fn target_positions(&self) -> Vec<Point2D> {
        self.scene.positions().collect()
    }

    pub fn require_targets(&self) -> Result<()> {
        if self.scene.is_empty() {
            return Err(Error::InvalidScenario("scenario has no targets".into()));
        }
        Ok(())
    }
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: &[&str] = &[
    "example1",
    "example2",
    "example3",
    "example4",
    "example2-span",
    "example4-span",
];

fn target(x: f64, y: f64) -> TargetConfig {
    TargetConfig {
        position: Point2D::new(x, y),
        reflectivity: None,
    }
}

/// Built-in scenarios. `example1`..`example4` use 30 frequencies from 56.5 GHz
/// in 0.25 GHz steps and the exact speed of light. The `-span` variants spread
/// 30 frequencies over 56.5..=64 GHz and use c = 3e8 m/s.
pub fn preset(name: &str) -> Option<ScenarioConfig> {
    let (base, span) = match name.strip_suffix("-span") {
        Some(base) => (base, true),
        None => (name, false),
    };
    let targets = match base {
        "example1" => vec![target(0.1, 0.7)],
        "example2" => vec![target(-0.1, 0.6), target(0.3, 0.8)],
        "example3" => vec![target(-0.25, 0.75), target(0.25, 0.75)],
        "example4" => vec![target(-0.35, 0.9), target(-0.25, 0.9), target(0.25, 0.9)],
        _ => return None,
    };
    if span && !matches!(base, "example2" | "example4") {
        return None;
    }
    let (frequencies, speed_of_light) = if span {
        (
            FrequencyConfig {
                start: 56.5e9,
                step: None,
                stop: Some(64e9),
                count: 30,
            },
            Some(3e8),
        )
    } else {
        (
            FrequencyConfig {
                start: 56.5e9,
                step: Some(0.25e9),
                stop: None,
                count: 30,
            },
            Some(SPEED_OF_LIGHT),
        )
    };
    Some(ScenarioConfig {
        transmitter: Point2D::new(-0.2, 0.1),
        receiver: Point2D::new(0.2, 0.1),
        frequencies,
        grid: PixelGrid {
            x_min: -0.5,
            x_max: 0.5,
            y_min: 0.5,
            y_max: 1.0,
            nx: 201,
            ny: 101,
        },
        targets,
        speed_of_light,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_build() {
        for name in PRESET_NAMES {
            let s = preset(name).unwrap().build().unwrap();
            assert_eq!(s.frequency_count(), 30, "{name}");
        }
        assert!(preset("example1-span").is_none());
        assert!(preset("nope").is_none());
    }

    #[test]
    fn json_round_trip() {
        let cfg = preset("example4").unwrap();
        assert_eq!(ScenarioConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn unknown_field_reports_position() {
        let text =
            "{\n  \"transmitter\": {\"x\": 0, \"y\": 0},\n  \"reciever\": {\"x\": 1, \"y\": 0}\n}";
        match ScenarioConfig::from_json(text) {
            Err(Error::Parse {
                line: Some(3),
                message,
                ..
            }) => assert!(message.contains("reciever")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn semantic_errors_name_the_field() {
        let mut cfg = preset("example1").unwrap();
        cfg.frequencies.stop = Some(70e9);
        let err = cfg.build().unwrap_err().to_string();
        assert!(err.contains("frequencies"), "{err}");

        let mut cfg = preset("example1").unwrap();
        cfg.grid.nx = 0;
        assert!(cfg.build().unwrap_err().to_string().contains("grid"));

        let mut cfg = preset("example1").unwrap();
        cfg.speed_of_light = Some(-1.0);
        assert!(cfg
            .build()
            .unwrap_err()
            .to_string()
            .contains("speed_of_light"));
    }

    #[test]
    fn reflectivity_defaults_to_one() {
        let s = preset("example1").unwrap().build().unwrap();
        assert_eq!(s.scene.targets[0].reflectivity, Complex64::new(1.0, 0.0));
    }
}
