//! Browser bindings for the point-target simulator.
//!
//! Three operations are exported to the page:
//!
//! - `simulateScene`: reconstruct a scenario and return an RGBA magnitude map
//!   plus the per-target report
//! - `verifyScenario`: run the applicable theorem checks
//! - `sweepFrequencies`: follow the two reconstructed values of a target pair
//!   as the number of frequencies grows
//!
//! The plain-Rust functions behind them are public so they can be tested
//! natively.

use bisar::analysis::{
    check_conditions, phase_differences, verify_scenario, Tolerances, DEFAULT_PHASE_TOL,
};
use bisar::reconstruction::two_target_values;
use bisar::report::simulate;
use bisar::{preset, FrequencyGrid, Scenario, ScenarioConfig, PRESET_NAMES};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn load(config_json: &str) -> Result<Scenario, String> {
    let scenario = ScenarioConfig::from_json(config_json)
        .and_then(|cfg| cfg.build())
        .map_err(|e| e.to_string())?;
    scenario.require_targets().map_err(|e| e.to_string())?;
    Ok(scenario)
}

/// Rendered magnitude map (RGBA, row 0 at the top) and its report.
#[wasm_bindgen]
pub struct SceneView {
    width: usize,
    height: usize,
    rgba: Vec<u8>,
    report: String,
}

#[wasm_bindgen]
impl SceneView {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.width
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> usize {
        self.height
    }

    #[wasm_bindgen(getter)]
    pub fn rgba(&self) -> Vec<u8> {
        self.rgba.clone()
    }

    /// The `targets.json` report.
    #[wasm_bindgen(getter)]
    pub fn report(&self) -> String {
        self.report.clone()
    }
}

pub fn scene_view(config_json: &str) -> Result<SceneView, String> {
    let scenario = load(config_json)?;
    let sim = simulate(&scenario).map_err(|e| e.to_string())?;
    let rgba = sim
        .raster
        .rgb
        .chunks_exact(3)
        .flat_map(|px| [px[0], px[1], px[2], 255])
        .collect();
    Ok(SceneView {
        width: sim.raster.width,
        height: sim.raster.height,
        rgba,
        report: sim.report.to_json(),
    })
}

pub fn verification_json(config_json: &str, tol: f64) -> Result<String, String> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(format!("tolerance must be positive, got {tol}"));
    }
    let scenario = load(config_json)?;
    let report =
        verify_scenario(&scenario, &Tolerances::with_phase(tol)).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
pub struct SweepPoint {
    pub m: usize,
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    /// `|v| / 2M`.
    pub relative_magnitude: f64,
    pub phase: f64,
    pub condition1: bool,
    pub condition2: bool,
}

/// Values at the first target of a two-target scenario for `M = 1..=max_m`,
/// keeping the scenario's start frequency and step.
pub fn frequency_sweep(config_json: &str, max_m: usize) -> Result<Vec<SweepPoint>, String> {
    let scenario = load(config_json)?;
    let pts = scenario.target_positions();
    if pts.len() != 2 {
        return Err(format!(
            "the sweep needs exactly two targets, found {}",
            pts.len()
        ));
    }
    if max_m == 0 {
        return Err("max_m must be at least 1".into());
    }
    let fg = scenario.frequencies;
    (1..=max_m)
        .map(|m| {
            let grid = FrequencyGrid::new(fg.start(), fg.step(), m).map_err(|e| e.to_string())?;
            let wn = bisar::forward::wave_numbers(&grid, scenario.speed_of_light)
                .map_err(|e| e.to_string())?;
            let (vp, _) = two_target_values(&scenario.pair, &pts[0], &pts[1], &wn)
                .map_err(|e| e.to_string())?;
            let pd = phase_differences(&scenario.pair, &pts[0], &pts[1], &wn)
                .map_err(|e| e.to_string())?;
            let cond = check_conditions(&pd, DEFAULT_PHASE_TOL).map_err(|e| e.to_string())?;
            Ok(SweepPoint {
                m,
                re: vp.re,
                im: vp.im,
                magnitude: vp.magnitude,
                relative_magnitude: vp.magnitude / (2.0 * m as f64),
                phase: vp.phase,
                condition1: cond.condition1,
                condition2: cond.condition2,
            })
        })
        .collect()
}

#[wasm_bindgen(js_name = presetNames)]
pub fn preset_names() -> Vec<String> {
    PRESET_NAMES.iter().map(|s| s.to_string()).collect()
}

#[wasm_bindgen(js_name = presetConfig)]
pub fn preset_config(name: &str) -> Option<String> {
    preset(name).map(|cfg| cfg.to_json())
}

#[wasm_bindgen(js_name = simulateScene)]
pub fn simulate_scene(config_json: &str) -> Result<SceneView, JsError> {
    scene_view(config_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = verifyScenario)]
pub fn verify_scenario_js(config_json: &str, tol: f64) -> Result<String, JsError> {
    verification_json(config_json, tol).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sweepFrequencies)]
pub fn sweep_frequencies(config_json: &str, max_m: usize) -> Result<String, JsError> {
    frequency_sweep(config_json, max_m)
        .and_then(|pts| serde_json::to_string(&pts).map_err(|e| e.to_string()))
        .map_err(|e| JsError::new(&e))
}
