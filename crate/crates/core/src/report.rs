//! Full simulation of a scenario: image, per-target values and pair conditions.

use serde::Serialize;

use crate::analysis::{
    check_conditions, phase_differences, phase_sum, target_values, ConditionReport,
    DEFAULT_PHASE_TOL,
};
use crate::error::Result;
use crate::forward::synthesize_data;
use crate::geometry::bistatic_path_length;
use crate::imaging::{render_magnitude, Raster, RenderSpec};
use crate::reconstruction::{reconstruct_image, ReflectivityImage};
use crate::scenario::Scenario;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TargetReport {
    pub x: f64,
    pub y: f64,
    pub path_length: f64,
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairReport {
    pub p: usize,
    pub q: usize,
    pub delta_l: f64,
    pub conditions: ConditionReport,
}

/// Contents of `targets.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub frequency_count: usize,
    pub speed_of_light: f64,
    pub targets: Vec<TargetReport>,
    pub pairs: Vec<PairReport>,
    pub phase_sum: f64,
}

impl SimulationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn simulation_report(scenario: &Scenario, tol: f64) -> Result<SimulationReport> {
    let values = target_values(scenario)?;
    let positions = scenario.target_positions();
    let targets = positions
        .iter()
        .zip(&values)
        .map(|(p, v)| {
            Ok(TargetReport {
                x: p.x,
                y: p.y,
                path_length: bistatic_path_length(&scenario.pair, p)?,
                re: v.re,
                im: v.im,
                magnitude: v.magnitude,
                phase: v.phase,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::new();
    for p in 0..positions.len() {
        for q in p + 1..positions.len() {
            let pd = phase_differences(
                &scenario.pair,
                &positions[p],
                &positions[q],
                scenario.wave_numbers(),
            )?;
            pairs.push(PairReport {
                p,
                q,
                delta_l: pd.delta_l,
                conditions: check_conditions(&pd, tol)?,
            });
        }
    }

    Ok(SimulationReport {
        frequency_count: scenario.frequency_count(),
        speed_of_light: scenario.speed_of_light,
        targets,
        pairs,
        phase_sum: phase_sum(&values)?,
    })
}

pub struct Simulation {
    pub image: ReflectivityImage,
    pub report: SimulationReport,
    pub raster: Raster,
}

/// Synthesizes data for the scene, reconstructs the full image, and renders
/// it with markers at the targets.
pub fn simulate(scenario: &Scenario) -> Result<Simulation> {
    scenario.require_targets()?;
    let wn = scenario.wave_numbers();
    let b = synthesize_data(&scenario.pair, &scenario.scene, wn)?;
    let image = reconstruct_image(&scenario.pair, &scenario.grid, wn, &b)?;
    let raster = render_magnitude(
        &image,
        &RenderSpec::with_markers(scenario.target_positions()),
    )?;
    let report = simulation_report(scenario, DEFAULT_PHASE_TOL)?;
    Ok(Simulation {
        image,
        report,
        raster,
    })
}
