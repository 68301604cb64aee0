//! Magnitude and phase laws for reconstructed point targets.
//!
//! With unit targets at `p` and `q` and `phi_i = k_i (L_p - L_q)`, the values
//! reconstructed at the two targets are
//!
//! ```text
//! v_p = M + sum_i cos(phi_i) + j sum_i sin(phi_i)
//! v_q = conj(v_p)
//! ```
//!
//! From this:
//!
//! 1. a lone unit target reconstructs to exactly `M` (phase 0);
//! 2. `v_q = conj(v_p)`: equal magnitudes, opposite phases;
//! 3. `|v_p| = 2M` iff every `phi_i` is a multiple of `2 pi` (condition 1);
//! 4. the phase is never `pi`, because `Re v_p = M + sum cos(phi_i) >= 0`;
//! 5. for `v_p != 0`, the phase is 0 iff `sum_i sin(phi_i) = 0` (condition 2).
//!
//! The `verify_theorem*` functions check each law numerically on a scenario.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forward::{synthesize_data, WaveNumbers};
use crate::geometry::{bistatic_path_length, AntennaPair, Point2D};
use crate::reconstruction::{reconstruct_at, two_target_values_from_phases, ReconValue};
use crate::scenario::Scenario;

/// Default phase tolerance, radians.
pub const DEFAULT_PHASE_TOL: f64 = 1e-6;
/// Magnitudes at or below this multiple of `M` count as the excluded `C = 0` case.
pub const DEFAULT_DEGENERACY_RATIO: f64 = 1e-9;

const THEOREM1_TOL: f64 = 1e-9;
const CONJUGACY_TOL: f64 = 1e-10;
const REAL_PART_TOL: f64 = 1e-10;

/// Argument of `v` in (-pi, pi]. The zero value has phase 0.
pub fn wrapped_phase(v: Complex64) -> f64 {
    if v.re == 0.0 && v.im == 0.0 {
        return 0.0;
    }
    let theta = v.im.atan2(v.re);
    if theta == -PI {
        PI
    } else {
        theta
    }
}

/// `phi_i = k_i (L_p - L_q)`, not reduced modulo `2 pi`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseDifferences {
    pub phi: Vec<f64>,
    pub delta_l: f64,
}

impl PhaseDifferences {
    pub fn from_path_difference(wn: &WaveNumbers, delta_l: f64) -> Self {
        Self {
            phi: wn.values().iter().map(|k| k * delta_l).collect(),
            delta_l,
        }
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

pub fn phase_differences(
    pair: &AntennaPair,
    p: &Point2D,
    q: &Point2D,
    wn: &WaveNumbers,
) -> Result<PhaseDifferences> {
    let delta_l = bistatic_path_length(pair, p)? - bistatic_path_length(pair, q)?;
    Ok(PhaseDifferences::from_path_difference(wn, delta_l))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    /// Every `phi_i` within tolerance of a multiple of `2 pi`.
    pub condition1: bool,
    /// `|sum_i sin(phi_i)| <= tol * M`.
    pub condition2: bool,
    pub sin_sum: f64,
    pub cos_sum: f64,
    /// Largest `|phi_i mod 2 pi|`, residuals taken in [-pi, pi).
    pub max_mod_2pi_residual: f64,
}

fn mod_2pi_residual(phi: f64) -> f64 {
    (phi + PI).rem_euclid(2.0 * PI) - PI
}

pub fn check_conditions(pd: &PhaseDifferences, tol: f64) -> Result<ConditionReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "condition tolerance must be positive, got {tol}"
        )));
    }
    let mut sin_sum = 0.0;
    let mut cos_sum = 0.0;
    let mut max_residual: f64 = 0.0;
    for &phi in &pd.phi {
        let (s, c) = phi.sin_cos();
        sin_sum += s;
        cos_sum += c;
        max_residual = max_residual.max(mod_2pi_residual(phi).abs());
    }
    let m = pd.len() as f64;
    Ok(ConditionReport {
        condition1: max_residual <= tol,
        condition2: sin_sum.abs() <= tol * m,
        sin_sum,
        cos_sum,
        max_mod_2pi_residual: max_residual,
    })
}

/// Tolerances for the theorem verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Radians for phase and condition checks; also the relative magnitude slack for theorem 3.
    pub phase: f64,
    /// `C <= degeneracy * M` is reported as degenerate.
    pub degeneracy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            phase: DEFAULT_PHASE_TOL,
            degeneracy: DEFAULT_DEGENERACY_RATIO,
        }
    }
}

impl Tolerances {
    pub fn with_phase(phase: f64) -> Self {
        Self {
            phase,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem_id: u8,
    pub passed: bool,
    pub degenerate: bool,
    pub observed: Vec<ReconValue>,
    pub expected: String,
    /// The quantity compared against the theorem's threshold.
    pub residual: f64,
}

impl TheoremVerdict {
    pub fn status(&self) -> &'static str {
        match (self.degenerate, self.passed) {
            (true, _) => "degenerate",
            (false, true) => "pass",
            (false, false) => "FAIL",
        }
    }
}

fn unit_targets(scenario: &Scenario, count: usize) -> Result<Vec<Point2D>> {
    let targets = &scenario.scene.targets;
    if targets.len() != count {
        return Err(Error::InvalidScenario(format!(
            "expected exactly {count} target(s), found {}",
            targets.len()
        )));
    }
    if let Some(t) = targets
        .iter()
        .find(|t| t.reflectivity != Complex64::new(1.0, 0.0))
    {
        return Err(Error::InvalidScenario(format!(
            "target at ({}, {}) has reflectivity {}, expected 1",
            t.position.x, t.position.y, t.reflectivity
        )));
    }
    Ok(targets.iter().map(|t| t.position).collect())
}

struct PairValues {
    vp: Complex64,
    vq: Complex64,
    pd: PhaseDifferences,
    m: f64,
}

fn pair_values(scenario: &Scenario) -> Result<PairValues> {
    let pts = unit_targets(scenario, 2)?;
    let pd = phase_differences(&scenario.pair, &pts[0], &pts[1], scenario.wave_numbers())?;
    let (vp, vq) = two_target_values_from_phases(&pd.phi);
    Ok(PairValues {
        vp,
        vq,
        m: pd.len() as f64,
        pd,
    })
}

/// A single unit target reconstructs to `M + 0j`.
pub fn verify_theorem1(scenario: &Scenario) -> Result<TheoremVerdict> {
    let pts = unit_targets(scenario, 1)?;
    let wn = scenario.wave_numbers();
    let b = synthesize_data(&scenario.pair, &scenario.scene, wn)?;
    let v = reconstruct_at(&scenario.pair, &pts[0], wn, &b)?;
    let m = wn.len() as f64;
    let err = (v.complex() - Complex64::new(m, 0.0)).norm();
    Ok(TheoremVerdict {
        theorem_id: 1,
        passed: err <= THEOREM1_TOL * m,
        degenerate: false,
        observed: vec![v],
        expected: format!("{m} + 0j (magnitude M, phase 0)"),
        residual: err,
    })
}

/// The two reconstructed values are complex conjugates.
pub fn verify_theorem2(scenario: &Scenario) -> Result<TheoremVerdict> {
    let PairValues { vp, vq, m, .. } = pair_values(scenario)?;
    let err = (vp - vq.conj()).norm();
    Ok(TheoremVerdict {
        theorem_id: 2,
        passed: err <= CONJUGACY_TOL * m,
        degenerate: false,
        observed: vec![vp.into(), vq.into()],
        expected: "v_q = conj(v_p): same magnitude, opposite phase".into(),
        residual: err,
    })
}

/// `|v_p|` reaches `2M` exactly when condition 1 holds.
pub fn verify_theorem3(scenario: &Scenario, tol: &Tolerances) -> Result<TheoremVerdict> {
    let PairValues { vp, vq, pd, m } = pair_values(scenario)?;
    let report = check_conditions(&pd, tol.phase)?;
    let at_max = vp.norm() >= 2.0 * m - tol.phase * m;
    Ok(TheoremVerdict {
        theorem_id: 3,
        passed: at_max == report.condition1,
        degenerate: false,
        observed: vec![vp.into(), vq.into()],
        expected: format!(
            "|v| = 2M iff condition 1 (condition 1 {}, magnitude {})",
            if report.condition1 { "holds" } else { "fails" },
            if at_max { "maximal" } else { "below 2M" }
        ),
        residual: 2.0 * m - vp.norm(),
    })
}

/// The phase of `v_p` is never `pi`: `Re v_p >= 0`.
pub fn verify_theorem4(scenario: &Scenario, tol: &Tolerances) -> Result<TheoremVerdict> {
    let PairValues { vp, vq, m, .. } = pair_values(scenario)?;
    let degenerate = vp.norm() <= tol.degeneracy * m;
    Ok(TheoremVerdict {
        theorem_id: 4,
        passed: !degenerate && vp.re >= -REAL_PART_TOL * m,
        degenerate,
        observed: vec![vp.into(), vq.into()],
        expected: "Re(v_p) >= 0, so the phase is never pi".into(),
        residual: PI - wrapped_phase(vp).abs(),
    })
}

/// For `C > 0`, the phase is 0 exactly when condition 2 holds.
pub fn verify_theorem5(scenario: &Scenario, tol: &Tolerances) -> Result<TheoremVerdict> {
    let PairValues { vp, vq, pd, m } = pair_values(scenario)?;
    let report = check_conditions(&pd, tol.phase)?;
    let degenerate = vp.norm() <= tol.degeneracy * m;
    let theta = wrapped_phase(vp);
    let zero_phase = theta.abs() <= tol.phase;
    Ok(TheoremVerdict {
        theorem_id: 5,
        passed: !degenerate && zero_phase == report.condition2,
        degenerate,
        observed: vec![vp.into(), vq.into()],
        expected: format!(
            "phase = 0 iff condition 2 (condition 2 {}, phase {})",
            if report.condition2 { "holds" } else { "fails" },
            if zero_phase { "zero" } else { "nonzero" }
        ),
        residual: theta.abs(),
    })
}

/// Sum of the wrapped phases, not re-wrapped.
pub fn phase_sum(values: &[ReconValue]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("phase sum of an empty list".into()));
    }
    Ok(values.iter().map(|v| wrapped_phase(v.complex())).sum())
}

/// Values reconstructed at every target's exact position, data synthesized
/// from the whole scene.
pub fn target_values(scenario: &Scenario) -> Result<Vec<ReconValue>> {
    scenario.require_targets()?;
    let wn = scenario.wave_numbers();
    let b = synthesize_data(&scenario.pair, &scenario.scene, wn)?;
    scenario
        .scene
        .positions()
        .map(|p| reconstruct_at(&scenario.pair, &p, wn, &b))
        .collect()
}

/// Every check that applies to a scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub frequency_count: usize,
    pub verdicts: Vec<TheoremVerdict>,
    pub target_values: Vec<ReconValue>,
    pub phase_sum: f64,
}

impl VerificationReport {
    /// No verdict failed. Degenerate verdicts are not failures.
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed || v.degenerate)
    }
}

/// One target: theorem 1. Two targets: theorems 2-5. Three or more: only
/// the phase sum is reported.
pub fn verify_scenario(scenario: &Scenario, tol: &Tolerances) -> Result<VerificationReport> {
    let target_values = target_values(scenario)?;
    let verdicts = match scenario.scene.len() {
        1 => vec![verify_theorem1(scenario)?],
        2 => vec![
            verify_theorem2(scenario)?,
            verify_theorem3(scenario, tol)?,
            verify_theorem4(scenario, tol)?,
            verify_theorem5(scenario, tol)?,
        ],
        _ => Vec::new(),
    };
    Ok(VerificationReport {
        frequency_count: scenario.frequency_count(),
        phase_sum: phase_sum(&target_values)?,
        verdicts,
        target_values,
    })
}
