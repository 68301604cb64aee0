//! Adjoint (matched-filter) reconstruction `x = A^H b`, over a grid or at
//! arbitrary points.
//!
//! All dot products accumulate in ascending frequency order so that a pixel
//! reconstructed through the materialized matrix, through the streaming image
//! path, or through [`reconstruct_at`] at its center is bit-for-bit the same.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::wrapped_phase;
use crate::error::{Error, Result};
use crate::forward::{steering_column, PixelGrid, SensingMatrix, WaveNumbers};
use crate::geometry::{bistatic_path_length, AntennaPair, Point2D};
use crate::par;

/// A reconstructed complex value in both Cartesian and polar form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconValue {
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    /// Wrapped to (-pi, pi]; zero for the zero value.
    pub phase: f64,
}

impl ReconValue {
    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<Complex64> for ReconValue {
    fn from(v: Complex64) -> Self {
        Self {
            re: v.re,
            im: v.im,
            magnitude: v.norm(),
            phase: wrapped_phase(v),
        }
    }
}

/// Reconstructed reflectivity over a pixel grid, values in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectivityImage {
    grid: PixelGrid,
    values: Vec<Complex64>,
}

impl ReflectivityImage {
    pub fn new(grid: PixelGrid, values: Vec<Complex64>) -> Result<Self> {
        grid.validate()?;
        if values.len() != grid.len() {
            return Err(Error::Shape {
                what: "image values",
                expected: grid.len(),
                actual: values.len(),
            });
        }
        if let Some(bad) = values
            .iter()
            .find(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::InvalidArgument(format!(
                "image value {bad} is not finite"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &PixelGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `sum_i conj(a_i) * b_i`, ascending `i`.
fn conj_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + a.conj() * b)
}

fn check_data_len(expected: usize, b: &[Complex64]) -> Result<()> {
    if b.len() != expected {
        return Err(Error::Shape {
            what: "data vector length",
            expected,
            actual: b.len(),
        });
    }
    Ok(())
}

/// `A^H b` using a materialized sensing matrix.
pub fn adjoint_reconstruct(a: &SensingMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    check_data_len(a.rows(), b)?;
    Ok(par::map_indices(a.cols(), |n| conj_dot(a.column(n), b)))
}

/// `A^H b` over `grid` without materializing `A`; each column is rebuilt on
/// the fly. Bitwise equal to [`adjoint_reconstruct`] on the same grid.
pub fn reconstruct_image(
    pair: &AntennaPair,
    grid: &PixelGrid,
    wn: &WaveNumbers,
    b: &[Complex64],
) -> Result<ReflectivityImage> {
    grid.validate()?;
    check_data_len(wn.len(), b)?;
    let values = par::map_indices(grid.len(), |n| {
        steering_column(pair, &grid.center(n), wn).map(|col| conj_dot(col.entries(), b))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    ReflectivityImage::new(*grid, values)
}

/// Reconstructed value at an arbitrary point.
pub fn reconstruct_at(
    pair: &AntennaPair,
    p: &Point2D,
    wn: &WaveNumbers,
    b: &[Complex64],
) -> Result<ReconValue> {
    check_data_len(wn.len(), b)?;
    let col = steering_column(pair, p, wn)?;
    Ok(conj_dot(col.entries(), b).into())
}

/// Reconstructed values at two unit targets from their phase differences
/// `phi_i = k_i (L_p - L_q)`:
///
/// `v_p = M + sum_i exp(j phi_i)`, `v_q = M + sum_i exp(-j phi_i)`.
pub fn two_target_values_from_phases(phi: &[f64]) -> (Complex64, Complex64) {
    let m = phi.len() as f64;
    let (mut cos_p, mut sin_p, mut cos_q, mut sin_q) = (0.0, 0.0, 0.0, 0.0);
    for &f in phi {
        let (s, c) = f.sin_cos();
        cos_p += c;
        sin_p += s;
        let (s, c) = (-f).sin_cos();
        cos_q += c;
        sin_q += s;
    }
    (
        Complex64::new(m + cos_p, sin_p),
        Complex64::new(m + cos_q, sin_q),
    )
}

/// Values reconstructed at `p` and `q` when both carry unit reflectivity,
/// evaluated in closed form from the path-length difference.
pub fn two_target_values(
    pair: &AntennaPair,
    p: &Point2D,
    q: &Point2D,
    wn: &WaveNumbers,
) -> Result<(ReconValue, ReconValue)> {
    let delta = bistatic_path_length(pair, p)? - bistatic_path_length(pair, q)?;
    let phi: Vec<f64> = wn.values().iter().map(|k| k * delta).collect();
    let (vp, vq) = two_target_values_from_phases(&phi);
    Ok((vp.into(), vq.into()))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::forward::{
        build_sensing_matrix, synthesize_data, wave_numbers, FrequencyGrid, Target, TargetScene,
        SPEED_OF_LIGHT,
    };

    fn pair() -> AntennaPair {
        AntennaPair::new(Point2D::new(-0.2, 0.1), Point2D::new(0.2, 0.1)).unwrap()
    }

    fn wn() -> WaveNumbers {
        wave_numbers(
            &FrequencyGrid::new(56.5e9, 0.25e9, 30).unwrap(),
            SPEED_OF_LIGHT,
        )
        .unwrap()
    }

    #[test]
    fn on_grid_target_reconstructs_to_m() {
        let grid = PixelGrid::new(-0.5, 0.5, 0.5, 1.0, 9, 6).unwrap();
        let a = build_sensing_matrix(&pair(), &grid, &wn()).unwrap();
        let p = 22;
        let x = adjoint_reconstruct(&a, a.column(p)).unwrap();
        assert!((x[p] - Complex64::new(30.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_data_gives_zero_image() {
        let grid = PixelGrid::new(-0.5, 0.5, 0.5, 1.0, 4, 3).unwrap();
        let zero = vec![Complex64::new(0.0, 0.0); 30];
        let img = reconstruct_image(&pair(), &grid, &wn(), &zero).unwrap();
        assert!(img.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn two_on_grid_targets_match_closed_form() {
        let grid = PixelGrid::new(-0.5, 0.5, 0.5, 1.0, 9, 6).unwrap();
        let wn = wn();
        let a = build_sensing_matrix(&pair(), &grid, &wn).unwrap();
        let (p, q) = (10, 41);
        let b: Vec<_> = a
            .column(p)
            .iter()
            .zip(a.column(q))
            .map(|(x, y)| x + y)
            .collect();
        let x = adjoint_reconstruct(&a, &b).unwrap();
        let lp = bistatic_path_length(&pair(), &grid.center(p)).unwrap();
        let lq = bistatic_path_length(&pair(), &grid.center(q)).unwrap();
        let expected = Complex64::new(30.0, 0.0)
            + wn.values()
                .iter()
                .map(|k| Complex64::from_polar(1.0, k * (lp - lq)))
                .sum::<Complex64>();
        assert!((x[p] - expected).norm() < 1e-10 * 30.0);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let grid = PixelGrid::new(-0.5, 0.5, 0.5, 1.0, 2, 2).unwrap();
        let a = build_sensing_matrix(&pair(), &grid, &wn()).unwrap();
        let err = adjoint_reconstruct(&a, &[Complex64::new(1.0, 0.0); 3]).unwrap_err();
        assert!(matches!(
            err,
            Error::Shape {
                expected: 30,
                actual: 3,
                ..
            }
        ));
        assert!(reconstruct_at(&pair(), &Point2D::new(0.0, 0.7), &wn(), &[]).is_err());
    }

    #[test]
    fn single_target_and_scaling() {
        let p = Point2D::new(0.1, 0.7);
        let wn = wn();
        let b = synthesize_data(&pair(), &TargetScene::new(vec![Target::unit(p)]), &wn).unwrap();
        let v = reconstruct_at(&pair(), &p, &wn, &b).unwrap();
        assert!((v.complex() - Complex64::new(30.0, 0.0)).norm() <= 1e-9 * 30.0);
        assert!(v.phase.abs() < 1e-12);
        let b2: Vec<_> = b.iter().map(|x| x * 2.0).collect();
        let v2 = reconstruct_at(&pair(), &p, &wn, &b2).unwrap();
        assert!((v2.complex() - Complex64::new(60.0, 0.0)).norm() <= 1e-9 * 60.0);
    }

    #[test]
    fn co_elliptic_pair_is_exactly_2m() {
        let (vp, vq) = two_target_values(
            &pair(),
            &Point2D::new(-0.25, 0.75),
            &Point2D::new(0.25, 0.75),
            &wn(),
        )
        .unwrap();
        assert_eq!(vp.complex(), Complex64::new(60.0, 0.0));
        assert_eq!(vq.complex(), Complex64::new(60.0, 0.0));
    }

    #[test]
    fn quarter_wave_cancellation() {
        // k = {2pi, 6pi}, dL = 0.25 => phi = {pi/2, 3pi/2}
        let (vp, vq) = two_target_values_from_phases(&[2.0 * PI * 0.25, 6.0 * PI * 0.25]);
        assert!((vp - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((vq - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn recon_value_polar_parts() {
        let v = ReconValue::from(Complex64::new(3.0, -4.0));
        assert_eq!(v.magnitude, 5.0);
        assert_eq!(v.phase, (-4.0f64).atan2(3.0));
        let z = ReconValue::from(Complex64::new(0.0, 0.0));
        assert_eq!((z.magnitude, z.phase), (0.0, 0.0));
    }
}
