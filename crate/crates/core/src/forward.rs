//! Stepped-frequency forward model.
//!
//! A unit scatterer at `p` contributes `exp(-j k_i L(p))` at frequency `i`,
//! where `L(p)` is the bistatic path length. Stacking those responses over
//! the pixel grid gives the `M x N` sensing matrix `A`, and synthetic data
//! for a scene is generated with the very same model (`b = A x`).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{bistatic_path_length, AntennaPair, Point2D};
use crate::par;

/// Exact SI speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// `count` frequencies `start + i * step`, Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    start: f64,
    step: f64,
    count: usize,
}

impl FrequencyGrid {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !(start.is_finite() && start > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "start frequency must be positive and finite, got {start}"
            )));
        }
        if !(step.is_finite() && step >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "frequency step must be non-negative and finite, got {step}"
            )));
        }
        if count == 0 {
            return Err(Error::InvalidArgument(
                "frequency count must be at least 1".into(),
            ));
        }
        let last = start + (count - 1) as f64 * step;
        if !last.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "last frequency {last} is not finite"
            )));
        }
        Ok(Self { start, step, count })
    }

    /// `count` frequencies evenly spaced from `start` to `stop`, both included.
    pub fn spanning(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count == 1 {
            return Self::new(start, 0.0, 1);
        }
        if !(stop >= start) {
            return Err(Error::InvalidArgument(format!(
                "stop frequency {stop} is below start {start}"
            )));
        }
        let step = (stop - start) / (count.saturating_sub(1)) as f64;
        Self::new(start, step, count)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn frequency(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.frequency(i))
    }
}

/// Wave numbers `k_i = 2 pi f_i / c` in rad/m, ascending frequency order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveNumbers {
    k: Vec<f64>,
    c: f64,
}

impl WaveNumbers {
    /// Wave numbers given directly, bypassing the frequency conversion.
    /// Useful for constructing exact phase patterns.
    pub fn from_values(k: Vec<f64>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one wave number is required".into(),
            ));
        }
        if let Some(bad) = k.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "wave numbers must be positive and finite, got {bad}"
            )));
        }
        Ok(Self { k, c: f64::NAN })
    }

    pub fn values(&self) -> &[f64] {
        &self.k
    }

    /// Number of frequencies, `M`.
    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// Propagation speed used for the conversion; NaN when built from raw values.
    pub fn speed(&self) -> f64 {
        self.c
    }
}

pub fn wave_numbers(fg: &FrequencyGrid, c: f64) -> Result<WaveNumbers> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "propagation speed must be positive and finite, got {c}"
        )));
    }
    let k = fg.frequencies().map(|f| 2.0 * PI * f / c).collect();
    Ok(WaveNumbers { k, c })
}

/// Rectangular imaging area split into `nx * ny` cells. Pixel `n = j * nx + i`
/// (x varies fastest) sits at the center of its cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PixelGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl PixelGrid {
    pub fn new(
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        nx: usize,
        ny: usize,
    ) -> Result<Self> {
        let grid = Self {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidGeometry("grid bounds must be finite".into()));
        }
        if !(self.x_min < self.x_max) {
            return Err(Error::InvalidGeometry(format!(
                "grid x_min {} must be below x_max {}",
                self.x_min, self.x_max
            )));
        }
        if !(self.y_min < self.y_max) {
            return Err(Error::InvalidGeometry(format!(
                "grid y_min {} must be below y_max {}",
                self.y_min, self.y_max
            )));
        }
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::InvalidArgument(format!(
                "grid must have at least one pixel, got {} x {}",
                self.nx, self.ny
            )));
        }
        if self.nx.checked_mul(self.ny).is_none() {
            return Err(Error::Resource {
                rows: self.ny,
                cols: self.nx,
            });
        }
        Ok(())
    }

    /// Total pixel count `N`.
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.ny as f64
    }

    pub fn center_x(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }

    pub fn center_y(&self, j: usize) -> f64 {
        self.y_min + (j as f64 + 0.5) * self.dy()
    }

    /// Center of pixel `n`.
    pub fn center(&self, n: usize) -> Point2D {
        Point2D::new(self.center_x(n % self.nx), self.center_y(n / self.nx))
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn contains(&self, p: &Point2D) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    /// Cell coordinates `(i, j)` of the pixel whose center is nearest to `p`.
    /// Points outside the grid map to indices beyond `[0, nx) x [0, ny)`.
    pub fn nearest_cell(&self, p: &Point2D) -> (i64, i64) {
        let i = ((p.x - self.x_min) / self.dx()).floor() as i64;
        let j = ((p.y - self.y_min) / self.dy()).floor() as i64;
        // the far edges belong to the last cell
        let i = if p.x == self.x_max {
            self.nx as i64 - 1
        } else {
            i
        };
        let j = if p.y == self.y_max {
            self.ny as i64 - 1
        } else {
            j
        };
        (i, j)
    }
}

/// One column of the sensing matrix: entry `i` is `exp(-j k_i L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringColumn(Vec<Complex64>);

impl SteeringColumn {
    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.0
    }
}

fn steering_entries(k: &[f64], path_length: f64) -> impl Iterator<Item = Complex64> + '_ {
    k.iter()
        .map(move |&ki| Complex64::from_polar(1.0, -ki * path_length))
}

pub fn steering_column(
    pair: &AntennaPair,
    p: &Point2D,
    wn: &WaveNumbers,
) -> Result<SteeringColumn> {
    let l = bistatic_path_length(pair, p)?;
    Ok(SteeringColumn(steering_entries(wn.values(), l).collect()))
}

/// Dense `M x N` sensing matrix, stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl SensingMatrix {
    /// Wraps column-major entries. Used for hand-built matrices in tests.
    pub fn from_columns(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        let expected = rows
            .checked_mul(cols)
            .ok_or(Error::Resource { rows, cols })?;
        if entries.len() != expected {
            return Err(Error::Shape {
                what: "sensing matrix entries",
                expected,
                actual: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// `M`, the number of frequencies.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `N`, the number of pixels.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[col * self.rows + row]
    }

    pub fn column(&self, n: usize) -> &[Complex64] {
        &self.entries[n * self.rows..(n + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks_exact(self.rows)
    }
}

pub fn build_sensing_matrix(
    pair: &AntennaPair,
    grid: &PixelGrid,
    wn: &WaveNumbers,
) -> Result<SensingMatrix> {
    grid.validate()?;
    let rows = wn.len();
    let cols = grid.len();
    let total = rows
        .checked_mul(cols)
        .ok_or(Error::Resource { rows, cols })?;
    let mut entries: Vec<Complex64> = Vec::new();
    entries
        .try_reserve_exact(total)
        .map_err(|_| Error::Resource { rows, cols })?;

    let lengths = par::map_indices(cols, |n| bistatic_path_length(pair, &grid.center(n)));
    for l in lengths {
        entries.extend(steering_entries(wn.values(), l?));
    }
    Ok(SensingMatrix {
        rows,
        cols,
        entries,
    })
}

/// A point scatterer with complex reflectivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    pub position: Point2D,
    pub reflectivity: Complex64,
}

impl Target {
    /// Unit-reflectivity scatterer.
    pub fn unit(position: Point2D) -> Self {
        Self {
            position,
            reflectivity: Complex64::new(1.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TargetScene {
    pub targets: Vec<Target>,
}

impl TargetScene {
    pub fn new(targets: Vec<Target>) -> Self {
        Self { targets }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = Point2D> + '_ {
        self.targets.iter().map(|t| t.position)
    }
}

/// Received data for a scene, generated with the same model used for
/// reconstruction: `b = sum_t r_t * steering_column(t)`, targets in scene order.
pub fn synthesize_data(
    pair: &AntennaPair,
    scene: &TargetScene,
    wn: &WaveNumbers,
) -> Result<Vec<Complex64>> {
    if scene.is_empty() {
        return Err(Error::InvalidScene("scene has no targets".into()));
    }
    let mut b = vec![Complex64::new(0.0, 0.0); wn.len()];
    for target in &scene.targets {
        let r = target.reflectivity;
        if !(r.re.is_finite() && r.im.is_finite()) {
            return Err(Error::InvalidScene(format!(
                "reflectivity {r} is not finite"
            )));
        }
        let col = steering_column(pair, &target.position, wn)?;
        for (acc, a) in b.iter_mut().zip(col.entries()) {
            *acc += r * a;
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_pair() -> AntennaPair {
        AntennaPair::new(Point2D::new(-0.2, 0.1), Point2D::new(0.2, 0.1)).unwrap()
    }

    fn paper_wave_numbers() -> WaveNumbers {
        wave_numbers(
            &FrequencyGrid::new(56.5e9, 0.25e9, 30).unwrap(),
            SPEED_OF_LIGHT,
        )
        .unwrap()
    }

    #[test]
    fn unit_conversion() {
        let c = SPEED_OF_LIGHT;
        let fg = FrequencyGrid::new(c / (2.0 * PI), 0.0, 1).unwrap();
        let k = wave_numbers(&fg, c).unwrap();
        assert!((k.values()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn default_grid_wave_numbers() {
        let k = paper_wave_numbers();
        assert_eq!(k.len(), 30);
        // 2*pi*56.5e9/299792458, evaluated independently
        assert!(
            (k.values()[0] - 1184.1524374027001).abs() < 1e-9,
            "{}",
            k.values()[0]
        );
        assert!(k.values().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn invalid_frequency_inputs() {
        assert!(FrequencyGrid::new(0.0, 1.0, 3).is_err());
        assert!(FrequencyGrid::new(1.0, -1.0, 3).is_err());
        assert!(FrequencyGrid::new(1.0, 1.0, 0).is_err());
        let fg = FrequencyGrid::new(1.0, 1.0, 3).unwrap();
        assert!(matches!(
            wave_numbers(&fg, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            wave_numbers(&fg, -3.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn spanning_includes_both_ends() {
        let fg = FrequencyGrid::spanning(56.5e9, 64e9, 30).unwrap();
        assert_eq!(fg.count(), 30);
        assert!((fg.frequency(29) - 64e9).abs() < 1.0);
        assert!(FrequencyGrid::spanning(2.0, 1.0, 3).is_err());
    }

    #[test]
    fn steering_trivial_phases() {
        let o = Point2D::new(0.0, 0.0);
        let mono = AntennaPair::new(o, o).unwrap();
        let wn = paper_wave_numbers();
        let col = steering_column(&mono, &o, &wn).unwrap();
        assert!(col.entries().iter().all(|e| *e == Complex64::new(1.0, 0.0)));

        // L = 1 m: tx at origin, rx at origin, scatterer 0.5 m away
        let p = Point2D::new(0.5, 0.0);
        let full = steering_column(
            &mono,
            &p,
            &WaveNumbers::from_values(vec![2.0 * PI]).unwrap(),
        )
        .unwrap();
        assert!((full.entries()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let half =
            steering_column(&mono, &p, &WaveNumbers::from_values(vec![PI]).unwrap()).unwrap();
        assert!((half.entries()[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn minimal_matrix() {
        let grid = PixelGrid::new(0.0, 1.0, 0.5, 1.0, 1, 1).unwrap();
        let wn = WaveNumbers::from_values(vec![3.0]).unwrap();
        let a = build_sensing_matrix(&paper_pair(), &grid, &wn).unwrap();
        assert_eq!((a.rows(), a.cols()), (1, 1));
        let l = bistatic_path_length(&paper_pair(), &Point2D::new(0.5, 0.75)).unwrap();
        assert_eq!(a.get(0, 0), Complex64::from_polar(1.0, -3.0 * l));
    }

    #[test]
    fn columns_match_steering_and_are_unit_modulus() {
        let pair = paper_pair();
        let grid = PixelGrid::new(-0.5, 0.5, 0.5, 1.0, 7, 5).unwrap();
        let wn = paper_wave_numbers();
        let a = build_sensing_matrix(&pair, &grid, &wn).unwrap();
        for n in 0..grid.len() {
            let col = steering_column(&pair, &grid.center(n), &wn).unwrap();
            assert_eq!(a.column(n), col.entries());
        }
        let worst = a
            .columns()
            .flatten()
            .map(|e| (e.norm() - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-12);
    }

    #[test]
    fn pixel_centers_row_major() {
        let g = PixelGrid::new(0.0, 4.0, 10.0, 12.0, 4, 2).unwrap();
        assert_eq!(g.center(0), Point2D::new(0.5, 10.5));
        assert_eq!(g.center(3), Point2D::new(3.5, 10.5));
        assert_eq!(g.center(4), Point2D::new(0.5, 11.5));
        assert_eq!(g.nearest_cell(&Point2D::new(3.9, 11.2)), (3, 1));
        assert_eq!(g.nearest_cell(&Point2D::new(4.0, 12.0)), (3, 1));
        assert_eq!(g.nearest_cell(&Point2D::new(-0.5, 9.0)), (-1, -1));
    }

    #[test]
    fn invalid_grid() {
        assert!(PixelGrid::new(1.0, 0.0, 0.0, 1.0, 1, 1).is_err());
        assert!(PixelGrid::new(0.0, 1.0, 0.0, 1.0, 0, 1).is_err());
        assert!(PixelGrid::new(0.0, 1.0, f64::NAN, 1.0, 1, 1).is_err());
    }

    #[test]
    fn synthesis_cases() {
        let pair = paper_pair();
        let wn = paper_wave_numbers();
        let p = Point2D::new(-0.1, 0.6);
        let q = Point2D::new(0.3, 0.8);
        let ap = steering_column(&pair, &p, &wn).unwrap();
        let aq = steering_column(&pair, &q, &wn).unwrap();

        let single = synthesize_data(&pair, &TargetScene::new(vec![Target::unit(p)]), &wn).unwrap();
        assert_eq!(single, ap.entries());

        let two = synthesize_data(
            &pair,
            &TargetScene::new(vec![Target::unit(p), Target::unit(q)]),
            &wn,
        )
        .unwrap();
        for ((b, x), y) in two.iter().zip(ap.entries()).zip(aq.entries()) {
            assert_eq!(*b, x + y);
        }

        let zero = TargetScene::new(vec![
            Target {
                position: p,
                reflectivity: Complex64::new(0.0, 0.0),
            },
            Target {
                position: q,
                reflectivity: Complex64::new(0.0, 0.0),
            },
        ]);
        assert!(synthesize_data(&pair, &zero, &wn)
            .unwrap()
            .iter()
            .all(|b| *b == Complex64::new(0.0, 0.0)));

        assert!(matches!(
            synthesize_data(&pair, &TargetScene::default(), &wn),
            Err(Error::InvalidScene(_))
        ));
    }
}
