//! Planar bistatic geometry: points, the transmitter/receiver pair, and
//! transmitter → scatterer → receiver path lengths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the imaging plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn check(&self, what: &str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidGeometry(format!(
                "{what} ({}, {}) is not finite",
                self.x, self.y
            )))
        }
    }
}

/// Transmitter and receiver positions. `tx == rx` is the monostatic case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntennaPair {
    pub tx: Point2D,
    pub rx: Point2D,
}

impl AntennaPair {
    pub fn new(tx: Point2D, rx: Point2D) -> Result<Self> {
        tx.check("transmitter")?;
        rx.check("receiver")?;
        Ok(Self { tx, rx })
    }

    /// Same pair with the roles of transmitter and receiver exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            tx: self.rx,
            rx: self.tx,
        }
    }

    /// Distance between the two antennas; the lower bound of every path length.
    pub fn baseline(&self) -> f64 {
        self.tx.distance(&self.rx)
    }
}

/// Total path length `|tx - p| + |p - rx|`.
pub fn bistatic_path_length(pair: &AntennaPair, p: &Point2D) -> Result<f64> {
    pair.tx.check("transmitter")?;
    pair.rx.check("receiver")?;
    p.check("scatterer")?;
    Ok(pair.tx.distance(p) + p.distance(&pair.rx))
}

/// Whether `p` and `q` lie on one ellipse with foci at the antennas, i.e.
/// their bistatic path lengths agree to within `tol` meters.
pub fn on_common_ellipse(pair: &AntennaPair, p: &Point2D, q: &Point2D, tol: f64) -> Result<bool> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "ellipse tolerance must be non-negative, got {tol}"
        )));
    }
    let lp = bistatic_path_length(pair, p)?;
    let lq = bistatic_path_length(pair, q)?;
    Ok((lp - lq).abs() <= tol)
}
