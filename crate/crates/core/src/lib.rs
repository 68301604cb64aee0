//! Stepped-frequency bistatic SAR simulation with adjoint reconstruction.
//!
//! Data for point targets is synthesized with the same model used to invert
//! it (`b = A x`), the image is formed with the conjugate transpose
//! (`x = A^H b`), and [`analysis`] checks the resulting magnitude and phase
//! laws for one and two targets.
//!
//! - [`geometry`]: points, antenna pair, bistatic path lengths
//! - [`forward`]: frequencies, wave numbers, pixel grid, sensing matrix, data synthesis
//! - [`reconstruction`]: adjoint reconstruction over a grid or at single points
//! - [`analysis`]: phase differences, conditions, theorem verifiers
//! - [`imaging`]: PPM rendering and CSV export/import
//! - [`scenario`]: scenario documents and presets
//! - [`report`]: end-to-end simulation output
//! - [`oracle`]: naive reference implementations used by tests

pub mod analysis;
pub mod error;
pub mod forward;
pub mod geometry;
pub mod imaging;
pub mod oracle;
mod par;
pub mod reconstruction;
pub mod report;
pub mod scenario;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use forward::{
    FrequencyGrid, PixelGrid, SensingMatrix, SteeringColumn, Target, TargetScene, WaveNumbers,
    SPEED_OF_LIGHT,
};
pub use geometry::{AntennaPair, Point2D};
pub use reconstruction::{ReconValue, ReflectivityImage};
pub use scenario::{preset, Scenario, ScenarioConfig, PRESET_NAMES};
