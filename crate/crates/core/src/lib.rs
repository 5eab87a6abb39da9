//! Computational tools for multibrot sets `M_d = {c : z -> z^d + c has bounded critical orbit}`.

pub mod angles;
pub mod rotation;
pub mod boettcher;
pub mod series;
pub mod factor;
pub mod arithmetic;
pub mod dd;
pub mod pcf;
pub mod rays;
pub mod exact;
pub mod curves;
pub mod render;
pub mod config;
pub mod verify;

pub use angles::Angle;
pub use config::RunConfig;
pub use curves::{BivariateCurve, Exceptional};
pub use exact::{BiPoly, ExactPoly, GaussRat};
pub use num_complex::Complex64;
pub use render::{Raster, RasterSpec};
pub use rays::{LandingPair, RayTrace};
pub use rotation::{RotationNumber, RotationSet};
