//! Size and location dependence for convex compact random sets.
//!
//! Support functions embed convex bodies into `L^2` of the unit sphere,
//! where they split exactly into an even (size) part and an odd (location)
//! part. This crate samples support profiles over antithetic direction
//! sets, forms the size/location/residual decomposition, and estimates the
//! component covariances, correlations, and mixing diagnostics of
//! set-valued time series. Generators for the simulation scenarios, rate
//! and law-of-large-numbers sweeps, interval regression, and robust
//! interval feasibility round out the toolkit; the `setcorr` binary drives
//! everything from the command line.

pub mod applications;
pub mod decomposition;
pub mod dependence;
pub mod error;
pub mod geometry;
pub mod limits;
mod numeric;
pub mod process;
pub mod seed;
pub mod sphere;

pub use error::{Error, Result};
