//! Spring-model analytics for restaurant rating time series.
//!
//! The library ingests JSON-lines review datasets and provides the analyses
//! behind the `rating-dynamics` CLI:
//!
//! - [`ingest`]: dataset parsing, name normalization, geographic filtering,
//!   review-count ranking
//! - [`timeseries`]: running averages, yearly averages, convergence estimates
//! - [`oscillator`]: the forced damped oscillator `m x'' + c x' + k x = q cos(omega t)`
//!   (closed form, RK4 simulation, regime classification)
//! - [`fit`]: rank-size power-law regression and Nelder-Mead oscillator fitting
//! - [`periodicity`]: Lomb-Scargle periodograms with permutation significance
//! - [`spatial`]: kernel-density heat grids and the Clark-Evans clustering index
//! - [`fixtures`]: synthetic city datasets used by the test suites
//! - [`cli`]: the command front end

pub mod cli;
pub mod fit;
pub mod fixtures;
pub mod ingest;
pub mod oscillator;
pub mod periodicity;
pub mod spatial;
pub mod timeseries;

/// Julian year in seconds; the time unit used when rescaling review
/// timestamps for fitting and spectral analysis.
pub const SECONDS_PER_YEAR: f64 = 31_557_600.0;

/// Mean Earth radius in kilometres (spherical model).
pub const EARTH_RADIUS_KM: f64 = 6371.0;
