//! Scaling limits, the ODE for the Stieltjes transform and its solutions,
//! and the limit laws.

pub mod abel;
pub mod inversion;
pub mod limits;
pub mod measure;
pub mod riccati;
pub mod series;
pub mod stieltjes;

pub use abel::{abel_canonical, AbelCanonicalData, Laurent};
pub use inversion::{cdf_from_potential, default_schedule, invert, inverted_measure, InversionPoint};
pub use limits::{compute_limits, suggest_sigma, LimitPair, ScalingLaw, SigmaChoice};
pub use measure::{closed_form_cdf, moments, LimitMeasure, MeasureSource};
pub use riccati::riccati_solve;
pub use series::{closed_form_series, reduced_inverse_erf_coeffs, series_coeffs, SeriesTail};
pub use stieltjes::{bell_s_integral, closed_form_s, ode_residual, support_of, StieltjesEvaluator};
