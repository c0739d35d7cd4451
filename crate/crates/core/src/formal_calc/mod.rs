//! Formal delta-function calculus.
//!
//! `Δ^(k)(x, y) = ∂_x^k Σ_n x^n y^(-n-1)`. A [`DeltaSeries`] is a finite sum
//! `Σ g_i Δ^(i)` whose coefficients live on one side; [`BiSeriesWindow`]
//! renders any such sum on a finite exponent window and serves as the oracle
//! for every identity implemented here.

mod delta;
mod laurent;
mod window;

pub use delta::{decompose, delta_window, oracle_radius, power_diff_coeff, render, DeltaCoeff, DeltaSeries, Side};
pub use laurent::LaurentPoly;
pub use window::{BiSeries, BiSeriesWindow, Window};

pub use crate::rational::gen_binomial;
