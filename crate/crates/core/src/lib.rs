//! Exact symbolic-numeric toolkit for analytic line congruences.
//!
//! A line congruence is described here by its intersection with the plane
//! `z = 0` and a direction field `xi = (xi1(x,y), xi2(x,y), 1)`, both
//! components stored as truncated bivariate Taylor germs with exact rational
//! coefficients. On top of that kernel the crate builds:
//!
//! - the shape coefficients, discriminant and the Weingarten polynomial `W`
//!   of a congruence germ, together with ridge and subparabolic invariants
//!   and the exact identity `c^2 R - S = 4 c^3 delta W` ([`congruence`]);
//! - order-by-order resolution of the jet equations `W_{n-k,k} = 0` at a
//!   normalized umbilical point ([`jet`]);
//! - classification of the discriminant singularity as `A_1^±`, `A_2`,
//!   `A_3`, `A_4` or `A_infinity`-up-to-cap, with ridge-derivative witnesses
//!   ([`classify`]);
//! - the binary differential equation of principal lines, its blow-up
//!   analysis and a fixed-step integrator producing figure data ([`bde`]).
//!
//! All algebraic paths are exact; floating point appears only in the
//! plotting and blow-up evaluation layer.

pub mod bde;
pub mod classify;
pub mod congruence;
pub mod jet;
pub mod rational;
pub mod roots;
pub mod sample;
pub mod series;

pub use congruence::{CongruenceGerm, GraphGerm, ShapeCoefficients};
pub use rational::Rational;
pub use series::Series2;
