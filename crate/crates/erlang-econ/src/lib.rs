//! Admission economics of infinite-server loss systems.
//!
//! Customers arriving at a Poisson rate collect a fixed service reward but
//! suffer a polynomial congestion cost in the number of concurrent users.
//! This crate computes the resulting admission policies in both information
//! regimes:
//!
//! - **Observable**: arrivals see the live occupancy and follow threshold
//!   strategies. [`observable`] finds the individual equilibrium threshold,
//!   the socially optimal threshold, and the revenue-optimal threshold with
//!   its admission price, together with the full welfare and revenue curves.
//! - **Unobservable**: arrivals know only the parameters and mix with a
//!   joining probability. [`unobservable`] solves for the equilibrium and
//!   revenue-optimal probabilities and the supporting entrance price.
//!
//! The [`erlang`] module holds the numerically stable truncated-Poisson
//! kernel everything rests on, [`sim`] is an independent discrete-event
//! oracle for cross-checking the closed forms, and [`sweep`] drives grid
//! evaluations, CSV export, a worked-example report, and
//! simulator-versus-analytic validation.
//!
//! Every function here is pure and thread-safe; analyses of different
//! parameter points can run concurrently without coordination.

pub mod cost;
pub mod erlang;
pub mod error;
pub mod observable;
pub mod params;
pub mod sim;
pub mod sweep;
pub mod unobservable;

pub use cost::CostPolynomial;
pub use error::{Error, Result};
pub use params::SystemParams;
