//! Measures how much information the orbits of concrete one- and
//! two-dimensional dynamical systems carry, how fast nearby orbits separate,
//! and what fractal dimension the relevant sets have — and cross-checks the
//! inequalities tying the three quantities together.
//!
//! Modules follow the pipeline:
//! [`catalog`] (maps and guaranteed-precision orbits) → [`coding`] (symbol
//! sequences) → [`infocontent`] (compressors) → [`complexity`] (growth fits)
//! alongside [`sensitivity`] (dynamical-ball radii) and [`dimension`]
//! (ε-nets, box counting), all feeding [`report`].

pub mod catalog;
pub mod coding;
pub mod complexity;
pub mod dimension;
pub mod error;
pub mod infocontent;
pub mod map;
pub mod num;
pub mod report;
pub mod seeding;
pub mod sensitivity;

pub use error::{Error, Result};
