//! Exact computer algebra for germs of holomorphic vector fields and map
//! germs in dimensions two and three.

pub mod error;
pub mod scalars;
pub mod series;
pub mod germs;
pub mod holonomy;
pub mod blowup;
pub mod integrability;
pub mod cli;

pub use error::{Error, Result};
pub use scalars::{GaussianRational, TauScalar};
pub use series::{compose, compose_map, invert, DiffeoGerm, Multidegree, TruncatedSeries};
