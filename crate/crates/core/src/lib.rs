//! Exact computations with linear codes over finite fields, their lifts to
//! extension fields, weight distributions and support designs.

pub mod cli;
pub mod closed_forms;
pub mod code;
pub mod combin;
pub mod config;
pub mod design;
pub mod error;
pub mod families;
pub mod field;
pub mod lifting;
pub mod matrix;

pub use code::{macwilliams, LinearCode, Strategy, WeightDistribution};
pub use config::Config;
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, FieldTower, Gf};
pub use matrix::{Matrix, Rref};
