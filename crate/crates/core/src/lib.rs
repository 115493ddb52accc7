pub mod dsl;
pub mod error;
pub mod jet;
pub mod tolerance;
pub mod vector;

pub use error::{Error, Result};
pub use jet::Jet2;
pub use tolerance::Tolerances;
pub use vector::{Vec3, Vec3J};
pub mod frame;
pub mod grid;
pub mod creative;
pub mod fixtures;
pub mod envelope;
pub mod discriminant;
pub mod applications;
pub mod cli;
