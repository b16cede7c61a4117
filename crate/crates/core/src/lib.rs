pub mod coeff;
pub mod error;
pub mod fock;

pub use error::{Error, Result};
pub mod reps;
pub mod linalg;
pub mod intertwiner;
pub mod equations;
pub mod frt;
pub mod embed;
