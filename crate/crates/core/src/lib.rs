pub mod code;
pub mod curve;
pub mod curves;
pub mod decoder;
pub mod error;
pub mod field;
pub mod groebner;
pub mod gs;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod semigroup;
pub mod sim;

pub use error::{Error, Result};
