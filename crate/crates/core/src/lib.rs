pub mod curve;
pub mod curvefile;
pub mod error;
pub mod field;
pub mod linalg;
pub mod plane;
pub mod unipoly;
pub mod par;
pub mod analysis;
pub mod bounds;
pub mod catalog;
pub mod search;

pub use error::{Error, Result};
