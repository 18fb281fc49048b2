pub mod error;
pub mod numerics;
pub mod poly;

pub use error::{Error, Result};
pub mod heights;
pub mod pcf;
pub mod enumeration;
