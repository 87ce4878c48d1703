pub mod delta;
pub mod differentials;
pub mod error;
pub mod frame;
pub mod gf;
pub mod harness;
pub mod ideals;
pub mod infinity;
pub mod linalg;
pub mod local;
pub mod norm;
pub mod amat;
pub mod carlitz;
pub mod classgroup;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod riemann_roch;
pub mod snf;
pub mod tower;
pub mod units;
pub mod zeta;

pub use error::{Error, ErrorClass, Result};
