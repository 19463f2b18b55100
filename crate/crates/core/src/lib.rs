//! Exact computations for 2-blocks with defect group `D_{2^n} * C_{2^m}`.

pub mod blocks;
pub mod chartab;
pub mod cyclo;
pub mod decomp;
pub mod error;
pub mod fusion;
pub mod gluing;
pub mod gf;
pub mod intmat;
pub mod invariants;
pub mod linalg;
pub mod localweights;
pub mod pcgroup;
pub mod suite;
pub mod witness;

pub use error::{Error, Result};
