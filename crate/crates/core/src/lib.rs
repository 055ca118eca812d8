//! Witness certificates showing that polynomial values divide factorials,
//! plus a scanner for smooth polynomial values.

pub mod cli;
pub mod construct;
pub mod intpoly;
pub mod numtheory;
pub mod pell;
pub mod scan;
pub mod specialpoly;
pub mod verify;
