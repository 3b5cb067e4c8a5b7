#![allow(clippy::needless_range_loop)]

pub mod engine;
pub mod fourier;
pub mod group;
pub mod io;
pub mod linalg;
pub mod models;
pub mod suite;
