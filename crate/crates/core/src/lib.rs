#![no_std]

extern crate alloc;

pub mod apps;
pub mod config;
pub mod error;
pub mod exact;
pub mod filtering;
pub mod graph;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
