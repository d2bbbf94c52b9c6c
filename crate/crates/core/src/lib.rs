//! Desk-scale analytics over hypersparse network traffic matrices.
//!
//! The crate builds 2³²×2³² traffic matrices from packet streams as sorted
//! coordinate triples, computes the canonical per-window network quantities
//! (valid packets, unique links/sources/destinations, fan-out/fan-in and
//! their maxima), pools degree data into binary logarithmic bins, fits
//! Zipf-Mandelbrot models to the resulting heavy-tailed distributions, and
//! measures cross-site source overlap over time with modified-Cauchy,
//! Cauchy, and Gaussian decay fits.
//!
//! Everything here is pure computation over immutable values; file formats
//! and the command-line front end live in the companion `darkscope` crate.
//! The crate is `no_std` (with `alloc`) so the analytic core carries no I/O
//! surface at all.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod addr;
pub mod anonymize;
pub mod assoc;
pub mod correlation;
pub mod degree;
pub mod distributions;
pub mod error;
pub mod hypersparse;
pub mod quantities;
pub mod synth;
pub mod timecoord;
pub mod window;

mod rng;

pub use degree::DegreeVector;
pub use error::{Error, Result};
pub use hypersparse::{hierarchical_sum, EdgeTriple, TrafficMatrix};
pub use quantities::{aggregate, NetworkQuantities};
