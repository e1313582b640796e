//! Exact-arithmetic analyzer for the spin-statistics connection in
//! first-order (Schwinger-form) field theories.
//!
//! The pipeline: a declarative theory file ([`theory`]) fixes the field
//! content; [`su2`] supplies rotation generators and invariant bilinear
//! forms; [`invariance`] checks the kinematic matrix `K⁰` and derives the
//! symmetry rotational invariance demands; [`quantizer`] decides which
//! statistics the action principle allows for that `K⁰`; [`flavor`] handles
//! flavor-antisymmetrized couplings and their negative-norm sectors, with
//! [`fock`] supplying the second-quantized witness. [`reduction`] covers the
//! Ostrogradsky and Duffin-Kemmer constructions. [`report`] ties the stages
//! together and [`cli`] exposes them on the command line.

pub mod cli;
pub mod error;
pub mod exact;
pub mod flavor;
pub mod fock;
pub mod invariance;
pub mod quantizer;
pub mod reduction;
pub mod report;
pub mod su2;
pub mod theory;

pub use error::{Error, Result};
