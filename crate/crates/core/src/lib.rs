pub mod boundary;
pub mod cli;
pub mod config;
pub mod error;
pub mod far_field;
pub mod geometry;
pub mod cover;
pub mod bump;
pub mod harmonic;
pub mod interpolant;
pub mod quadrature;
pub mod report;
pub mod suite;
