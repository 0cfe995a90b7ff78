//! Exact operators and numeric oracles for sharp Strichartz estimates of
//! the free Schrödinger equation, built on Hermite, Laguerre and
//! Gegenbauer polynomials.

pub mod eigen;
pub mod error;
pub mod exactnum;
pub mod hermite_frame;
pub mod laguerre_frame;
pub mod modes;
pub mod multipoly;
pub mod orthopoly;
pub mod quadrature;
pub mod schrodinger;
pub mod special;
pub mod spherical;
pub mod words;

pub use error::{Error, Result};
pub use exactnum::Rational;
