//! Exact Segre classes and Segre zeta functions for subschemes of
//! projective spaces and products of two projective spaces.

pub mod exactalg;
pub mod groebner;
pub mod chowring;
pub mod exec;
pub mod segre;
pub mod zeta;
