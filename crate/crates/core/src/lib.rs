//! Tropical dual complexes, PL maps, multiplicity measures and mobility certificates.

pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod polyhedron;
pub mod lattice;
pub mod pl;
pub mod measures;
pub mod lp;
pub mod mobility;
pub mod entropy;
pub mod amoeba;
pub mod fixtures;
pub mod io;
pub mod svg;
