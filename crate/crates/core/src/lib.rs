//! Relation-algebra representations induced by distance-regular graphs.
//!
//! A connected distance-regular graph of diameter `d` colors the complete
//! graph on its vertices by distance; the color classes are the atoms of a
//! finite symmetric integral relation algebra on `d + 1` atoms. This crate
//! builds the graphs, counts intersection numbers by brute force, evaluates
//! the diameter-3 closed forms, checks representations against a catalog of
//! four-atom algebras, and decides algebraicity through automorphism
//! orbitals.

pub mod diam3;
pub mod error;
pub mod generators;
pub mod graph;
pub mod ra;
pub mod reproduce;
pub mod scheme;
pub mod symmetry;

pub use error::{Error, Result};
pub use graph::{DistanceMatrix, Graph};
pub use scheme::{ColoredCompleteGraph, IntersectionArray, IntersectionTensor};
