//! Finitely presented simplicial sets with Segal-condition checkers, group
//! actions, bar and Borel constructions, and an exact homology oracle.

pub mod build;
pub mod chain;
pub mod cosk;
pub mod error;
pub mod functor;
pub mod group;
pub mod gspace;
pub mod homology;
pub mod homs;
pub mod io;
pub mod job;
pub mod kan;
pub mod limits;
pub mod pi;
pub mod segal;
pub mod simplex;
pub mod snf;
pub mod space;
pub mod smap;
pub mod sset;
pub mod tabulated;
pub mod verdict;
pub mod weq;

pub use error::{Result, SegalError};
