//! Net convergence structures on finite posets.
//!
//! The crate decides M-convergence and MN-convergence of finite nets, builds the
//! topologies those structures induce, computes the associated way-below style
//! relations and evaluates every continuity notion that characterises when a
//! convergence structure is topological. Everything here is a pure function of
//! its inputs; IO, parsing and the command-line front end live in the `convlab`
//! crate.
#![no_std]

extern crate alloc;

pub mod characterize;
pub mod continuity;
pub mod enumerate;
pub mod error;
pub mod kelley;
pub mod mask;
pub mod miner;
pub mod net;
pub mod poset;
pub mod relations;
pub mod report;
pub mod sample;
pub mod selection;
pub mod topology;

pub use continuity::{ContinuityVerdict, Notion};
pub use enumerate::Dedup;
pub use error::{Error, Result};
pub use mask::SubsetMask;
pub use miner::{ImplicationMatrix, MinerJob, PropertyId};
pub use net::{Convergence, DirectedIndex, Eventuality, Net, Provenance};
pub use poset::{Elem, Poset};
pub use relations::{FamilyPair, RelationKind, RelationMatrix};
pub use report::{PropertyReport, Witness};
pub use sample::SampleSpec;
pub use selection::{Selection, SelectionFamily, SelectionKind};
pub use topology::Topology;

/// Crate version, stamped into every report header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
