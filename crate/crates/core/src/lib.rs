//! Super-cyclic bigraphs: the condition, based cycles, classification of
//! critical graphs, structural tools and exhaustive verification campaigns.

pub mod bigraph;
pub mod checkpoint;
pub mod classify;
pub mod cli;
pub mod condition;
pub mod cycle;
pub mod error;
pub mod format;
pub mod generators;
mod matching;
pub mod par;
pub mod report;
pub mod structure;
pub mod verifier;
pub mod vertex;

pub use bigraph::{Bigraph, Hypergraph, InducedSubgraph};
pub use cycle::BaseCycle;
pub use error::{Error, Result};
pub use report::{CheckReport, Record, Witness};
pub use vertex::{Side, Vertex, VertexSet};
pub use verifier::{CampaignOptions, VerificationReport, Violation};
