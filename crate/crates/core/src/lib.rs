//! Temporal graphs with discrete edge availabilities.
//!
//! A [`TemporalGraph`] is a static graph whose edges carry finite sets of
//! positive integer labels (the times at which the edge can be crossed). A
//! journey crosses edges at strictly increasing labels. The crate provides:
//!
//! * [`reachability`]: foremost journeys and temporal-connectivity checks,
//!   together with an exhaustive oracle for cross-checking.
//! * [`design`]: cheap connectivity-preserving labellings (spanning tree,
//!   star, hypercube) and redundancy removal on single-labelled cliques.
//! * [`removal`]: minimality checks, greedy and exact removal profit.
//! * [`hardness`]: the Max-XOR(3) gadget and its assignment/labelling maps.
//! * [`random`]: uniform random labellings and router-based sparsification.
//! * [`format`]: the plain-text graph and formula file formats.

pub mod design;
pub mod error;
pub mod format;
pub mod graph;
pub mod hardness;
pub mod random;
pub mod reachability;
pub mod removal;

pub use error::{Error, Result};
pub use graph::{Edge, Journey, Label, LabelSet, TemporalGraph, TimeEdge, Vertex};
pub use reachability::{foremost, is_temporally_connected, ForemostResult};
