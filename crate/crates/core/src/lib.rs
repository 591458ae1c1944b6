//! Double ramification cycles of stacky targets `BG`: finite groups and
//! their root extensions, stable graphs with class labelings and weightings,
//! formal tautological classes, and the two graph-sum formulas whose
//! constant terms in `r` give the DR cycle.

pub mod arith;
pub mod decorations;
pub mod extension;
pub mod graph;
pub mod group;
pub mod job;
pub mod pipeline;
pub mod ramdata;
pub mod rep;
pub mod series;
pub mod taut;

use thiserror::Error;

pub use arith::{RPolynomial, Rational};
pub use decorations::{enumerate_chi, ChiLabeling, DecorationError, WeightingSpace};
pub use extension::CyclicExtension;
pub use graph::{enumerate_stable_graphs, GraphError, StableGraph};
pub use group::{ClassId, FiniteGroup, GroupError, GroupSpec};
pub use job::{JobOptions, JobSpec, ParseError};
pub use pipeline::{
    crosscheck_constant_terms, dr_cycle, CrosscheckReport, DrOutcome, EdgeSign, EvalConfig, PipelineError, Problem, Route,
};
pub use ramdata::{RamData, RamDataError, RawRamData, WeightMode};
pub use rep::{OneDimRep, RepError, RepSpec};
pub use series::{LocalSeries, SeriesError};
pub use taut::{TautClass, TermKey};

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    RamData(#[from] RamDataError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decoration(#[from] DecorationError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}
