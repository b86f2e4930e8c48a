//! Exact quiver mutation, maximal green sequence enumeration, and the
//! representation-theoretic side of the length-spectrum results for path
//! algebras of type `A_n` and `Ã_(n,1)`.
//!
//! The crate has two independent pipelines that are checked against each
//! other:
//!
//! * [`quiver`] and [`mgs`]: ice quivers, mutation, green/red colors,
//!   exhaustive green-sequence search with isomorphism memoization, and the
//!   oriented exchange graph.
//! * [`type_a`], [`coxeter`] and [`slice`]: interval modules, Ext criteria,
//!   exact Hom/Ext oracles, the Auslander-Reiten translate, the poset of
//!   support tilting modules, and slices in the preprojective component.
//!
//! [`harness`] builds the fixtures and runs the end-to-end checks; [`cli`]
//! is the command-line front end.

pub mod cli;
pub mod coxeter;
pub mod format;
pub mod harness;
pub mod linalg;
pub mod mgs;
pub mod quiver;
pub mod slice;
pub mod type_a;

pub use coxeter::{CoxeterData, DimVector};
pub use format::{parse_quiver, ParseError, QuiverFile};
pub use harness::{build_affine, build_type_a, VerificationReport};
pub use mgs::{
    build_exchange_graph, default_depth_bound, enumerate_mgs, length_spectrum, EnumerationConfig,
    ExchangeGraph, GreenSequence, MgsError, SpectrumReport,
};
pub use quiver::{coframed, framed, ClusterQuiver, IceQuiver, QuiverError, Vertex, VertexColor};
pub use slice::{SliceError, SliceVector, ZQVertex};
pub use type_a::{IntervalModule, SupportTiltingSet, TypeAError, TypeAQuiver};

use thiserror::Error;

/// Any failure surfaced by the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Mgs(#[from] MgsError),
    #[error(transparent)]
    TypeA(#[from] TypeAError),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error(transparent)]
    Harness(#[from] harness::HarnessError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// 0 success, 1 verification failure, 2 usage or input error, 3 internal
    /// inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailed(_) => 1,
            Error::Internal(_)
            | Error::Quiver(QuiverError::NotBicolored(_))
            | Error::Mgs(MgsError::Quiver(QuiverError::NotBicolored(_)))
            | Error::TypeA(TypeAError::InternalInconsistency(_))
            | Error::Slice(SliceError::InternalInconsistency(_)) => 3,
            _ => 2,
        }
    }
}
