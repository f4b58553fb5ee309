//! Exact combinatorics of commutation classes of the longest Weyl group
//! element in types A, D and E6: AR quivers, their twisted and folded
//! variants, sequence orders, and the denominator and Dorey-rule identities
//! for the folded types B, C and F4.

pub mod affine;
pub mod arquiver;
pub mod cli;
pub mod rootset;
pub mod rootsys;
pub mod seqorder;
pub mod twistfold;
pub mod words;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    RootSystem(#[from] rootsys::RootSystemError),
    #[error(transparent)]
    Word(#[from] words::WordError),
    #[error(transparent)]
    Quiver(#[from] arquiver::QuiverError),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
