//! Optimal system of one-dimensional subalgebras: adjoint words, the
//! normalizing case tree, the 29 representatives and their projections.

mod normalize;
mod reps;
#[cfg(test)]
mod tests;
mod word;

use thiserror::Error;

use crate::liealg::LieError;

pub use normalize::{normalize, Normalized};
pub use reps::{
    combine, find_representative, project, representative, representatives, Representative, Slot,
};
pub use word::{
    apply_step, apply_word, eval_exppoly, inverse_word, AdjointWord, Axis, Param, Step,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OptError {
    #[error("parameter makes the result irrational: {0}")]
    IrrationalResult(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("zero vector has no representative")]
    ZeroVector,
    #[error("case {branch} ends at {vector}, which is not one of the listed representatives")]
    Unlisted {
        branch: &'static str,
        vector: String,
    },
}
