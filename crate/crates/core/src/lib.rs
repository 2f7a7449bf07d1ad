//! Finite, exhaustively checkable models of quasicategories and complete
//! Segal spaces.
//!
//! Everything is computed at a finite truncation level: finite categories
//! with total composition tables, truncated simplicial and bisimplicial sets
//! in Eilenberg–Zilber form, and the constructions relating them (nerves,
//! classifying diagrams, fundamental categories, the homotopy category of a
//! Segal space, and the totalization pair between the two models).

pub mod bicat;
pub mod bisset;
pub mod corpus;
pub mod error;
pub mod ez;
pub mod fincat;
pub mod formats;
pub mod presentation;
pub mod sset;
pub mod totalize;
pub mod verify;

mod unionfind;

pub use error::{Error, Result};

use serde::Serialize;

/// Outcome of a decision procedure that explains its negative answers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
