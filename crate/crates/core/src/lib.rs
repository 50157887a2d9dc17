//! A Finnish poem master: a multi-objective genetic algorithm that rewrites
//! corpus poems under aesthetics learned from a century of poetry, explains
//! its output with template framing, and exports verse pairs for training
//! an apprentice model.
//!
//! The pipeline, bottom up:
//!
//! - [`corpus`]: annotated poems, stanza splitting, CoNLL-U reading.
//! - [`lexres`]: embeddings, n-gram relatedness, lexicons, morphology.
//! - [`sonic`], [`semfields`], [`metaphor`]: the aesthetic measures.
//! - [`aesthetics`]: registry, gating, fitness, profile learning.
//! - [`moo`] and [`master`]: NSGA-II selection and the genetic algorithm.
//! - [`framing`]: the thirteen explanatory statements.
//! - [`cli`]: the `runo` command.

pub mod aesthetics;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod framing;
pub mod lexres;
pub mod master;
pub mod metaphor;
pub mod moo;
pub mod semfields;
pub mod sonic;

pub use aesthetics::{evaluate, likes, Aesthetic, AestheticProfile, AestheticReport, FitnessVector};
pub use corpus::{Era, Poem, Token, TokenPos, Verse};
pub use error::{Error, Result};
pub use lexres::Resources;
pub use master::{Individual, RunConfig};
