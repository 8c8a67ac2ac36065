//! Exact extremal set theory machinery on Kneser graphs, plus Monte Carlo
//! threshold experiments on their random subgraphs.

pub mod bitset;
pub mod combinat;
pub mod container;
pub mod error;
pub mod extremal;
pub mod kneser;
pub mod mis;
pub mod randomsim;
pub mod rng;
pub mod sample;
pub mod setfam;
pub mod shadow;
pub mod verify;

pub use combinat::{BigCount, LogReal};
pub use error::{Error, Result};
pub use kneser::{InducedGraph, KneserParams, DEFAULT_SOLVER_CAP};
pub use setfam::{Family, RSet};
