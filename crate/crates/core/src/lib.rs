//! Twists, their lattices, polytopes and Hopf algebras.

#![allow(clippy::needless_range_loop)]

pub mod cambrian;
pub mod congruence;
pub mod error;
pub mod geometry;
pub mod hopf;
pub mod insertion;
pub mod io;
pub mod lattice;
pub mod perm;
pub mod poset;
pub mod recoil;
pub mod schroder;
pub mod shape;
pub mod twist;

pub use error::{Error, Result};
pub use perm::{Perm, Sign, Signature, SignedPerm};
pub use poset::Dag;
pub use shape::Shape;
pub use twist::{ContactGraph, Flip, Twist};
