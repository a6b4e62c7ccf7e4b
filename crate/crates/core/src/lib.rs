//! Unification in the pretabular extensions of S4.
//!
//! Formulas, finite Kripke frames, membership by frame checking, ground
//! and projective unifiers, and finite complete sets of unifiers for the
//! finitary logics PM2 and PM3. The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod decision;
pub mod finitary;
pub mod formula;
pub mod kripke;
pub mod logic;
pub mod projective;
pub mod unify;
pub mod worldset;

pub use formula::{parse, Formula, ParseError, Substitution};
pub use kripke::{Frame, FrameModel};
pub use logic::Logic;
