//! Closure algebras of finite S4 frames and their quotients by the meager ideal.
//!
//! The pipeline: build a finite reflexive-transitive frame ([`frame::Frame`]),
//! read its powerset as a closure algebra ([`algebra::ClosureAlgebra`]), quotient
//! by the ideal of meager sets ([`quotient::BaireQuotient`]), and study the result
//! through Baire resolutions and partial maps ([`maps`]). On top of that sit
//! decision procedures for S5, its finite-cluster extensions, and the language
//! with a universal modality ([`decision`]).
//!
//! Everything is `no_std` + `alloc`; spaces are capped at 64 worlds (bitset width)
//! and exhaustive subset sweeps at 16, so all searches stay finite and deterministic.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod decision;
pub mod formula;
pub mod frame;
pub mod maps;
pub mod quotient;
pub mod sets;

pub use formula::Formula;
pub use frame::Frame;
pub use sets::Subset;
