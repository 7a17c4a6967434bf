//! Exhaustive checks over small posets.

pub mod catalog;
pub mod gadgets;
pub mod patterns;
pub mod suite;
