//! Reductions from planar 3-SAT variants to linked planar 3-SAT, with satisfiers and verifiers.

pub mod formula;
pub mod gadgets;
pub mod layout;
pub mod planarity;
pub mod reduction;
pub mod render;
pub mod satisfiers;
pub mod verify;
