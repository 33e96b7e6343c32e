//! Exact invariants of odd-order p-groups over group rings: cyclotomic
//! arithmetic, character tables, center-algebra elements, ramification data,
//! and torsion quotients of truncated unit groups.

pub mod center;
pub mod chars;
pub mod cyclo;
pub mod dt;
pub mod group;
pub mod matint;
pub mod ram;
pub mod trunc;

pub use chars::{character_table, CharacterTable, ClassFunction};
pub use cyclo::Cyc;
pub use group::{FiniteGroup, GroupRef, Subgroup};
