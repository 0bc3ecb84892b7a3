//! Subgroup lattices and subgroup commutativity degrees of small finite
//! groups, computed exactly.

pub mod bitset;
pub mod cache;
pub mod commutativity;
pub mod error;
pub mod expr;
pub mod fraction;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod oracle;
pub mod parallel;
pub mod perm;
pub mod report;
pub mod select;
pub mod verify;
pub mod zm;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use group::GroupTable;
pub use lattice::{Lattice, SubgroupSet};
