//! Finite loops as Cayley tables: identity checks, invariants, permutation
//! groups, explicit constructions of the right Bol loops of order 27,
//! isomorphism and isotopism testing, and the searches that classify them.

pub mod classify;
pub mod constructions;
pub mod error;
pub mod invariants;
pub mod perm;
pub mod report;
pub mod search;
pub mod permgroup;
pub mod table;
pub mod text;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use permgroup::PermGroup;
pub use table::{Element, LoopTable};
