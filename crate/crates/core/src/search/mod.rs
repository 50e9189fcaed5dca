//! Classification searches: Bol central extensions through their cocycles,
//! and completion of partial tables for the trivial-center case.

pub mod cocycle;
pub mod gfp;
pub mod model;

pub use cocycle::{bol_cocycle_space, central_extensions_in_variety, CocycleSpace};
pub use model::{
    model_search, model_search_with, BlockStructure, SearchOptions, SearchOutcome, SearchSpec,
    SubloopCase,
};
