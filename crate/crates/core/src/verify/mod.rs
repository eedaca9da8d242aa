//! Independent checks: a randomized search against the dimension bounds,
//! the truncation identities behind the bound, and naive re-implementations
//! used to cross-check the main code paths.

mod appendix;
mod oracle;
mod search;

pub use appendix::{appendix_identities, AppendixError, AppendixWitness};
pub use oracle::{naive_closure, oracle_bracket_closure, random_commuting_nilpotent_pair, NaiveClosure};
pub use search::{dimension_bound, random_abelian_search, random_triangular_abelian, SearchReport, Violation};
