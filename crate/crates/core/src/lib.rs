//! Product arrangement on a shelf when buyers choose from lists.
//!
//! A shelf designer orders a catalog of products; each buyer walks the shelf
//! from one end and picks a product by a fixed rule (rational choice,
//! satisficing against a threshold product, or successive pairwise
//! comparison). The designer wants the ordering that maximizes total profit.
//!
//! The crate provides:
//! - the domain model ([`Catalog`], [`ShelfList`], [`Tournament`], [`Instance`])
//!   and exact list evaluation with fixed-point [`Money`];
//! - the three choice rules and top-cycle computation ([`choice`]);
//! - polynomial solvers for the tractable regimes, an exhaustive solver for
//!   the rest, and an auto-dispatcher ([`solvers`]);
//! - reductions from Restricted Betweenness with empirical verification
//!   ([`reductions`]);
//! - the plain-text file formats, random instance generation and a scaling
//!   benchmark ([`io`], [`random`], [`bench`]).

use thiserror::Error;

pub mod bench;
pub mod catalog;
pub mod choice;
pub mod digraph;
pub mod instance;
pub mod io;
pub mod money;
pub mod preference;
pub mod random;
pub mod reductions;
pub mod solvers;

pub use catalog::{Catalog, ProductId, ShelfList};
pub use choice::{
    choose, choose_rational, choose_satisficing, choose_successive, single_top, top_cycle, TopCycle,
};
pub use instance::{
    evaluate_list, validate_instance, Behavior, Buyer, Direction, Instance, RawBuyer, RawInstance,
    RawPreference, Rule, ValidationError, Violation,
};
pub use money::Money;
pub use preference::{Beats, LinearPreference, Preference, Tournament};
pub use solvers::{Method, Solution, SolveError};

/// Invariant violations detected while building typed model values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("catalog declares no products")]
    EmptyCatalog,
    #[error("duplicate product {0}")]
    DuplicateProduct(String),
    #[error("negative profit for product {0}")]
    NegativeProfit(String),
    #[error("unknown product {0}")]
    UnknownProduct(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("preference size mismatch: {0}")]
    PreferenceSize(String),
    #[error("incomplete tournament: pair {{{0},{1}}} unoriented")]
    IncompleteTournament(ProductId, ProductId),
    #[error("symmetric pair {{{0},{1}}}")]
    SymmetricPair(ProductId, ProductId),
    #[error("pair {0} > {1} declared twice")]
    DuplicatePair(ProductId, ProductId),
    #[error("product {0} compared with itself")]
    Reflexive(ProductId),
}
