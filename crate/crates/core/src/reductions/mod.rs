//! Reductions from Restricted Betweenness to product arrangement, and tools
//! for checking them on small instances.
//!
//! Elements keep their index as product index in every reduced instance;
//! auxiliary products (thresholds, dummies) follow them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog::{ProductId, ShelfList};
use crate::instance::Instance;
use crate::solvers::SolveError;

mod betweenness;
mod gadgets;
mod linear;
mod sepa_sc;
mod verify;

pub use betweenness::{
    solve_betweenness_exhaustive, BetweennessError, BetweennessInstance, BetweennessSolution,
    DEFAULT_BETWEENNESS_LIMIT,
};
pub use gadgets::{
    derive_gadgets, standard_gadgets, table_checksum, verify_gadget_tables, GadgetError,
    GadgetLibrary, GadgetMismatch, GadgetReport, GadgetSymbol, GadgetTemplate, TABLE_CHECKSUM,
};
pub use linear::{product_name, reduce_to_pa_sat, reduce_to_pa_sc, threshold_name};
pub use sepa_sc::{gadget_instance, reduce_to_sepa_sc, GadgetKind, C_GADGET_VALUE, D_GADGET_VALUE};
pub use verify::{verify_reduction_equivalence, EquivalenceReport, VerificationLimits};

#[cfg(test)]
pub(crate) use betweenness::next_permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionTarget {
    /// Satisficing buyers, both directions.
    PaSat,
    /// Successive-choice buyers with three top products, both directions.
    PaSc,
    /// Left-biased successive-choice buyers with four top products.
    SepaSc,
}

impl ReductionTarget {
    pub const ALL: [ReductionTarget; 3] = [
        ReductionTarget::PaSat,
        ReductionTarget::PaSc,
        ReductionTarget::SepaSc,
    ];

    pub fn token(self) -> &'static str {
        match self {
            ReductionTarget::PaSat => "pa-sat",
            ReductionTarget::PaSc => "pa-sc",
            ReductionTarget::SepaSc => "sepa-sc",
        }
    }

    /// Product count of the reduced instance for `element_count` elements.
    pub fn product_count(self, element_count: usize) -> usize {
        match self {
            ReductionTarget::PaSc => element_count,
            ReductionTarget::PaSat | ReductionTarget::SepaSc => element_count + 2,
        }
    }

    /// The list standing for an element order: thresholds `t(R)` first and
    /// `t(L)` last for pa-sat, dummies `d1` first and `d2` last for sepa-sc.
    pub fn embed_order(self, inst: &BetweennessInstance, order: &[usize]) -> ShelfList {
        let e = inst.element_count();
        let mut list: Vec<ProductId> = order.iter().copied().map(ProductId).collect();
        match self {
            ReductionTarget::PaSc => {}
            ReductionTarget::PaSat => {
                list.insert(0, ProductId(e + 1));
                list.push(ProductId(e));
            }
            ReductionTarget::SepaSc => {
                list.insert(0, ProductId(e));
                list.push(ProductId(e + 1));
            }
        }
        ShelfList::new(list, self.product_count(e)).expect("order is a permutation of the elements")
    }

    /// The element order read off a list of the reduced instance.
    pub fn project_list(self, inst: &BetweennessInstance, list: &ShelfList) -> Vec<usize> {
        let e = inst.element_count();
        list.iter().map(|p| p.0).filter(|&p| p < e).collect()
    }
}

impl fmt::Display for ReductionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ReductionTarget {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ReductionTarget::ALL
            .into_iter()
            .find(|t| t.token() == s)
            .ok_or_else(|| format!("unknown reduction target `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid betweenness instance: {0}")]
    InvalidInstance(#[from] BetweennessError),
    #[error("betweenness instance too large for exhaustive search: {n} elements, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Builds the reduced instance, using the derived gadget library for sepa-sc.
pub fn reduce(
    inst: &BetweennessInstance,
    target: ReductionTarget,
) -> Result<Instance, ReductionError> {
    Ok(match target {
        ReductionTarget::PaSat => reduce_to_pa_sat(inst),
        ReductionTarget::PaSc => reduce_to_pa_sc(inst),
        ReductionTarget::SepaSc => reduce_to_sepa_sc(inst, standard_gadgets()?),
    })
}
