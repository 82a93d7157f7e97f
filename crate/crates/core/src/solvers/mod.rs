//! Solvers for the product-arrangement problem.
//!
//! | regime                                   | solver                      |
//! |------------------------------------------|-----------------------------|
//! | rational buyers (any direction)          | [`solve_rc`], O(m)          |
//! | successive choice, single top product    | [`solve_pa_sc_singleton`], O(nm) |
//! | satisficing, all left-biased             | [`solve_sepa_sat`], O(n(log n + m)) |
//! | successive choice, left-biased, top ≤ 3  | [`solve_sepa_sc_small_tc`], O(n²m) |
//! | everything else                          | [`solve_exact`], O(n!·nm)   |

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog::ShelfList;
use crate::instance::Instance;
use crate::money::Money;

mod exact;
mod poly;

pub use exact::{solve_exact, ExactOptions, DEFAULT_EXACT_LIMIT, MAX_EXACT_PRODUCTS};
pub use poly::{solve_pa_sc_singleton, solve_rc, solve_sepa_sat, solve_sepa_sc_small_tc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Rc,
    PaScSingleton,
    SepaSat,
    SepaScSmallTc,
    Exact,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Rc,
        Method::PaScSingleton,
        Method::SepaSat,
        Method::SepaScSmallTc,
        Method::Exact,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Method::Rc => "rc",
            Method::PaScSingleton => "pa-sc-t1",
            Method::SepaSat => "sepa-sat",
            Method::SepaScSmallTc => "sepa-sc-t3",
            Method::Exact => "exact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.token() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub best_value: Money,
    /// A list attaining `best_value`, when the solver produces one.
    pub witness: Option<ShelfList>,
    /// Present iff the instance carries a target: `best_value >= target`.
    pub decision: Option<bool>,
    pub method: Method,
    /// Number of complete lists the solver evaluated.
    pub lists_evaluated: u64,
}

impl Solution {
    fn new(inst: &Instance, best_value: Money, witness: Option<ShelfList>, method: Method) -> Self {
        Solution {
            best_value,
            decision: inst.target().map(|r| best_value >= r),
            witness,
            method,
            lists_evaluated: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("method {method} does not apply: buyer {buyer}: {reason}")]
    NotApplicable {
        method: Method,
        buyer: String,
        reason: String,
    },
    #[error("instance too large for exhaustive search: {n} products, limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
}

/// Dispatches to the cheapest applicable solver, trying rc, pa-sc-t1,
/// sepa-sat, sepa-sc-t3 and finally exhaustive search.
///
/// Instances whose buyers all use successive choice skip the rc solver, so
/// the reported method names the successive-choice row.
pub fn solve_auto(inst: &Instance) -> Result<Solution, SolveError> {
    solve_auto_with(inst, &ExactOptions::default())
}

pub fn solve_auto_with(inst: &Instance, exact: &ExactOptions) -> Result<Solution, SolveError> {
    use crate::instance::Rule;
    let all_sc = inst.m() > 0 && inst.buyers().iter().all(|b| b.rule() == Rule::Successive);
    if !all_sc {
        if let Ok(s) = solve_rc(inst) {
            return Ok(s);
        }
    }
    solve_pa_sc_singleton(inst)
        .or_else(|_| solve_sepa_sat(inst))
        .or_else(|_| solve_sepa_sc_small_tc(inst))
        .or_else(|_| solve_exact(inst, exact))
}

/// Runs a specific method, or [`solve_auto_with`] when `method` is `None`.
pub fn solve_with(
    inst: &Instance,
    method: Option<Method>,
    exact: &ExactOptions,
) -> Result<Solution, SolveError> {
    match method {
        None => solve_auto_with(inst, exact),
        Some(Method::Rc) => solve_rc(inst),
        Some(Method::PaScSingleton) => solve_pa_sc_singleton(inst),
        Some(Method::SepaSat) => solve_sepa_sat(inst),
        Some(Method::SepaScSmallTc) => solve_sepa_sc_small_tc(inst),
        Some(Method::Exact) => solve_exact(inst, exact),
    }
}
