//! Checks a reduction on one small instance by solving both sides.

use crate::instance::evaluate_list;
use crate::solvers::{solve_exact, ExactOptions, Solution};

use super::{
    reduce, solve_betweenness_exhaustive, BetweennessInstance, BetweennessSolution, ReductionError,
    ReductionTarget, DEFAULT_BETWEENNESS_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationLimits {
    /// Largest betweenness instance (in elements) to solve exhaustively.
    pub betweenness_limit: usize,
    pub exact: ExactOptions,
}

impl Default for VerificationLimits {
    fn default() -> Self {
        VerificationLimits {
            betweenness_limit: DEFAULT_BETWEENNESS_LIMIT,
            exact: ExactOptions {
                limit: DEFAULT_BETWEENNESS_LIMIT + 2,
                early_exit: true,
                prune: true,
                workers: 1,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub target: ReductionTarget,
    pub betweenness: BetweennessSolution,
    pub reduced: Solution,
    /// The satisfying order, embedded, reaches the reduced target.
    pub forward: Option<bool>,
    /// The reduced witness, projected, satisfies the betweenness instance.
    pub backward: Option<bool>,
    pub equivalent: bool,
    pub transcript: Vec<String>,
}

/// Solves `inst` exhaustively and its reduction exactly, and checks that the
/// answers agree and that witnesses map across in both directions.
pub fn verify_reduction_equivalence(
    inst: &BetweennessInstance,
    target: ReductionTarget,
    limits: &VerificationLimits,
) -> Result<EquivalenceReport, ReductionError> {
    let betweenness = solve_betweenness_exhaustive(inst, limits.betweenness_limit)?;
    let reduced_inst = reduce(inst, target)?;
    let reduced = solve_exact(&reduced_inst, &limits.exact)?;
    let cat = reduced_inst.catalog();
    let goal = reduced_inst.target().expect("reductions set a target");

    let mut transcript = vec![
        format!("reduction={target}"),
        format!(
            "elements={} c={} d={}",
            inst.element_count(),
            inst.c().len(),
            inst.d().len()
        ),
        format!(
            "products={} buyers={} target={goal}",
            reduced_inst.n(),
            reduced_inst.m()
        ),
    ];

    let forward = betweenness.order.as_ref().map(|order| {
        let names: Vec<&str> = order.iter().map(|&e| inst.element_name(e)).collect();
        transcript.push(format!("betweenness=yes order={}", names.join(",")));
        let list = target.embed_order(inst, order);
        let value = evaluate_list(&reduced_inst, &list);
        transcript.push(format!(
            "embedded list={} value={value}",
            cat.format_list(&list)
        ));
        value >= goal
    });
    if forward.is_none() {
        transcript.push("betweenness=no".to_string());
    }

    let decision = reduced.decision.expect("reduced instance has a target");
    transcript.push(format!(
        "reduced decision={} best_value={} lists_evaluated={}",
        if decision { "yes" } else { "no" },
        reduced.best_value,
        reduced.lists_evaluated
    ));
    let backward = match (&reduced.witness, decision) {
        (Some(list), true) => {
            let order = target.project_list(inst, list);
            let ok = inst.is_satisfied_by(&order);
            transcript.push(format!(
                "reduced witness={} projects to a solution: {ok}",
                cat.format_list(list)
            ));
            Some(ok)
        }
        _ => None,
    };

    let equivalent = betweenness.is_satisfiable() == decision
        && forward != Some(false)
        && backward != Some(false);
    transcript.push(format!("equivalent={equivalent}"));
    Ok(EquivalenceReport {
        target,
        betweenness,
        reduced,
        forward,
        backward,
        equivalent,
        transcript,
    })
}
