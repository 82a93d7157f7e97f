//! Buyers, instances, validation of name-level input, and list evaluation.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::catalog::{Catalog, ProductId, ShelfList};
use crate::choice;
use crate::money::Money;
use crate::preference::{Beats, LinearPreference, Preference, Tournament};
use crate::ModelError;

/// Scan direction. `Left` is a left-biased buyer (scans left to right),
/// `Right` a right-biased one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn token(self) -> &'static str {
        match self {
            Direction::Left => "L",
            Direction::Right => "R",
        }
    }
}

impl FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "L" => Ok(Direction::Left),
            "R" => Ok(Direction::Right),
            _ => Err(format!("direction must be L or R, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Rational,
    Satisficing,
    Successive,
}

impl Rule {
    pub fn token(self) -> &'static str {
        match self {
            Rule::Rational => "rc",
            Rule::Satisficing => "sat",
            Rule::Successive => "sc",
        }
    }
}

impl FromStr for Rule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rc" => Ok(Rule::Rational),
            "sat" => Ok(Rule::Satisficing),
            "sc" => Ok(Rule::Successive),
            _ => Err(format!("rule must be rc, sat or sc, got `{s}`")),
        }
    }
}

/// How a buyer picks a product from a list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Behavior {
    Rational(LinearPreference),
    Satisficing {
        preference: Preference,
        threshold: ProductId,
    },
    Successive(Preference),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Buyer {
    name: String,
    direction: Direction,
    behavior: Behavior,
}

impl Buyer {
    pub fn new(name: impl Into<String>, direction: Direction, behavior: Behavior) -> Self {
        Buyer {
            name: name.into(),
            direction,
            behavior,
        }
    }

    pub fn rational(name: impl Into<String>, preference: LinearPreference) -> Self {
        Buyer::new(name, Direction::Left, Behavior::Rational(preference))
    }

    pub fn satisficing(
        name: impl Into<String>,
        direction: Direction,
        preference: impl Into<Preference>,
        threshold: ProductId,
    ) -> Self {
        Buyer::new(
            name,
            direction,
            Behavior::Satisficing {
                preference: preference.into(),
                threshold,
            },
        )
    }

    pub fn successive(
        name: impl Into<String>,
        direction: Direction,
        preference: impl Into<Preference>,
    ) -> Self {
        Buyer::new(name, direction, Behavior::Successive(preference.into()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn behavior(&self) -> &Behavior {
        &self.behavior
    }

    pub fn rule(&self) -> Rule {
        match self.behavior {
            Behavior::Rational(_) => Rule::Rational,
            Behavior::Satisficing { .. } => Rule::Satisficing,
            Behavior::Successive(_) => Rule::Successive,
        }
    }

    pub fn threshold(&self) -> Option<ProductId> {
        match self.behavior {
            Behavior::Satisficing { threshold, .. } => Some(threshold),
            _ => None,
        }
    }

    fn preference_size(&self) -> usize {
        match &self.behavior {
            Behavior::Rational(l) => l.size(),
            Behavior::Satisficing { preference, .. } | Behavior::Successive(preference) => {
                preference.size()
            }
        }
    }
}

/// A validated product-arrangement instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    catalog: Catalog,
    buyers: Vec<Buyer>,
    target: Option<Money>,
}

impl Instance {
    pub fn new(
        catalog: Catalog,
        buyers: Vec<Buyer>,
        target: Option<Money>,
    ) -> Result<Self, ModelError> {
        let n = catalog.len();
        for b in &buyers {
            if b.preference_size() != n {
                return Err(ModelError::PreferenceSize(format!(
                    "buyer {} ranges over {} products, catalog has {n}",
                    b.name,
                    b.preference_size()
                )));
            }
            if let Some(t) = b.threshold() {
                if t.0 >= n {
                    return Err(ModelError::PreferenceSize(format!(
                        "buyer {} threshold {t} out of range",
                        b.name
                    )));
                }
            }
        }
        Ok(Instance {
            catalog,
            buyers,
            target,
        })
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn buyers(&self) -> &[Buyer] {
        &self.buyers
    }

    pub fn target(&self) -> Option<Money> {
        self.target
    }

    pub fn n(&self) -> usize {
        self.catalog.len()
    }

    pub fn m(&self) -> usize {
        self.buyers.len()
    }

    pub fn with_target(mut self, target: Option<Money>) -> Self {
        self.target = target;
        self
    }

    /// Each buyer's chosen product on `list`, in buyer order.
    pub fn choices(&self, list: &ShelfList) -> Vec<ProductId> {
        self.buyers
            .iter()
            .map(|b| choice::choose(b, list))
            .collect()
    }
}

/// Total profit of the buyers' choices on `list`.
pub fn evaluate_list(inst: &Instance, list: &ShelfList) -> Money {
    debug_assert_eq!(list.len(), inst.n());
    inst.buyers
        .iter()
        .map(|b| inst.catalog.profit(choice::choose(b, list)))
        .sum()
}

/// Name-level preference block as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawPreference {
    Rank(Vec<String>),
    Beats(Vec<(String, String)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBuyer {
    pub name: String,
    pub rule: Rule,
    pub direction: Direction,
    pub preference: RawPreference,
    pub threshold: Option<String>,
}

/// An instance in name form, before any invariant has been checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInstance {
    pub products: Vec<(String, Money)>,
    pub buyers: Vec<RawBuyer>,
    pub target: Option<Money>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyCatalog,
    DuplicateProduct(String),
    NegativeProfit(String),
    /// `(buyer, product)`
    UnknownProduct(String, String),
    /// `(buyer, a, b)`
    IncompleteTournament(String, String, String),
    SymmetricPair(String, String, String),
    DuplicatePair(String, String, String),
    SelfPair(String, String),
    /// `(buyer, product)`: product missing from a ranking.
    MissingFromRanking(String, String),
    RankedTwice(String, String),
    MissingThreshold(String),
    UnexpectedThreshold(String),
    RationalNeedsRanking(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EmptyCatalog => write!(f, "catalog declares no products"),
            DuplicateProduct(p) => write!(f, "duplicate product {p}"),
            NegativeProfit(p) => write!(f, "negative profit for product {p}"),
            UnknownProduct(b, p) => write!(f, "buyer {b}: unknown product {p}"),
            IncompleteTournament(b, x, y) => {
                write!(
                    f,
                    "buyer {b}: incomplete tournament: pair {{{x},{y}}} unoriented"
                )
            }
            SymmetricPair(b, x, y) => write!(f, "buyer {b}: symmetric pair {{{x},{y}}}"),
            DuplicatePair(b, x, y) => write!(f, "buyer {b}: pair {x} > {y} declared twice"),
            SelfPair(b, p) => write!(f, "buyer {b}: product {p} compared with itself"),
            MissingFromRanking(b, p) => write!(f, "buyer {b}: ranking omits product {p}"),
            RankedTwice(b, p) => write!(f, "buyer {b}: product {p} ranked twice"),
            MissingThreshold(b) => write!(f, "buyer {b}: sat buyer without threshold"),
            UnexpectedThreshold(b) => write!(f, "buyer {b}: threshold given for non-sat buyer"),
            RationalNeedsRanking(b) => write!(f, "buyer {b}: rc buyer needs a rank preference"),
        }
    }
}

/// Every invariant violation found in a raw instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid instance: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

/// Checks every invariant of a name-level instance, reporting all violations
/// rather than stopping at the first.
pub fn validate_instance(raw: &RawInstance) -> Result<Instance, ValidationError> {
    let mut violations = Vec::new();

    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for (name, profit) in &raw.products {
        if !seen.insert(name.as_str()) {
            violations.push(Violation::DuplicateProduct(name.clone()));
            continue;
        }
        if profit.is_negative() {
            violations.push(Violation::NegativeProfit(name.clone()));
        }
        entries.push((name.clone(), *profit));
    }
    if entries.is_empty() {
        violations.push(Violation::EmptyCatalog);
        return Err(ValidationError { violations });
    }
    let catalog = match Catalog::new(
        entries
            .into_iter()
            .map(|(name, p)| (name, if p.is_negative() { Money::ZERO } else { p })),
    ) {
        Ok(c) => c,
        Err(e) => unreachable!("catalog checks already done: {e}"),
    };

    let mut buyers = Vec::new();
    for rb in &raw.buyers {
        if let Some(b) = validate_buyer(&catalog, rb, &mut violations) {
            buyers.push(b);
        }
    }

    if !violations.is_empty() {
        return Err(ValidationError { violations });
    }
    Instance::new(catalog, buyers, raw.target)
        .map_err(|e| unreachable!("buyers already checked against the catalog: {e}"))
}

fn validate_buyer(catalog: &Catalog, rb: &RawBuyer, out: &mut Vec<Violation>) -> Option<Buyer> {
    let before = out.len();
    let n = catalog.len();
    let name = &rb.name;
    let resolve = |p: &str, out: &mut Vec<Violation>| {
        let id = catalog.lookup(p);
        if id.is_none() {
            out.push(Violation::UnknownProduct(name.clone(), p.to_string()));
        }
        id
    };

    let threshold = match (&rb.threshold, rb.rule) {
        (Some(t), Rule::Satisficing) => resolve(t, out),
        (None, Rule::Satisficing) => {
            out.push(Violation::MissingThreshold(name.clone()));
            None
        }
        (Some(_), _) => {
            out.push(Violation::UnexpectedThreshold(name.clone()));
            None
        }
        (None, _) => None,
    };

    let preference = match &rb.preference {
        RawPreference::Rank(names) => {
            let mut ranking = Vec::with_capacity(names.len());
            let mut seen = vec![false; n];
            for p in names {
                if let Some(id) = resolve(p, out) {
                    if std::mem::replace(&mut seen[id.0], true) {
                        out.push(Violation::RankedTwice(name.clone(), p.clone()));
                    }
                    ranking.push(id);
                }
            }
            for id in catalog.ids().filter(|id| !seen[id.0]) {
                out.push(Violation::MissingFromRanking(
                    name.clone(),
                    catalog.name(id).to_string(),
                ));
            }
            LinearPreference::new(ranking, n)
                .ok()
                .map(Preference::Linear)
        }
        RawPreference::Beats(pairs) => {
            if rb.rule == Rule::Rational {
                out.push(Violation::RationalNeedsRanking(name.clone()));
            }
            let mut table = vec![None::<(usize, usize)>; n * n];
            let mut ids = Vec::with_capacity(pairs.len());
            for (w, l) in pairs {
                let (Some(wi), Some(li)) = (resolve(w, out), resolve(l, out)) else {
                    continue;
                };
                if wi == li {
                    out.push(Violation::SelfPair(name.clone(), w.clone()));
                    continue;
                }
                let (lo, hi) = (wi.0.min(li.0), wi.0.max(li.0));
                match table[lo * n + hi] {
                    Some((pw, _)) if pw == wi.0 => {
                        out.push(Violation::DuplicatePair(name.clone(), w.clone(), l.clone()))
                    }
                    Some(_) => out.push(Violation::SymmetricPair(
                        name.clone(),
                        catalog.name(ProductId(lo)).to_string(),
                        catalog.name(ProductId(hi)).to_string(),
                    )),
                    None => {
                        table[lo * n + hi] = Some((wi.0, li.0));
                        ids.push((wi, li));
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    if table[i * n + j].is_none() {
                        out.push(Violation::IncompleteTournament(
                            name.clone(),
                            catalog.name(ProductId(i)).to_string(),
                            catalog.name(ProductId(j)).to_string(),
                        ));
                    }
                }
            }
            Tournament::from_pairs(n, &ids)
                .ok()
                .map(Preference::Tournament)
        }
    };

    if out.len() > before {
        return None;
    }
    let preference = preference?;
    let behavior = match rb.rule {
        Rule::Rational => match preference {
            Preference::Linear(l) => Behavior::Rational(l),
            Preference::Tournament(_) => return None,
        },
        Rule::Satisficing => Behavior::Satisficing {
            preference,
            threshold: threshold?,
        },
        Rule::Successive => Behavior::Successive(preference),
    };
    Some(Buyer::new(name.clone(), rb.direction, behavior))
}
