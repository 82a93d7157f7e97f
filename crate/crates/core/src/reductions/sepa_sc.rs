//! Betweenness to single-direction product arrangement with left-biased
//! successive-choice buyers whose top cycles have four products.

use crate::catalog::{Catalog, ProductId};
use crate::instance::{Buyer, Direction, Instance};
use crate::money::Money;
use crate::preference::Tournament;

use super::gadgets::{GadgetLibrary, GadgetSymbol, GadgetTemplate};
use super::linear::{constraint_labels, product_name};
use super::BetweennessInstance;

pub const SC_U_PROFIT: i64 = 31;
pub const SC_V_PROFIT: i64 = 32;
pub const SC_W_PROFIT: i64 = 33;
pub const D1_PROFIT: i64 = 1;
pub const D2_PROFIT: i64 = 35;

/// Best total of the four buyers of a C-triple.
pub const C_GADGET_VALUE: i64 = 129;
/// Best total of the fourteen buyers of a D-pair.
pub const D_GADGET_VALUE: i64 = 464;

fn gadget_tournament(n: usize, template: &GadgetTemplate, bind: [ProductId; 5]) -> Tournament {
    let symbol = |p: usize| {
        template
            .symbols
            .iter()
            .copied()
            .find(|&s| bind[s as usize] == ProductId(p))
    };
    Tournament::from_fn(n, |i, j| match (symbol(i), symbol(j)) {
        (Some(a), Some(b)) => template.beats(a, b),
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => true,
    })
}

/// Products `p(e)` for the elements (31 for `U`, 32 for `V`, 33 for `w`),
/// then `d1` (1) and `d2` (35). Every C-triple `(a, b, c)` gets one buyer per
/// C role and every D-pair one buyer per unit of each D role's multiplicity,
/// with `a, b, c` bound to first, middle and last. Target
/// `129|C| + 464|D|`.
pub fn reduce_to_sepa_sc(inst: &BetweennessInstance, lib: &GadgetLibrary) -> Instance {
    let mut entries = Vec::with_capacity(inst.element_count() + 2);
    for name in inst.u() {
        entries.push((product_name(name), Money::from_units(SC_U_PROFIT)));
    }
    for name in inst.v() {
        entries.push((product_name(name), Money::from_units(SC_V_PROFIT)));
    }
    entries.push((product_name(inst.w()), Money::from_units(SC_W_PROFIT)));
    let d1 = ProductId(entries.len());
    entries.push(("d1".to_string(), Money::from_units(D1_PROFIT)));
    let d2 = ProductId(entries.len());
    entries.push(("d2".to_string(), Money::from_units(D2_PROFIT)));
    let n = entries.len();
    let catalog = Catalog::new(entries).expect("reduction catalog is valid");

    let c_count = inst.c().len();
    let mut buyers = Vec::new();
    for (k, (label, [a, b, c])) in constraint_labels(inst)
        .into_iter()
        .zip(inst.triples())
        .enumerate()
    {
        let roles = if k < c_count {
            &lib.c_buyers
        } else {
            &lib.d_buyers
        };
        // indexed by GadgetSymbol discriminant
        let bind = [ProductId(a), ProductId(b), ProductId(c), d1, d2];
        for template in roles {
            let t = gadget_tournament(n, template, bind);
            for copy in 1..=template.multiplicity {
                let name = if template.multiplicity == 1 {
                    format!("{label}.{}", template.role)
                } else {
                    format!("{label}.{}.{copy}", template.role)
                };
                buyers.push(Buyer::successive(name, Direction::Left, t.clone()));
            }
        }
    }
    let target =
        Money::from_units(C_GADGET_VALUE * c_count as i64 + D_GADGET_VALUE * inst.d().len() as i64);
    Instance::new(catalog, buyers, Some(target)).expect("reduction instance is valid")
}

/// Which constraint kind a standalone gadget instance models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    C,
    D,
}

/// One constraint's buyers on just its five products: first, middle, last,
/// `d1`, `d2` (profits 31, 32, 31 for C; 32, 33, 31 for D; then 1 and 35).
pub fn gadget_instance(lib: &GadgetLibrary, kind: GadgetKind) -> Instance {
    let (roles, profits) = match kind {
        GadgetKind::C => (&lib.c_buyers, [SC_U_PROFIT, SC_V_PROFIT, SC_U_PROFIT]),
        GadgetKind::D => (&lib.d_buyers, [SC_V_PROFIT, SC_W_PROFIT, SC_U_PROFIT]),
    };
    let names = ["first", "middle", "last", "d1", "d2"];
    let units = [profits[0], profits[1], profits[2], D1_PROFIT, D2_PROFIT];
    let catalog = Catalog::new(
        names
            .iter()
            .zip(units)
            .map(|(n, u)| (*n, Money::from_units(u))),
    )
    .expect("gadget catalog is valid");
    let bind = [0, 1, 2, 3, 4].map(ProductId);
    let mut buyers = Vec::new();
    for template in roles {
        let t = gadget_tournament(5, template, bind);
        for copy in 1..=template.multiplicity {
            buyers.push(Buyer::successive(
                format!("{}.{copy}", template.role),
                Direction::Left,
                t.clone(),
            ));
        }
    }
    Instance::new(catalog, buyers, None).expect("gadget instance is valid")
}

const _: () = assert!(GadgetSymbol::First as usize == 0 && GadgetSymbol::Dummy2 as usize == 4);
