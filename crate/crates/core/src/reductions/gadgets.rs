//! Buyer gadgets for the single-direction successive-choice reduction.
//!
//! Each constraint `(a, b, c)` is represented by buyers whose top cycle is
//! four products: the three constraint products plus one dummy (`d1` or
//! `d2`). The buyers' tournaments on those four products are not given
//! explicitly; what is known is how each buyer chooses on every ordering of
//! the four products. Those behaviour tables are embedded below, verbatim in
//! their own notation, and [`derive_gadgets`] searches all 64 tournaments on
//! four products for the strongly connected ones reproducing each column.
//!
//! Table notation: `{x,y} z t : r1 r2` covers the two lists `(x, y, z, t)` and
//! `(y, x, z, t)`; `r1` and `r2` are the choices of the table's two buyer
//! roles.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::catalog::{ProductId, ShelfList};
use crate::choice::choose_successive;
use crate::digraph::is_strongly_connected;
use crate::instance::Direction;
use crate::preference::Tournament;

/// Position of a product within a constraint gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetSymbol {
    /// First element of the constraint (`u_i` in C, `v_i` in D).
    First,
    /// Middle element (`v_j` in C, `w` in D).
    Middle,
    /// Last element (`u_k` in C, `u_j` in D).
    Last,
    Dummy1,
    Dummy2,
}

impl fmt::Display for GadgetSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetSymbol::First => "first",
            GadgetSymbol::Middle => "middle",
            GadgetSymbol::Last => "last",
            GadgetSymbol::Dummy1 => "d1",
            GadgetSymbol::Dummy2 => "d2",
        })
    }
}

use GadgetSymbol::*;

/// C-triple `(u_i, v_j, u_k)`, first two buyers.
const C_TABLE_D1: &str = "
{ui,uk} d1 vj : vj d1
{ui,uk} vj d1 : d1 d1
{ui,d1} uk vj : vj vj
{ui,d1} vj uk : vj uk
{ui,vj} uk d1 : d1 d1
{ui,vj} d1 uk : uk uk
{uk,d1} ui vj : vj ui
{uk,d1} vj ui : vj ui
{uk,vj} ui d1 : d1 ui
{uk,vj} d1 ui : ui ui
{d1,vj} ui uk : ui uk
{d1,vj} uk ui : ui ui
";

/// C-triple `(u_i, v_j, u_k)`, last two buyers.
const C_TABLE_D2: &str = "
{uk,d2} ui vj : vj vj
{uk,d2} vj ui : ui vj
{uk,ui} d2 vj : vj vj
{uk,ui} vj d2 : vj vj
{uk,vj} d2 ui : ui ui
{uk,vj} ui d2 : d2 ui
{d2,ui} uk vj : vj vj
{d2,ui} vj uk : vj uk
{d2,vj} uk ui : ui ui
{d2,vj} ui uk : uk uk
{ui,vj} uk d2 : uk d2
{ui,vj} d2 uk : uk uk
";

/// D-tuple `(v_i, w, u_j)`, first two buyers.
const D_TABLE_D1: &str = "
{vi,uj} d1 w : w d1
{vi,uj} w d1 : d1 d1
{vi,d1} uj w : w w
{vi,d1} w uj : w uj
{vi,w} uj d1 : d1 d1
{vi,w} d1 uj : uj uj
{uj,d1} vi w : w vi
{uj,d1} w vi : w vi
{uj,w} vi d1 : d1 vi
{uj,w} d1 vi : vi vi
{d1,w} vi uj : vi uj
{d1,w} uj vi : vi vi
";

/// D-tuple `(v_i, w, u_j)`, last 5 + 7 buyers: the first column is the
/// choice of the 5 buyers, the second of the 7.
const D_TABLE_D2: &str = "
{uj,d2} vi w : w w
{uj,d2} w vi : vi w
{uj,vi} d2 w : w w
{uj,vi} w d2 : w w
{uj,w} d2 vi : vi vi
{uj,w} vi d2 : d2 vi
{d2,vi} uj w : w w
{d2,vi} w uj : w uj
{d2,w} uj vi : vi vi
{d2,w} vi uj : uj uj
{vi,w} uj d2 : uj d2
{vi,w} d2 uj : uj uj
";

/// FNV-1a over the four tables, in the order above.
pub const TABLE_CHECKSUM: u64 = 0xf222614972b474ab;

pub fn table_checksum() -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for table in [C_TABLE_D1, C_TABLE_D2, D_TABLE_D1, D_TABLE_D2] {
        for &b in table.as_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

fn c_symbol(token: &str) -> Option<GadgetSymbol> {
    Some(match token {
        "ui" => First,
        "vj" => Middle,
        "uk" => Last,
        "d1" => Dummy1,
        "d2" => Dummy2,
        _ => return None,
    })
}

fn d_symbol(token: &str) -> Option<GadgetSymbol> {
    Some(match token {
        "vi" => First,
        "w" => Middle,
        "uj" => Last,
        "d1" => Dummy1,
        "d2" => Dummy2,
        _ => return None,
    })
}

/// One ordering of a gadget's four products and the two recorded choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableEntry {
    pub ordering: [GadgetSymbol; 4],
    pub choices: [GadgetSymbol; 2],
}

fn parse_table(
    text: &str,
    symbol: fn(&str) -> Option<GadgetSymbol>,
) -> Result<Vec<TableEntry>, GadgetError> {
    let bad = |line: &str| GadgetError::MalformedTable(line.to_string());
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (list, result) = line.split_once(':').ok_or_else(|| bad(line))?;
        let list: Vec<&str> = list.split_whitespace().collect();
        let result: Vec<&str> = result.split_whitespace().collect();
        let [pair, third, fourth] = list[..] else {
            return Err(bad(line));
        };
        let [r1, r2] = result[..] else {
            return Err(bad(line));
        };
        let (x, y) = pair
            .strip_prefix('{')
            .and_then(|p| p.strip_suffix('}'))
            .and_then(|p| p.split_once(','))
            .ok_or_else(|| bad(line))?;
        let sym = |t: &str| symbol(t).ok_or_else(|| bad(line));
        let (x, y, z, t) = (sym(x)?, sym(y)?, sym(third)?, sym(fourth)?);
        let choices = [sym(r1)?, sym(r2)?];
        out.push(TableEntry {
            ordering: [x, y, z, t],
            choices,
        });
        out.push(TableEntry {
            ordering: [y, x, z, t],
            choices,
        });
    }
    Ok(out)
}

/// A buyer role: which table column it reproduces and how many buyers play it.
#[derive(Debug, Clone, Copy)]
struct RoleSpec {
    name: &'static str,
    table: &'static str,
    symbol: fn(&str) -> Option<GadgetSymbol>,
    dummy: GadgetSymbol,
    column: usize,
    multiplicity: u32,
}

const C_ROLES: [RoleSpec; 4] = [
    RoleSpec {
        name: "c1",
        table: C_TABLE_D1,
        symbol: c_symbol,
        dummy: Dummy1,
        column: 0,
        multiplicity: 1,
    },
    RoleSpec {
        name: "c2",
        table: C_TABLE_D1,
        symbol: c_symbol,
        dummy: Dummy1,
        column: 1,
        multiplicity: 1,
    },
    RoleSpec {
        name: "c3",
        table: C_TABLE_D2,
        symbol: c_symbol,
        dummy: Dummy2,
        column: 0,
        multiplicity: 1,
    },
    RoleSpec {
        name: "c4",
        table: C_TABLE_D2,
        symbol: c_symbol,
        dummy: Dummy2,
        column: 1,
        multiplicity: 1,
    },
];

const D_ROLES: [RoleSpec; 4] = [
    RoleSpec {
        name: "d1",
        table: D_TABLE_D1,
        symbol: d_symbol,
        dummy: Dummy1,
        column: 0,
        multiplicity: 1,
    },
    RoleSpec {
        name: "d2",
        table: D_TABLE_D1,
        symbol: d_symbol,
        dummy: Dummy1,
        column: 1,
        multiplicity: 1,
    },
    RoleSpec {
        name: "d3",
        table: D_TABLE_D2,
        symbol: d_symbol,
        dummy: Dummy2,
        column: 0,
        multiplicity: 5,
    },
    RoleSpec {
        name: "d4",
        table: D_TABLE_D2,
        symbol: d_symbol,
        dummy: Dummy2,
        column: 1,
        multiplicity: 7,
    },
];

/// Unordered slot pairs, in orientation-vector order.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A buyer's tournament on its four top products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetTemplate {
    pub role: &'static str,
    /// Slot order: first, middle, last, dummy.
    pub symbols: [GadgetSymbol; 4],
    /// `orientation[k]` is `false` when the lower slot of `PAIRS[k]` wins.
    pub orientation: [bool; 6],
    pub multiplicity: u32,
    /// Number of strongly connected tournaments consistent with the table.
    pub consistent: usize,
    /// Expected choice for every ordering of the four symbols.
    pub table: Vec<(Vec<GadgetSymbol>, GadgetSymbol)>,
}

impl GadgetTemplate {
    pub fn slot(&self, s: GadgetSymbol) -> Option<usize> {
        self.symbols.iter().position(|&x| x == s)
    }

    /// `true` iff symbol `a` is preferred to symbol `b`.
    pub fn beats(&self, a: GadgetSymbol, b: GadgetSymbol) -> bool {
        let (Some(sa), Some(sb)) = (self.slot(a), self.slot(b)) else {
            panic!("symbol outside gadget {}", self.role);
        };
        slot_beats(&self.orientation, sa, sb)
    }

    fn slot_tournament(&self) -> Tournament {
        slot_tournament(&self.orientation)
    }

    /// Reverses one orientation (used to build faulty libraries in tests).
    pub fn with_flipped(&self, pair: usize) -> Self {
        let mut t = self.clone();
        t.orientation[pair] = !t.orientation[pair];
        t
    }

    /// Successive choice (left to right) on an ordering of the four symbols.
    pub fn choose(&self, ordering: &[GadgetSymbol]) -> GadgetSymbol {
        let order: Vec<ProductId> = ordering
            .iter()
            .map(|&s| ProductId(self.slot(s).expect("symbol outside gadget")))
            .collect();
        let list = ShelfList::new(order, 4).expect("ordering covers the four symbols");
        self.symbols[choose_successive(&list, &self.slot_tournament(), Direction::Left).0]
    }
}

fn slot_beats(orientation: &[bool; 6], a: usize, b: usize) -> bool {
    if a == b {
        return false;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let k = PAIRS.iter().position(|&p| p == (lo, hi)).unwrap();
    orientation[k] == (a == hi)
}

fn slot_tournament(orientation: &[bool; 6]) -> Tournament {
    Tournament::from_fn(4, |i, j| slot_beats(orientation, i, j))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLibrary {
    pub c_buyers: [GadgetTemplate; 4],
    pub d_buyers: [GadgetTemplate; 4],
}

impl GadgetLibrary {
    pub fn templates(&self) -> impl Iterator<Item = &GadgetTemplate> {
        self.c_buyers.iter().chain(&self.d_buyers)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("embedded behaviour tables fail their checksum ({0:#018x})")]
    Checksum(u64),
    #[error("malformed table line `{0}`")]
    MalformedTable(String),
    #[error("table for role {0} does not cover all 24 orderings exactly once")]
    IncompleteTable(&'static str),
    #[error("no strongly connected tournament reproduces role {0}")]
    NoConsistentTournament(&'static str),
}

fn role_table(spec: &RoleSpec) -> Result<Vec<(Vec<GadgetSymbol>, GadgetSymbol)>, GadgetError> {
    let entries = parse_table(spec.table, spec.symbol)?;
    let mut orderings: Vec<_> = entries.iter().map(|e| e.ordering).collect();
    orderings.sort();
    orderings.dedup();
    let symbols = [First, Middle, Last, spec.dummy];
    let covers = entries.len() == 24
        && orderings.len() == 24
        && orderings.iter().all(|o| {
            let mut s = *o;
            s.sort();
            s == symbols
        });
    if !covers {
        return Err(GadgetError::IncompleteTable(spec.name));
    }
    Ok(entries
        .into_iter()
        .map(|e| (e.ordering.to_vec(), e.choices[spec.column]))
        .collect())
}

fn derive_role(spec: &RoleSpec) -> Result<GadgetTemplate, GadgetError> {
    let table = role_table(spec)?;
    let symbols = [First, Middle, Last, spec.dummy];
    let mut found: Vec<[bool; 6]> = Vec::new();
    for mask in 0u8..64 {
        let orientation: [bool; 6] = std::array::from_fn(|k| mask >> k & 1 == 1);
        if !is_strongly_connected(4, |a, b| slot_beats(&orientation, a, b)) {
            continue;
        }
        let candidate = GadgetTemplate {
            role: spec.name,
            symbols,
            orientation,
            multiplicity: spec.multiplicity,
            consistent: 0,
            table: Vec::new(),
        };
        if table
            .iter()
            .all(|(ord, want)| candidate.choose(ord) == *want)
        {
            found.push(orientation);
        }
    }
    let orientation = *found
        .iter()
        .min()
        .ok_or(GadgetError::NoConsistentTournament(spec.name))?;
    Ok(GadgetTemplate {
        role: spec.name,
        symbols,
        orientation,
        multiplicity: spec.multiplicity,
        consistent: found.len(),
        table,
    })
}

/// Searches, per buyer role, all tournaments on the role's four symbols for
/// strongly connected ones whose left-to-right successive choice matches the
/// embedded table on all 24 orderings; keeps the lexicographically least.
pub fn derive_gadgets() -> Result<GadgetLibrary, GadgetError> {
    let sum = table_checksum();
    if sum != TABLE_CHECKSUM {
        return Err(GadgetError::Checksum(sum));
    }
    let derive_all = |roles: &[RoleSpec; 4]| -> Result<[GadgetTemplate; 4], GadgetError> {
        let v = roles
            .iter()
            .map(derive_role)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(v.try_into().expect("four roles"))
    };
    Ok(GadgetLibrary {
        c_buyers: derive_all(&C_ROLES)?,
        d_buyers: derive_all(&D_ROLES)?,
    })
}

/// The derived library, computed once.
pub fn standard_gadgets() -> Result<&'static GadgetLibrary, GadgetError> {
    static LIBRARY: OnceLock<Result<GadgetLibrary, GadgetError>> = OnceLock::new();
    LIBRARY
        .get_or_init(derive_gadgets)
        .as_ref()
        .map_err(Clone::clone)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetMismatch {
    pub role: &'static str,
    pub ordering: Vec<GadgetSymbol>,
    pub expected: GadgetSymbol,
    pub actual: GadgetSymbol,
}

impl fmt::Display for GadgetMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord: Vec<String> = self.ordering.iter().map(ToString::to_string).collect();
        write!(
            f,
            "role {} on ({}): expected {}, got {}",
            self.role,
            ord.join(","),
            self.expected,
            self.actual
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GadgetReport {
    pub orderings_checked: usize,
    pub mismatches: Vec<GadgetMismatch>,
}

/// Replays every table ordering through successive choice for every role of
/// `lib` and lists the disagreements with the embedded tables.
pub fn verify_gadget_tables(lib: &GadgetLibrary) -> GadgetReport {
    let mut report = GadgetReport::default();
    for (template, spec) in lib.templates().zip(C_ROLES.iter().chain(&D_ROLES)) {
        let table = role_table(spec).expect("embedded tables parse");
        for (ordering, expected) in table {
            report.orderings_checked += 1;
            let actual = template.choose(&ordering);
            if actual != expected {
                report.mismatches.push(GadgetMismatch {
                    role: spec.name,
                    ordering,
                    expected,
                    actual,
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksum_pins_tables() {
        assert_eq!(table_checksum(), TABLE_CHECKSUM);
    }

    #[test]
    fn search_space_is_64_per_role() {
        assert_eq!(1u32 << PAIRS.len(), 64);
    }

    #[test]
    fn every_role_has_a_consistent_tournament() {
        let lib = derive_gadgets().unwrap();
        for t in lib.templates() {
            assert_eq!(t.consistent, 1, "{}", t.role);
            assert!(is_strongly_connected(4, |a, b| slot_beats(
                &t.orientation,
                a,
                b
            )));
        }
        let mult: Vec<u32> = lib.d_buyers.iter().map(|t| t.multiplicity).collect();
        assert_eq!(mult, vec![1, 1, 5, 7]);
    }

    #[test]
    fn first_c_buyer_row() {
        // ({u_i, u_k}, d1, v_j) -> v_j for the first buyer
        let lib = derive_gadgets().unwrap();
        let c1 = &lib.c_buyers[0];
        assert_eq!(c1.choose(&[First, Last, Dummy1, Middle]), Middle);
        assert_eq!(c1.choose(&[Last, First, Dummy1, Middle]), Middle);
    }

    #[test]
    fn library_reproduces_tables() {
        let lib = derive_gadgets().unwrap();
        let report = verify_gadget_tables(&lib);
        assert_eq!(report.orderings_checked, 8 * 24);
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    }

    #[test]
    fn flipped_edge_is_detected() {
        let lib = derive_gadgets().unwrap();
        for role in 0..4 {
            for pair in 0..6 {
                let mut bad = lib.clone();
                bad.c_buyers[role] = bad.c_buyers[role].with_flipped(pair);
                assert!(!verify_gadget_tables(&bad).mismatches.is_empty());
            }
        }
    }

    #[test]
    fn transcription_error_is_caught() {
        let spec = RoleSpec {
            table: "{ui,uk} d1 vj : vj d1\n",
            ..C_ROLES[0]
        };
        assert_eq!(derive_role(&spec), Err(GadgetError::IncompleteTable("c1")));
    }
}
