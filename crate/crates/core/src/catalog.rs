//! Products, their profits, and shelf lists.

use std::collections::HashMap;
use std::fmt;

use crate::money::Money;
use crate::ModelError;

/// Dense product index, assigned in catalog declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductId(pub usize);

impl ProductId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ProductId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The product set together with the profit function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    names: Vec<String>,
    profits: Vec<Money>,
    by_name: HashMap<String, ProductId>,
}

impl Catalog {
    /// Builds a catalog; names must be unique and profits non-negative.
    pub fn new<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, Money)>,
    ) -> Result<Self, ModelError> {
        let mut names = Vec::new();
        let mut profits = Vec::new();
        let mut by_name = HashMap::new();
        for (name, profit) in entries {
            let name = name.into();
            if profit.is_negative() {
                return Err(ModelError::NegativeProfit(name));
            }
            if by_name
                .insert(name.clone(), ProductId(names.len()))
                .is_some()
            {
                return Err(ModelError::DuplicateProduct(name));
            }
            names.push(name);
            profits.push(profit);
        }
        if names.is_empty() {
            return Err(ModelError::EmptyCatalog);
        }
        Ok(Catalog {
            names,
            profits,
            by_name,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = ProductId> + Clone {
        (0..self.names.len()).map(ProductId)
    }

    pub fn name(&self, id: ProductId) -> &str {
        &self.names[id.0]
    }

    pub fn profit(&self, id: ProductId) -> Money {
        self.profits[id.0]
    }

    pub fn profits(&self) -> &[Money] {
        &self.profits
    }

    pub fn lookup(&self, name: &str) -> Option<ProductId> {
        self.by_name.get(name).copied()
    }

    /// Parses a comma-separated list of product names into a shelf list.
    pub fn parse_list(&self, text: &str) -> Result<ShelfList, ModelError> {
        let order = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                self.lookup(name)
                    .ok_or_else(|| ModelError::UnknownProduct(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ShelfList::new(order, self.len())
    }

    /// Comma-separated product names, in list order.
    pub fn format_list(&self, list: &ShelfList) -> String {
        list.iter()
            .map(|p| self.name(p))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A permutation of the catalog: the shelf designer's decision variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShelfList {
    order: Vec<ProductId>,
}

impl ShelfList {
    /// Checks that `order` is a bijection on `[0, n)`.
    pub fn new(order: Vec<ProductId>, n: usize) -> Result<Self, ModelError> {
        if order.len() != n {
            return Err(ModelError::NotAPermutation(format!(
                "list has {} entries, catalog has {n}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for p in &order {
            if p.0 >= n {
                return Err(ModelError::NotAPermutation(format!("{p} out of range")));
            }
            if std::mem::replace(&mut seen[p.0], true) {
                return Err(ModelError::NotAPermutation(format!("{p} listed twice")));
            }
        }
        Ok(ShelfList { order })
    }

    /// Catalog declaration order.
    pub fn identity(n: usize) -> Self {
        ShelfList {
            order: (0..n).map(ProductId).collect(),
        }
    }

    /// Caller guarantees the permutation invariant.
    pub(crate) fn from_vec_unchecked(order: Vec<ProductId>) -> Self {
        debug_assert!({
            let mut s: Vec<_> = order.iter().map(|p| p.0).collect();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &p)| i == p)
        });
        ShelfList { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[ProductId] {
        &self.order
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = ProductId> + ExactSizeIterator + '_ {
        self.order.iter().copied()
    }

    pub fn reversed(&self) -> ShelfList {
        ShelfList {
            order: self.order.iter().rev().copied().collect(),
        }
    }

    /// `positions()[p]` is the 0-based position of product `p`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, p) in self.order.iter().enumerate() {
            pos[p.0] = i;
        }
        pos
    }

    /// Swaps the products at positions `i` and `i + 1`.
    pub fn swap_adjacent(&mut self, i: usize) {
        self.order.swap(i, i + 1);
    }
}
