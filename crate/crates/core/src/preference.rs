//! Tournament and linear preferences over the catalog.

use crate::catalog::ProductId;
use crate::ModelError;

/// A complete asymmetric "is preferred to" relation.
pub trait Beats {
    /// Number of products the relation ranges over.
    fn size(&self) -> usize;

    /// `true` iff `a` is strictly preferred to `b`.
    fn beats(&self, a: ProductId, b: ProductId) -> bool;

    /// `a` is preferred to `b` or equal to it.
    #[inline]
    fn weakly_prefers(&self, a: ProductId, b: ProductId) -> bool {
        a == b || self.beats(a, b)
    }
}

/// Full orientation table: `table[a * n + b]` is set iff `a` beats `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    table: Vec<bool>,
}

impl Tournament {
    /// Orients each pair `i < j` as `i` beats `j` iff `upper_wins(i, j)`.
    pub fn from_fn(n: usize, mut upper_wins: impl FnMut(usize, usize) -> bool) -> Self {
        let mut table = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                if upper_wins(i, j) {
                    table[i * n + j] = true;
                } else {
                    table[j * n + i] = true;
                }
            }
        }
        Tournament { n, table }
    }

    /// Builds a tournament from explicit `(winner, loser)` pairs covering every
    /// unordered pair exactly once.
    pub fn from_pairs(n: usize, pairs: &[(ProductId, ProductId)]) -> Result<Self, ModelError> {
        let mut table = vec![false; n * n];
        for &(w, l) in pairs {
            if w.0 >= n || l.0 >= n {
                return Err(ModelError::PreferenceSize(format!(
                    "pair ({w}, {l}) outside {n} products"
                )));
            }
            if w == l {
                return Err(ModelError::Reflexive(w));
            }
            if table[l.0 * n + w.0] {
                return Err(ModelError::SymmetricPair(w, l));
            }
            if std::mem::replace(&mut table[w.0 * n + l.0], true) {
                return Err(ModelError::DuplicatePair(w, l));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if !table[i * n + j] && !table[j * n + i] {
                    return Err(ModelError::IncompleteTournament(ProductId(i), ProductId(j)));
                }
            }
        }
        Ok(Tournament { n, table })
    }

    /// The transitive tournament induced by a ranking.
    pub fn from_linear(pref: &LinearPreference) -> Self {
        let rank = &pref.rank;
        Tournament::from_fn(rank.len(), |i, j| rank[i] < rank[j])
    }

    /// Same relation with the orientation of `{a, b}` reversed.
    pub fn with_flipped(&self, a: ProductId, b: ProductId) -> Self {
        assert_ne!(a, b);
        let mut t = self.clone();
        let n = self.n;
        t.table.swap(a.0 * n + b.0, b.0 * n + a.0);
        t
    }

    /// Every `(winner, loser)` pair, ordered by the pair's smaller index.
    pub fn pairs(&self) -> Vec<(ProductId, ProductId)> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.table[i * self.n + j] {
                    out.push((ProductId(i), ProductId(j)));
                } else {
                    out.push((ProductId(j), ProductId(i)));
                }
            }
        }
        out
    }
}

impl Beats for Tournament {
    fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn beats(&self, a: ProductId, b: ProductId) -> bool {
        self.table[a.0 * self.n + b.0]
    }
}

/// A transitive preference, stored as a ranking (best first) plus its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearPreference {
    ranking: Vec<ProductId>,
    rank: Vec<u32>,
}

impl LinearPreference {
    pub fn new(ranking: Vec<ProductId>, n: usize) -> Result<Self, ModelError> {
        if ranking.len() != n {
            return Err(ModelError::PreferenceSize(format!(
                "ranking has {} entries, catalog has {n}",
                ranking.len()
            )));
        }
        let mut rank = vec![u32::MAX; n];
        for (i, p) in ranking.iter().enumerate() {
            if p.0 >= n {
                return Err(ModelError::PreferenceSize(format!("{p} out of range")));
            }
            if rank[p.0] != u32::MAX {
                return Err(ModelError::NotAPermutation(format!("{p} ranked twice")));
            }
            rank[p.0] = i as u32;
        }
        Ok(LinearPreference { ranking, rank })
    }

    /// The most preferred product.
    pub fn top(&self) -> ProductId {
        self.ranking[0]
    }

    pub fn ranking(&self) -> &[ProductId] {
        &self.ranking
    }

    /// 0-based rank of `p` (0 = best).
    pub fn rank_of(&self, p: ProductId) -> usize {
        self.rank[p.0] as usize
    }
}

impl Beats for LinearPreference {
    fn size(&self) -> usize {
        self.ranking.len()
    }

    #[inline]
    fn beats(&self, a: ProductId, b: ProductId) -> bool {
        self.rank[a.0] < self.rank[b.0]
    }
}

/// A buyer's preference. Linear preferences keep the compact ranking form so
/// that large catalogs do not need a quadratic table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Preference {
    Linear(LinearPreference),
    Tournament(Tournament),
}

impl Preference {
    pub fn as_linear(&self) -> Option<&LinearPreference> {
        match self {
            Preference::Linear(l) => Some(l),
            Preference::Tournament(_) => None,
        }
    }

    /// Dense table form; linear preferences are expanded.
    pub fn to_tournament(&self) -> Tournament {
        match self {
            Preference::Linear(l) => Tournament::from_linear(l),
            Preference::Tournament(t) => t.clone(),
        }
    }
}

impl Beats for Preference {
    fn size(&self) -> usize {
        match self {
            Preference::Linear(l) => l.size(),
            Preference::Tournament(t) => t.size(),
        }
    }

    #[inline]
    fn beats(&self, a: ProductId, b: ProductId) -> bool {
        match self {
            Preference::Linear(l) => l.beats(a, b),
            Preference::Tournament(t) => t.beats(a, b),
        }
    }
}

impl From<LinearPreference> for Preference {
    fn from(l: LinearPreference) -> Self {
        Preference::Linear(l)
    }
}

impl From<Tournament> for Preference {
    fn from(t: Tournament) -> Self {
        Preference::Tournament(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize) -> ProductId {
        ProductId(i)
    }

    #[test]
    fn incomplete_tournament_names_missing_pair() {
        let err = Tournament::from_pairs(3, &[(p(0), p(1)), (p(1), p(2))]).unwrap_err();
        assert_eq!(err, ModelError::IncompleteTournament(p(0), p(2)));
    }

    #[test]
    fn symmetric_and_reflexive_pairs_rejected() {
        assert_eq!(
            Tournament::from_pairs(2, &[(p(0), p(1)), (p(1), p(0))]),
            Err(ModelError::SymmetricPair(p(1), p(0)))
        );
        assert_eq!(
            Tournament::from_pairs(2, &[(p(0), p(0))]),
            Err(ModelError::Reflexive(p(0)))
        );
    }

    #[test]
    fn linear_matches_induced_tournament() {
        let l = LinearPreference::new(vec![p(2), p(0), p(1)], 3).unwrap();
        let t = Tournament::from_linear(&l);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.beats(p(a), p(b)), t.beats(p(a), p(b)));
            }
        }
        assert_eq!(l.top(), p(2));
        assert_eq!(Tournament::from_pairs(3, &t.pairs()).unwrap(), t);
    }

    #[test]
    fn flip_reverses_one_pair() {
        let t = Tournament::from_fn(3, |_, _| true);
        let f = t.with_flipped(p(0), p(2));
        assert!(f.beats(p(2), p(0)));
        assert!(f.beats(p(0), p(1)));
    }
}
