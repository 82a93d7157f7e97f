//! Restricted Betweenness instances and an exhaustive solver.

use std::collections::HashMap;

use super::ReductionError;

/// Two disjoint sets `U`, `V`, an extra element `w`, triples `(u, v, u')` and
/// pairs `(v, u)` standing for the triple `(v, w, u)`.
///
/// Elements are numbered `U` first, then `V`, then `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetweennessInstance {
    u: Vec<String>,
    v: Vec<String>,
    w: String,
    /// `(i, j, k)`: `u[i]`, `v[j]`, `u[k]` with `i != k`.
    c: Vec<(usize, usize, usize)>,
    /// `(i, j)`: `v[i]`, `w`, `u[j]`.
    d: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BetweennessError {
    #[error("element {0} declared more than once")]
    Duplicate(String),
    #[error("unknown {set} element {name}")]
    Unknown { set: &'static str, name: String },
    #[error("C endpoints must differ: ({0}, {1}, {0})")]
    EqualEndpoints(String, String),
    #[error("index out of range in {0}")]
    IndexOutOfRange(&'static str),
}

impl BetweennessInstance {
    /// Builds an instance from index-level constraints.
    pub fn new(
        u: Vec<String>,
        v: Vec<String>,
        w: String,
        c: Vec<(usize, usize, usize)>,
        d: Vec<(usize, usize)>,
    ) -> Result<Self, BetweennessError> {
        let mut seen = HashMap::new();
        for name in u.iter().chain(&v).chain(std::iter::once(&w)) {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(BetweennessError::Duplicate(name.clone()));
            }
        }
        for &(i, j, k) in &c {
            if i >= u.len() || k >= u.len() || j >= v.len() {
                return Err(BetweennessError::IndexOutOfRange("C"));
            }
            if i == k {
                return Err(BetweennessError::EqualEndpoints(u[i].clone(), v[j].clone()));
            }
        }
        // v_i and u_j come from different sets, so i and j are only range-checked.
        for &(i, j) in &d {
            if i >= v.len() || j >= u.len() {
                return Err(BetweennessError::IndexOutOfRange("D"));
            }
        }
        Ok(BetweennessInstance { u, v, w, c, d })
    }

    /// Builds an instance from name-level constraints.
    pub fn from_names(
        u: Vec<String>,
        v: Vec<String>,
        w: String,
        c: &[(String, String, String)],
        d: &[(String, String)],
    ) -> Result<Self, BetweennessError> {
        let index = |set: &'static str, names: &[String], name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| BetweennessError::Unknown {
                    set,
                    name: name.to_string(),
                })
        };
        let c = c
            .iter()
            .map(|(a, b, e)| Ok((index("U", &u, a)?, index("V", &v, b)?, index("U", &u, e)?)))
            .collect::<Result<Vec<_>, BetweennessError>>()?;
        let d = d
            .iter()
            .map(|(a, b)| Ok((index("V", &v, a)?, index("U", &u, b)?)))
            .collect::<Result<Vec<_>, BetweennessError>>()?;
        BetweennessInstance::new(u, v, w, c, d)
    }

    pub fn u(&self) -> &[String] {
        &self.u
    }

    pub fn v(&self) -> &[String] {
        &self.v
    }

    pub fn w(&self) -> &str {
        &self.w
    }

    pub fn c(&self) -> &[(usize, usize, usize)] {
        &self.c
    }

    pub fn d(&self) -> &[(usize, usize)] {
        &self.d
    }

    /// `|U| + |V| + 1`.
    pub fn element_count(&self) -> usize {
        self.u.len() + self.v.len() + 1
    }

    pub fn element_name(&self, e: usize) -> &str {
        let (x, y) = (self.u.len(), self.v.len());
        if e < x {
            &self.u[e]
        } else if e < x + y {
            &self.v[e - x]
        } else {
            &self.w
        }
    }

    pub fn u_element(&self, i: usize) -> usize {
        i
    }

    pub fn v_element(&self, j: usize) -> usize {
        self.u.len() + j
    }

    pub fn w_element(&self) -> usize {
        self.u.len() + self.v.len()
    }

    /// C-triples as element triples.
    pub fn c_triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.c
            .iter()
            .map(|&(i, j, k)| [self.u_element(i), self.v_element(j), self.u_element(k)])
    }

    /// D-pairs expanded to element triples `(v, w, u)`.
    pub fn d_triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.d
            .iter()
            .map(|&(i, j)| [self.v_element(i), self.w_element(), self.u_element(j)])
    }

    /// All constraints, C first.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        self.c_triples().chain(self.d_triples()).collect()
    }

    /// `true` iff `order` (a permutation of the elements) puts every middle
    /// element strictly between its endpoints.
    pub fn is_satisfied_by(&self, order: &[usize]) -> bool {
        let mut pos = vec![usize::MAX; self.element_count()];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        self.triples().iter().all(|&[a, b, c]| {
            let (pa, pb, pc) = (pos[a], pos[b], pos[c]);
            (pa < pb && pb < pc) || (pc < pb && pb < pa)
        })
    }
}

/// A satisfying order of the elements, or `None` when none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetweennessSolution {
    pub order: Option<Vec<usize>>,
}

impl BetweennessSolution {
    pub fn is_satisfiable(&self) -> bool {
        self.order.is_some()
    }
}

pub const DEFAULT_BETWEENNESS_LIMIT: usize = 9;

/// Rearranges `a` into the next permutation in lexicographic order; returns
/// `false` (leaving `a` sorted ascending) after the last one.
pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        a.reverse();
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Tries every order of the elements in lexicographic order and returns the
/// first satisfying one.
pub fn solve_betweenness_exhaustive(
    inst: &BetweennessInstance,
    limit: usize,
) -> Result<BetweennessSolution, ReductionError> {
    let n = inst.element_count();
    if n > limit {
        return Err(ReductionError::TooLarge { n, limit });
    }
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        if inst.is_satisfied_by(&order) {
            return Ok(BetweennessSolution { order: Some(order) });
        }
        if !next_permutation(&mut order) {
            return Ok(BetweennessSolution { order: None });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn t3(a: &str, b: &str, c: &str) -> (String, String, String) {
        (a.into(), b.into(), c.into())
    }

    fn t2(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }

    #[test]
    fn satisfiable_triple() {
        let i = BetweennessInstance::from_names(
            names(&["u1", "u2"]),
            names(&["v1"]),
            "w".into(),
            &[t3("u1", "v1", "u2")],
            &[],
        )
        .unwrap();
        let s = solve_betweenness_exhaustive(&i, 9).unwrap();
        // u1=0 u2=1 v1=2 w=3; lexicographically first is (0, 2, 1, 3).
        assert_eq!(s.order, Some(vec![0, 2, 1, 3]));
    }

    #[test]
    fn unconstrained_is_satisfiable() {
        let i =
            BetweennessInstance::new(names(&["u1"]), vec![], "w".into(), vec![], vec![]).unwrap();
        assert_eq!(
            solve_betweenness_exhaustive(&i, 9).unwrap().order,
            Some(vec![0, 1])
        );
    }

    #[test]
    fn w_on_both_sides_is_unsatisfiable() {
        let i = BetweennessInstance::from_names(
            names(&["u1", "u2"]),
            names(&["v1"]),
            "w".into(),
            &[t3("u1", "v1", "u2")],
            &[t2("v1", "u1"), t2("v1", "u2")],
        )
        .unwrap();
        assert!(!solve_betweenness_exhaustive(&i, 9)
            .unwrap()
            .is_satisfiable());
    }

    #[test]
    fn invalid_instances() {
        let err = BetweennessInstance::from_names(
            names(&["u1"]),
            names(&["v1"]),
            "w".into(),
            &[t3("u1", "v1", "u1")],
            &[],
        )
        .unwrap_err();
        assert_eq!(
            err,
            BetweennessError::EqualEndpoints("u1".into(), "v1".into())
        );
        assert!(matches!(
            BetweennessInstance::new(names(&["a"]), names(&["a"]), "w".into(), vec![], vec![]),
            Err(BetweennessError::Duplicate(_))
        ));
        assert!(matches!(
            BetweennessInstance::from_names(
                names(&["u"]),
                names(&["v"]),
                "w".into(),
                &[],
                &[t2("u", "v")]
            ),
            Err(BetweennessError::Unknown { set: "V", .. })
        ));
    }

    #[test]
    fn too_large() {
        let u: Vec<String> = (0..9).map(|i| format!("u{i}")).collect();
        let i = BetweennessInstance::new(u, vec![], "w".into(), vec![], vec![]).unwrap();
        assert!(matches!(
            solve_betweenness_exhaustive(&i, 9),
            Err(ReductionError::TooLarge { n: 10, limit: 9 })
        ));
    }

    #[test]
    fn permutation_order() {
        let mut a = vec![0, 1, 2];
        let mut seen = vec![a.clone()];
        while next_permutation(&mut a) {
            seen.push(a.clone());
        }
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }
}
