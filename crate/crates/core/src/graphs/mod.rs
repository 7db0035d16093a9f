//! Multigraphs whose loops contribute degree 1, and the dictionary between
//! them and Plücker monomials in `p_i`, `p_ij`: an edge `(i,j)` is `p_ij`, a
//! loop at `i` is `p_i`.

mod classify;
mod extract;
mod factor;
mod merge;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::plucker::{PluckerMonomial, PluckerPoly};
use crate::{Error, Rational, Result};

pub use classify::{classify_two_regular, decompose, one_factor_max2, Component, ComponentKind, Piece};
pub use extract::{
    balance_loops, extract_degree_one, extract_with, interchange_candidates, relation_candidates, ExtractOptions,
    Interchange, Split,
};
pub use factor::{
    bipartite_double_matching, normalize_loops, one_factorize_bipartite, two_factorize, ClassicalMultigraph,
    EdgeOrigin, Normalized,
};
pub use merge::{break_with_loop, merge_odd_cycles, merge_on_edges};

pub type Edge = (usize, usize);

fn norm(e: Edge) -> Edge {
    if e.0 <= e.1 {
        e
    } else {
        (e.1, e.0)
    }
}

/// Multigraph on vertices `1..=n`; `(i, i)` is a loop of degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopedMultigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl LoopedMultigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(norm).collect();
        if let Some(e) = edges.iter().find(|e| e.0 == 0 || e.1 > n) {
            return Err(Error::Graph(format!("edge {e:?} leaves vertex range 1..={n}")));
        }
        edges.sort_unstable();
        Ok(LoopedMultigraph { n, edges })
    }

    pub(crate) fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] <= w[1]));
        LoopedMultigraph { n, edges }
    }

    pub fn empty(n: usize) -> Self {
        LoopedMultigraph { n, edges: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges and loops in sorted order, with multiplicity.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Loop vertices with multiplicity, ascending.
    pub fn loops(&self) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == e.1).map(|e| e.0).collect()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.0 == e.1).count()
    }

    pub fn count(&self, e: Edge) -> usize {
        let e = norm(e);
        let lo = self.edges.partition_point(|x| *x < e);
        let hi = self.edges.partition_point(|x| *x <= e);
        hi - lo
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.count((v, v))
    }

    /// Degrees of vertices `1..=n` (index 0 is vertex 1).
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a - 1] += 1;
            if a != b {
                d[b - 1] += 1;
            }
        }
        d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees()[v - 1]
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            None => Some(0),
            Some(&x) => d.iter().all(|&y| y == x).then_some(x),
        }
    }

    pub fn add(&mut self, e: Edge) {
        let e = norm(e);
        let pos = self.edges.partition_point(|x| *x <= e);
        self.edges.insert(pos, e);
    }

    /// Removes one copy of `e`; false if absent.
    pub fn remove(&mut self, e: Edge) -> bool {
        let e = norm(e);
        match self.edges.binary_search(&e) {
            Ok(i) => {
                self.edges.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn union(&self, other: &LoopedMultigraph) -> LoopedMultigraph {
        let mut e = self.edges.clone();
        e.extend_from_slice(&other.edges);
        e.sort_unstable();
        LoopedMultigraph::from_sorted(self.n.max(other.n), e)
    }

    /// Multiset difference; `None` unless `other` is contained in `self`.
    pub fn minus(&self, other: &LoopedMultigraph) -> Option<LoopedMultigraph> {
        let mut out = Vec::with_capacity(self.edges.len());
        let mut j = 0;
        for &e in &self.edges {
            if j < other.edges.len() && other.edges[j] == e {
                j += 1;
            } else {
                if j < other.edges.len() && other.edges[j] < e {
                    return None;
                }
                out.push(e);
            }
        }
        (j == other.edges.len()).then(|| LoopedMultigraph::from_sorted(self.n, out))
    }

    pub fn contains(&self, other: &LoopedMultigraph) -> bool {
        self.minus(other).is_some()
    }

    /// Distinct edges with multiplicities.
    pub fn multiplicities(&self) -> BTreeMap<Edge, usize> {
        let mut m = BTreeMap::new();
        for &e in &self.edges {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        })
        .expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(s)?;
        LoopedMultigraph::new(g.n, g.edges.into_iter().map(|[a, b]| (a, b)))
    }

    /// Graphviz rendering; loops are drawn as self-edges.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 1..=self.n {
            let _ = writeln!(s, "  v{v};");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Graph of a monomial in `p_i` and `p_ij`.
pub fn graph_of_monomial(m: &PluckerMonomial) -> Result<LoopedMultigraph> {
    let mut edges = Vec::with_capacity(m.len());
    for f in m.factors() {
        match f.as_slice() {
            [i] => edges.push((*i as usize, *i as usize)),
            [i, j] => edges.push((*i as usize, *j as usize)),
            _ => return Err(Error::UnsupportedProfile(m.lengths())),
        }
    }
    LoopedMultigraph::new(m.n(), edges)
}

pub fn monomial_of_graph(g: &LoopedMultigraph) -> PluckerMonomial {
    let rows = g
        .edges
        .iter()
        .map(|&(a, b)| if a == b { vec![a as u8] } else { vec![a as u8, b as u8] })
        .collect();
    PluckerMonomial::new(g.n, rows).expect("graph vertices are in range")
}

/// A rational combination of graphs, mirroring a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GraphCombo {
    terms: Vec<(Rational, LoopedMultigraph)>,
}

impl GraphCombo {
    pub fn new(terms: impl IntoIterator<Item = (Rational, LoopedMultigraph)>) -> Self {
        let mut acc: BTreeMap<LoopedMultigraph, Rational> = BTreeMap::new();
        for (c, g) in terms {
            *acc.entry(g).or_insert_with(Rational::zero) += c;
        }
        GraphCombo {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(g, c)| (c, g)).collect(),
        }
    }

    pub fn single(g: LoopedMultigraph) -> Self {
        GraphCombo {
            terms: vec![(Rational::one(), g)],
        }
    }

    pub fn terms(&self) -> &[(Rational, LoopedMultigraph)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_poly(&self) -> PluckerPoly {
        let n = self.terms.iter().map(|(_, g)| g.n).max().unwrap_or(0);
        PluckerPoly::from_terms(
            n,
            self.terms.iter().map(|(c, g)| (c.clone(), monomial_of_graph(g))),
        )
    }

    pub fn from_poly(p: &PluckerPoly) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            terms.push((c.clone(), graph_of_monomial(m)?));
        }
        Ok(GraphCombo::new(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plucker::parse_monomial;

    #[test]
    fn worked_example_graph() {
        let m = parse_monomial("p[1,2]^2p[1,4]^3p[2,4]^2p[2,5]p[3,5]^4p[3,6]p[6]^4", Some(6)).unwrap();
        let g = graph_of_monomial(&m).unwrap();
        assert_eq!(g.regular_degree(), Some(5));
        assert_eq!(g.loops(), vec![6; 4]);
        assert_eq!(monomial_of_graph(&g), m);
    }

    #[test]
    fn multiset_ops() {
        let g = LoopedMultigraph::new(4, [(1, 2), (2, 1), (3, 3), (3, 4)]).unwrap();
        assert_eq!(g.count((2, 1)), 2);
        let h = LoopedMultigraph::new(4, [(1, 2), (3, 3)]).unwrap();
        let d = g.minus(&h).unwrap();
        assert_eq!(d.edges(), &[(1, 2), (3, 4)]);
        assert!(d.minus(&h).is_none());
        assert_eq!(d.union(&h), g);
        assert_eq!(LoopedMultigraph::from_json(&g.to_json()).unwrap(), g);
    }
}
