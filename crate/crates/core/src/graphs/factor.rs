//! Petersen 2-factorization and 1-factorization of regular bipartite multigraphs.

use std::collections::VecDeque;

use super::{Edge, LoopedMultigraph};
use crate::{Error, Result};

/// Multigraph in the classical convention: a loop contributes 2 to the degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalMultigraph {
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl ClassicalMultigraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a - 1] += 1;
            d[b - 1] += 1;
        }
        d
    }
}

/// Where an edge of the normalized graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// An ordinary edge of the input.
    Edge,
    /// Two input loops, at the given vertices, joined into one edge or classical loop.
    LoopPair(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub graph: ClassicalMultigraph,
    pub origin: Vec<EdgeOrigin>,
}

impl Normalized {
    /// Maps a set of normalized edge indices back to the loop-degree-1 convention.
    pub fn back_map(&self, idx: &[usize]) -> LoopedMultigraph {
        let mut edges = Vec::with_capacity(idx.len() * 2);
        for &i in idx {
            match self.origin[i] {
                EdgeOrigin::Edge => edges.push(self.graph.edges[i]),
                EdgeOrigin::LoopPair(u, v) => {
                    edges.push((u, u));
                    edges.push((v, v));
                }
            }
        }
        LoopedMultigraph::new(self.graph.n, edges).expect("vertices stay in range")
    }
}

/// Pairs loops so that degrees are preserved in the classical convention:
/// the two lowest vertices still holding loops are joined first, and loops
/// left at a single vertex become classical loops, two at a time.
pub fn normalize_loops(g: &LoopedMultigraph) -> Result<Normalized> {
    let loops = g.loop_count();
    if loops % 2 == 1 {
        return Err(Error::Graph(format!("odd number of loops ({loops})")));
    }
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    for &e in g.edges() {
        if e.0 != e.1 {
            edges.push(e);
            origin.push(EdgeOrigin::Edge);
        }
    }
    let mut left: Vec<(usize, usize)> = (1..=g.n())
        .map(|v| (v, g.loops_at(v)))
        .filter(|&(_, c)| c > 0)
        .collect();
    while !left.is_empty() {
        if left.len() == 1 {
            let (v, c) = left[0];
            for _ in 0..c / 2 {
                edges.push((v, v));
                origin.push(EdgeOrigin::LoopPair(v, v));
            }
            break;
        }
        let (u, cu) = left[0];
        let (v, cv) = left[1];
        let m = cu.min(cv);
        for _ in 0..m {
            edges.push((u, v));
            origin.push(EdgeOrigin::LoopPair(u, v));
        }
        left[0].1 -= m;
        left[1].1 -= m;
        left.retain(|&(_, c)| c > 0);
    }
    Ok(Normalized {
        graph: ClassicalMultigraph { n: g.n(), edges },
        origin,
    })
}

/// Perfect matchings partitioning a regular bipartite multigraph given by arcs
/// `(left, right)`. Returns arc indices per matching.
fn factorize_regular_bipartite(left: usize, right: usize, arcs: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut ldeg = vec![0usize; left];
    let mut rdeg = vec![0usize; right];
    for &(a, b) in arcs {
        ldeg[a] += 1;
        rdeg[b] += 1;
    }
    let d = ldeg.first().copied().unwrap_or(0);
    if ldeg.iter().chain(&rdeg).any(|&x| x != d) || (d > 0 && left != right) {
        return Err(Error::Graph("bipartite graph is not regular".into()));
    }
    let mut alive = vec![true; arcs.len()];
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        let m = perfect_matching(left, right, arcs, &alive)
            .ok_or_else(|| Error::Graph("regular bipartite graph without perfect matching".into()))?;
        for &i in &m {
            alive[i] = false;
        }
        out.push(m);
    }
    Ok(out)
}

/// Kuhn's augmenting-path matching restricted to live arcs; arc indices sorted.
pub(crate) fn perfect_matching(
    left: usize,
    right: usize,
    arcs: &[(usize, usize)],
    alive: &[bool],
) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); left];
    for (i, &(a, _)) in arcs.iter().enumerate() {
        if alive[i] {
            adj[a].push(i);
        }
    }
    let mut match_r: Vec<Option<usize>> = vec![None; right];
    for u in 0..left {
        let mut seen = vec![false; right];
        if !augment(u, arcs, &adj, &mut match_r, &mut seen) {
            return None;
        }
    }
    let mut m: Vec<usize> = match_r.into_iter().flatten().collect();
    m.sort_unstable();
    Some(m)
}

fn augment(
    u: usize,
    arcs: &[(usize, usize)],
    adj: &[Vec<usize>],
    match_r: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for &i in &adj[u] {
        let v = arcs[i].1;
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match match_r[v] {
            None => true,
            Some(j) => augment(arcs[j].0, arcs, adj, match_r, seen),
        };
        if free {
            match_r[v] = Some(i);
            return true;
        }
    }
    false
}

/// Eulerian orientation of a classical multigraph with even degrees: arcs
/// `(tail, head)` indexed like `edges`.
fn euler_orientation(n: usize, edges: &[Edge]) -> Vec<(usize, usize)> {
    let mut adj = vec![Vec::new(); n + 1];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((i, b));
        adj[b].push((i, a));
    }
    let mut used = vec![false; edges.len()];
    let mut ptr = vec![0usize; n + 1];
    let mut arcs = vec![(0, 0); edges.len()];
    for start in 1..=n {
        let mut stack: Vec<usize> = vec![start];
        while let Some(&v) = stack.last() {
            while ptr[v] < adj[v].len() && used[adj[v][ptr[v]].0] {
                ptr[v] += 1;
            }
            if ptr[v] == adj[v].len() {
                stack.pop();
                continue;
            }
            let (e, w) = adj[v][ptr[v]];
            used[e] = true;
            arcs[e] = (v, w);
            stack.push(w);
        }
    }
    arcs
}

/// Splits a `2r`-regular graph (loops of degree 1) into `r` spanning 2-regular factors.
pub fn two_factorize(g: &LoopedMultigraph) -> Result<Vec<LoopedMultigraph>> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::Graph("graph is not regular".into()))?;
    if d % 2 == 1 {
        return Err(Error::Graph(format!("degree {d} is odd")));
    }
    let norm = normalize_loops(g)?;
    let arcs = euler_orientation(g.n(), &norm.graph.edges);
    let bip: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    let matchings = factorize_regular_bipartite(g.n(), g.n(), &bip)?;
    let factors: Vec<LoopedMultigraph> = matchings.iter().map(|m| norm.back_map(m)).collect();
    debug_assert!(factors.iter().all(|f| f.regular_degree() == Some(2)));
    debug_assert_eq!(
        factors.iter().fold(LoopedMultigraph::empty(g.n()), |a, f| a.union(f)),
        *g
    );
    Ok(factors)
}

fn two_color(g: &LoopedMultigraph) -> Result<Vec<u8>> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n + 1];
    for &(a, b) in g.edges() {
        if a == b {
            return Err(Error::Graph(format!("loop at vertex {a} in a bipartite graph")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color = vec![u8::MAX; n + 1];
    for s in 1..=n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    q.push_back(w);
                } else if color[w] == color[v] {
                    return Err(Error::Graph("graph is not bipartite".into()));
                }
            }
        }
    }
    Ok(color)
}

/// Splits a `k`-regular bipartite multigraph into `k` perfect matchings.
pub fn one_factorize_bipartite(g: &LoopedMultigraph) -> Result<Vec<LoopedMultigraph>> {
    let color = two_color(g)?;
    let k = g
        .regular_degree()
        .ok_or_else(|| Error::Graph("graph is not regular".into()))?;
    if k == 0 {
        return Ok(vec![]);
    }
    let mut side_index = vec![0usize; g.n() + 1];
    let (mut nl, mut nr) = (0, 0);
    for v in 1..=g.n() {
        if color[v] == 0 {
            side_index[v] = nl;
            nl += 1;
        } else {
            side_index[v] = nr;
            nr += 1;
        }
    }
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (l, r) = if color[a] == 0 { (a, b) } else { (b, a) };
            (side_index[l], side_index[r])
        })
        .collect();
    let matchings = factorize_regular_bipartite(nl, nr, &arcs)?;
    Ok(matchings
        .into_iter()
        .map(|m| LoopedMultigraph::from_sorted(g.n(), {
            let mut e: Vec<Edge> = m.iter().map(|&i| g.edges()[i]).collect();
            e.sort_unstable();
            e
        }))
        .collect())
}

/// A perfect matching of the bipartite double of `g`: vertex `i` gives `M_i`
/// and `N_i`, an edge `(i,j)` gives `M_i N_j` and `M_j N_i`, a loop at `i`
/// gives `M_i N_i`. Returns, for each vertex `i`, the matched `j` and the
/// index in `g.edges()` of the edge used.
pub fn bipartite_double_matching(g: &LoopedMultigraph) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    let mut arcs = Vec::new();
    let mut source = Vec::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        arcs.push((a - 1, b - 1));
        source.push(i);
        if a != b {
            arcs.push((b - 1, a - 1));
            source.push(i);
        }
    }
    let alive = vec![true; arcs.len()];
    let m = perfect_matching(n, n, &arcs, &alive)
        .ok_or_else(|| Error::Graph("bipartite double has no perfect matching".into()))?;
    let mut out = vec![(0, 0); n];
    for i in m {
        let (a, b) = arcs[i];
        out[a] = (b + 1, source[i]);
    }
    Ok(out)
}
