//! Components of graphs of maximum degree 2.

use super::{Edge, LoopedMultigraph};
use crate::{Error, Result};

/// A connected piece of a graph whose vertices have degree at most 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    /// Vertices in walk order; a cycle does not repeat its first vertex.
    pub vertices: Vec<usize>,
    pub closed: bool,
    /// Vertices carrying loops, with multiplicity.
    pub loops: Vec<usize>,
    /// Non-loop edges in walk order.
    pub edges: Vec<Edge>,
}

impl Piece {
    pub fn is_odd_cycle(&self) -> bool {
        self.closed && self.vertices.len() % 2 == 1
    }
}

/// Splits a graph of maximum degree 2 into paths and cycles. Paths are listed
/// first (from their smaller free end, ascending), then cycles.
pub fn decompose(g: &LoopedMultigraph) -> Result<Vec<Piece>> {
    let n = g.n();
    if let Some(v) = g.degrees().iter().position(|&d| d > 2) {
        return Err(Error::Graph(format!("vertex {} has degree above 2", v + 1)));
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    let mut loops = vec![0usize; n + 1];
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if a == b {
            loops[a] += 1;
        } else {
            adj[a].push((i, b));
            adj[b].push((i, a));
        }
    }
    let mut used = vec![false; g.edge_count()];
    let mut seen = vec![false; n + 1];
    let mut pieces = Vec::new();
    let walk = |start: usize, seen: &mut Vec<bool>, used: &mut Vec<bool>| -> Piece {
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        seen[start] = true;
        let mut v = start;
        let mut closed = false;
        while let Some(&(e, w)) = adj[v].iter().find(|(e, _)| !used[*e]) {
            used[e] = true;
            edges.push(g.edges()[e]);
            if w == start {
                closed = true;
                break;
            }
            seen[w] = true;
            vertices.push(w);
            v = w;
        }
        let lp = vertices
            .iter()
            .flat_map(|&x| std::iter::repeat_n(x, loops[x]))
            .collect();
        Piece {
            vertices,
            closed,
            loops: lp,
            edges,
        }
    };
    for v in 1..=n {
        if !seen[v] && adj[v].len() <= 1 {
            pieces.push(walk(v, &mut seen, &mut used));
        }
    }
    for v in 1..=n {
        if !seen[v] {
            pieces.push(walk(v, &mut seen, &mut used));
        }
    }
    Ok(pieces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    EvenCycle,
    OddCycle,
    /// Path of even length with a loop at each end.
    EvenPath,
    /// Path of odd length with a loop at each end.
    OddPath,
    DoubleLoop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

/// Tags the components of a 2-regular graph.
pub fn classify_two_regular(g: &LoopedMultigraph) -> Result<Vec<Component>> {
    if g.n() > 0 && g.regular_degree() != Some(2) {
        return Err(Error::Graph("graph is not 2-regular".into()));
    }
    Ok(decompose(g)?
        .into_iter()
        .map(|p| {
            let kind = if p.closed {
                if p.vertices.len() % 2 == 0 {
                    ComponentKind::EvenCycle
                } else {
                    ComponentKind::OddCycle
                }
            } else if p.vertices.len() == 1 {
                ComponentKind::DoubleLoop
            } else if p.edges.len() % 2 == 0 {
                ComponentKind::EvenPath
            } else {
                ComponentKind::OddPath
            };
            let mut edges = p.edges;
            edges.extend(p.loops.iter().map(|&v| (v, v)));
            Component {
                kind,
                vertices: p.vertices,
                edges,
            }
        })
        .collect())
}

/// A spanning subgraph in which every vertex has degree exactly 1, for a graph
/// of maximum degree 2 without odd cycles. Loops are used where the piece has them.
pub fn one_factor_max2(g: &LoopedMultigraph) -> Result<Option<LoopedMultigraph>> {
    let mut out = Vec::new();
    for p in decompose(g)? {
        let v = &p.vertices;
        let m = v.len();
        if p.closed {
            if m % 2 == 1 {
                return Ok(None);
            }
            out.extend(p.edges.iter().step_by(2).copied());
            continue;
        }
        if m == 1 {
            if p.loops.is_empty() {
                return Ok(None);
            }
            out.push((v[0], v[0]));
            continue;
        }
        let first = p.loops.contains(&v[0]);
        let last = p.loops.contains(&v[m - 1]);
        if m % 2 == 0 {
            if first && last {
                out.push((v[0], v[0]));
                if m > 2 {
                    out.extend(p.edges[1..m - 2].iter().step_by(2).copied());
                }
                out.push((v[m - 1], v[m - 1]));
            } else {
                out.extend(p.edges.iter().step_by(2).copied());
            }
        } else if first {
            out.push((v[0], v[0]));
            out.extend(p.edges[1..].iter().step_by(2).copied());
        } else if last {
            out.extend(p.edges.iter().step_by(2).copied());
            out.push((v[m - 1], v[m - 1]));
        } else {
            return Ok(None);
        }
    }
    let f = LoopedMultigraph::new(g.n(), out)?;
    debug_assert_eq!(f.regular_degree(), Some(1));
    Ok(Some(f))
}
