//! Removing odd cycles with the three-term Plücker relations.

use num_traits::One;

use super::{decompose, monomial_of_graph, Edge, GraphCombo, LoopedMultigraph};
use crate::plucker::exchange;
use crate::{Error, Rational, Result};

fn smallest_edge(edges: &[Edge]) -> Edge {
    *edges.iter().min().expect("cycles have edges")
}

/// Applies `p_ab p_cd = ...` to the edges `e1 = (a,b)` and `e2 = (c,d)` of `g`.
pub fn merge_on_edges(g: &LoopedMultigraph, e1: Edge, e2: Edge) -> Result<GraphCombo> {
    if e1.0 == e1.1 || e2.0 == e2.1 {
        return Err(Error::Graph("merge needs two non-loop edges".into()));
    }
    let m = monomial_of_graph(g);
    let p = exchange(&m, &[e1.0 as u8, e1.1 as u8], &[e2.0 as u8, e2.1 as u8])?;
    GraphCombo::from_poly(&p)
}

/// Applies `p_ab p_c = ...` to the edge `e = (a,b)` and a loop at `c`.
pub fn break_with_loop(g: &LoopedMultigraph, e: Edge, c: usize) -> Result<GraphCombo> {
    if g.loops_at(c) == 0 {
        return Err(Error::Graph(format!("no loop at vertex {c}")));
    }
    let m = monomial_of_graph(g);
    let p = exchange(&m, &[e.0 as u8, e.1 as u8], &[c as u8])?;
    GraphCombo::from_poly(&p)
}

fn fix(g: &LoopedMultigraph) -> Result<Vec<(Rational, LoopedMultigraph)>> {
    let pieces = decompose(g)?;
    let odd: Vec<_> = pieces.iter().filter(|p| p.is_odd_cycle()).collect();
    let combo = if odd.len() >= 2 {
        merge_on_edges(g, smallest_edge(&odd[0].edges), smallest_edge(&odd[1].edges))?
    } else if odd.len() == 1 && g.loop_count() > 0 {
        break_with_loop(g, smallest_edge(&odd[0].edges), g.loops()[0])?
    } else {
        return Ok(vec![(Rational::one(), g.clone())]);
    };
    let mut out = Vec::new();
    for (c, h) in combo.terms() {
        for (d, x) in fix(h)? {
            out.push((c * d, x));
        }
    }
    Ok(out)
}

/// Rewrites each term (a graph of maximum degree 2) so that it has at most
/// one odd cycle, and none when a loop is available. Two odd cycles are
/// joined through their smallest edges; a last odd cycle is opened with the
/// lowest loop.
pub fn merge_odd_cycles(gc: &GraphCombo) -> Result<GraphCombo> {
    let mut terms = Vec::new();
    for (c, g) in gc.terms() {
        for (d, h) in fix(g)? {
            terms.push((c * d, h));
        }
    }
    Ok(GraphCombo::new(terms))
}
