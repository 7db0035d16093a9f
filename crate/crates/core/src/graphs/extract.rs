//! Writing an invariant monomial on `SL_n / (P_{alpha_1} cap P_{alpha_2})` as
//! a combination of (degree 1) x (degree k-1) invariant monomials by working
//! on its graph.

use std::collections::BTreeSet;

use num_traits::One;

use super::{
    bipartite_double_matching, decompose, graph_of_monomial, merge_odd_cycles, monomial_of_graph,
    one_factor_max2, two_factorize, Edge, GraphCombo, LoopedMultigraph,
};
use crate::plucker::{exchange, PluckerMonomial, Straightener};
use crate::verifier::{linear_certificate, CertMethod, CertTerm, FactorCertificate};
use crate::weights::{shape_a, GroupInstance};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug)]
pub struct ExtractOptions {
    /// Replace each degree-1 factor by its straightened form.
    pub standardize: bool,
    /// Relation applications allowed during interchange; defaults to the
    /// square of the number of loops.
    pub step_cap: Option<usize>,
    /// Fall back to a linear-algebra certificate when the graph search stalls.
    pub fallback: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            standardize: true,
            step_cap: None,
            fallback: true,
        }
    }
}

/// One branch: `coeff * factor * rest` with `factor` of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub coeff: Rational,
    pub factor: LoopedMultigraph,
    pub rest: LoopedMultigraph,
}

/// A loop/edge exchange between the degree-1 factor and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interchange {
    pub factor: LoopedMultigraph,
    pub rest: LoopedMultigraph,
    /// Moved from the factor to the rest.
    pub gives: Vec<Edge>,
    /// Moved from the rest to the factor.
    pub receives: Vec<Edge>,
}

#[derive(Clone, Copy, Debug)]
struct Params {
    k: usize,
    s: usize,
    singles: usize,
}

fn params(f: &PluckerMonomial, inst: &GroupInstance) -> Result<Params> {
    if !inst.is_type_a() || inst.parabolic.iter().any(|&i| i > 2) {
        return Err(Error::InvalidInstance(format!(
            "{} is not a Grassmannian G(2,n) or a flag SL_n/(P1 cap P2) instance",
            inst.label
        )));
    }
    let n = inst.family.n();
    let rows = shape_a(inst, 1)?.row_lengths();
    let pairs = rows.iter().filter(|&&l| l == 2).count();
    let singles = rows.iter().filter(|&&l| l == 1).count();
    if (2 * pairs + singles) % n != 0 {
        return Err(Error::InvalidInstance("degree-1 monomials are not torus invariant".into()));
    }
    let s = (2 * pairs + singles) / n;
    if !f.is_standard() {
        return Err(Error::InvalidMonomial(format!("{f} is not standard")));
    }
    let c = f.content();
    if c.len() != n || c.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InvalidMonomial(format!("{f} is not torus invariant")));
    }
    let k = c[0] as usize / s.max(1);
    let fp = f.factors().iter().filter(|r| r.len() == 2).count();
    let fs = f.factors().iter().filter(|r| r.len() == 1).count();
    if s == 0 || !(c[0] as usize).is_multiple_of(s) || fp != k * pairs || fs != k * singles || fp + fs != f.len() {
        return Err(Error::InvalidMonomial(format!("{f} does not have a degree-k shape for {}", inst.label)));
    }
    Ok(Params { k, s, singles })
}

fn union_all(n: usize, gs: &[LoopedMultigraph]) -> LoopedMultigraph {
    gs.iter().fold(LoopedMultigraph::empty(n), |a, g| a.union(g))
}

fn apply(f: &LoopedMultigraph, h: &LoopedMultigraph, gives: &[Edge], receives: &[Edge]) -> Option<(LoopedMultigraph, LoopedMultigraph)> {
    let mut f2 = f.clone();
    let mut h2 = h.clone();
    for &e in gives {
        if !f2.remove(e) {
            return None;
        }
        h2.add(e);
    }
    for &e in receives {
        if !h2.remove(e) {
            return None;
        }
        f2.add(e);
    }
    Some((f2, h2))
}

fn distinct(g: &LoopedMultigraph) -> (Vec<Edge>, Vec<usize>) {
    let m = g.multiplicities();
    let edges = m.keys().filter(|e| e.0 != e.1).copied().collect();
    let loops = m.keys().filter(|e| e.0 == e.1).map(|e| e.0).collect();
    (edges, loops)
}

fn at(edges: &[Edge], v: usize) -> Vec<(Edge, usize)> {
    edges
        .iter()
        .filter(|e| e.0 == v || e.1 == v)
        .map(|&e| (e, if e.0 == v { e.1 } else { e.0 }))
        .collect()
}

/// Exchanges that move the loop count of `factor` by 2, up when `increase`.
/// Listed in lexicographic order: single edges against two loops first, then
/// two edges against an edge and two loops.
pub fn interchange_candidates(factor: &LoopedMultigraph, rest: &LoopedMultigraph, increase: bool) -> Vec<Interchange> {
    let (from, to) = if increase { (factor, rest) } else { (rest, factor) };
    // `from` gives edges, `to` gives loops (roles swap when decreasing)
    let (fe, _) = distinct(from);
    let (te, tl) = distinct(to);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |gives: Vec<Edge>, receives: Vec<Edge>| {
        let (g, r) = if increase { (gives, receives) } else { (receives, gives) };
        if let Some((f2, h2)) = apply(factor, rest, &g, &r) {
            if seen.insert((f2.clone(), h2.clone())) {
                out.push(Interchange {
                    factor: f2,
                    rest: h2,
                    gives: g,
                    receives: r,
                });
            }
        }
    };
    for &(i, j) in &fe {
        if to.loops_at(i) > 0 && to.loops_at(j) > 0 {
            push(vec![(i, j)], vec![(i, i), (j, j)]);
        }
    }
    for (xi, &x) in tl.iter().enumerate() {
        for &y in &tl[xi..] {
            if x == y && to.loops_at(x) < 2 {
                continue;
            }
            for (e1, a) in at(&fe, x) {
                for (e2, b) in at(&fe, y) {
                    if a == b || (e1 == e2 && from.count(e1) < 2) {
                        continue;
                    }
                    let ab = if a < b { (a, b) } else { (b, a) };
                    if te.binary_search(&ab).is_ok() {
                        push(vec![e1, e2], vec![ab, (x, x), (y, y)]);
                    }
                }
            }
        }
    }
    out
}

/// Three-term relations applicable to the rest (edge with loop, then edge
/// with edge) and then to the factor; each entry lists the resulting branches.
pub fn relation_candidates(factor: &LoopedMultigraph, rest: &LoopedMultigraph) -> Vec<Vec<Split>> {
    let mut out = Vec::new();
    for on_rest in [true, false] {
        let g = if on_rest { rest } else { factor };
        let mono = monomial_of_graph(g);
        let (edges, loops) = distinct(g);
        let mut add = |a: &[u8], b: &[u8]| {
            if let Ok(p) = exchange(&mono, a, b) {
                let branches = p
                    .terms()
                    .map(|(m, c)| {
                        let h = graph_of_monomial(m).expect("pairs and singletons");
                        if on_rest {
                            Split { coeff: c.clone(), factor: factor.clone(), rest: h }
                        } else {
                            Split { coeff: c.clone(), factor: h, rest: rest.clone() }
                        }
                    })
                    .collect();
                out.push(branches);
            }
        };
        for &(a, b) in &edges {
            for &c in &loops {
                if c != a && c != b {
                    add(&[a as u8, b as u8], &[c as u8]);
                }
            }
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a != c && a != d && b != c && b != d {
                    add(&[a as u8, b as u8], &[c as u8, d as u8]);
                }
            }
        }
    }
    out
}

/// Moves loops between factor and rest until every factor has `target`
/// loops, applying at most `cap` relations.
pub fn balance_loops(splits: Vec<Split>, target: usize, cap: usize) -> std::result::Result<Vec<Split>, String> {
    let mut work = splits;
    work.reverse();
    let mut done = Vec::new();
    let mut relations = 0usize;
    while let Some(mut sp) = work.pop() {
        loop {
            let l = sp.factor.loop_count();
            if l == target {
                done.push(sp);
                break;
            }
            let up = l < target;
            if let Some(x) = interchange_candidates(&sp.factor, &sp.rest, up).into_iter().next() {
                sp.factor = x.factor;
                sp.rest = x.rest;
                continue;
            }
            relations += 1;
            if relations > cap {
                return Err(format!("interchange search exceeded {cap} relation steps"));
            }
            let enabled = |b: &Split| {
                let l = b.factor.loop_count();
                l == target || !interchange_candidates(&b.factor, &b.rest, l < target).is_empty()
            };
            let cands = relation_candidates(&sp.factor, &sp.rest);
            let pick = cands
                .iter()
                .find(|br| br.iter().all(enabled))
                .or_else(|| cands.iter().find(|br| br.iter().any(enabled)))
                .or_else(|| cands.first())
                .ok_or_else(|| "no relation applies".to_string())?;
            for b in pick.iter().rev() {
                work.push(Split {
                    coeff: &sp.coeff * &b.coeff,
                    factor: b.factor.clone(),
                    rest: b.rest.clone(),
                });
            }
            break;
        }
    }
    Ok(done)
}

/// `s` even: the union of `s/2` Petersen 2-factors.
fn split_even_s(gf: &LoopedMultigraph, s: usize) -> Result<Vec<Split>> {
    let fs = two_factorize(gf)?;
    Ok(vec![Split {
        coeff: Rational::one(),
        factor: union_all(gf.n(), &fs[..s / 2]),
        rest: union_all(gf.n(), &fs[s / 2..]),
    }])
}

/// `s` odd, `k` even: a 1-factor of one 2-factor plus `(s-1)/2` 2-factors of the others.
fn split_even_k(gf: &LoopedMultigraph, s: usize) -> Result<Option<Vec<Split>>> {
    let n = gf.n();
    let fs = two_factorize(gf)?;
    let odd_cycles = |g: &LoopedMultigraph| -> Result<usize> {
        Ok(decompose(g)?.iter().filter(|p| p.is_odd_cycle()).count())
    };
    let mut choice = None;
    for (i, d) in fs.iter().enumerate() {
        if d.loop_count() > 0 || odd_cycles(d)? % 2 == 0 {
            choice = Some(i);
            break;
        }
    }
    let Some(i) = choice else { return Ok(None) };
    let d = fs[i].clone();
    let others: Vec<LoopedMultigraph> = fs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
    let rest = two_factorize(&union_all(n, &others))?;
    let take = (s - 1) / 2;
    let extra = union_all(n, &rest[..take]);
    let remainder = union_all(n, &rest[take..]);
    let mut out = Vec::new();
    for (c, dj) in merge_odd_cycles(&GraphCombo::single(d))?.terms() {
        let Some(m) = one_factor_max2(dj)? else { return Ok(None) };
        out.push(Split {
            coeff: c.clone(),
            factor: m.union(&extra),
            rest: dj.minus(&m).expect("1-factor is a subgraph").union(&remainder),
        });
    }
    Ok(Some(out))
}

/// `s` and `k` odd: a 1-factor read off a perfect matching of the bipartite
/// double, plus `(s-1)/2` 2-factors of what remains.
fn split_odd_k(gf: &LoopedMultigraph, s: usize) -> Result<Option<Vec<Split>>> {
    let n = gf.n();
    let sigma = bipartite_double_matching(gf)?;
    let mut seen = vec![false; n + 1];
    let mut used = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cyc.push(v);
            v = sigma[v - 1].0;
        }
        if cyc.len() == 2 {
            used.push(sigma[cyc[0] - 1].1);
        } else {
            used.extend(cyc.iter().map(|&u| sigma[u - 1].1));
        }
    }
    let gprime = LoopedMultigraph::new(n, used.iter().map(|&i| gf.edges()[i]))?;
    let outside = gf.minus(&gprime).expect("subgraph");
    let take = (s - 1) / 2;
    let mut out = Vec::new();
    for (c, gj) in merge_odd_cycles(&GraphCombo::single(gprime))?.terms() {
        let Some(m) = one_factor_max2(gj)? else { return Ok(None) };
        let r = outside.union(gj).minus(&m).expect("1-factor is a subgraph");
        let fs = two_factorize(&r)?;
        out.push(Split {
            coeff: c.clone(),
            factor: m.union(&union_all(n, &fs[..take])),
            rest: union_all(n, &fs[take..]),
        });
    }
    Ok(Some(out))
}

/// [`extract_with`] with default options.
pub fn extract_degree_one(f: &PluckerMonomial, inst: &GroupInstance) -> Result<FactorCertificate> {
    extract_with(f, inst, &ExtractOptions::default())
}

pub fn extract_with(f: &PluckerMonomial, inst: &GroupInstance, opts: &ExtractOptions) -> Result<FactorCertificate> {
    let p = params(f, inst)?;
    let gf = graph_of_monomial(f)?;
    let n = gf.n();
    if p.k <= 1 {
        return Ok(FactorCertificate::new(
            f.clone(),
            vec![CertTerm::new(Rational::one(), vec![f.clone()], PluckerMonomial::one(n))],
            CertMethod::Trivial,
        ));
    }
    let splits = if p.s % 2 == 0 {
        Some(split_even_s(&gf, p.s)?)
    } else if p.k % 2 == 0 {
        split_even_k(&gf, p.s)?
    } else {
        split_odd_k(&gf, p.s)?
    };
    let loops = gf.loop_count();
    let cap = opts.step_cap.unwrap_or((loops * loops).max(1));
    let outcome = match splits {
        None => Err("no 1-factor without odd cycles".to_string()),
        Some(sp) => balance_loops(sp, p.singles, cap),
    };
    let balanced = match outcome {
        Ok(b) => b,
        Err(why) if opts.fallback => {
            log::warn!("graph search for {f} stalled ({why}); using linear algebra");
            let mut cert = linear_certificate(f, inst)?;
            cert.notes.push(format!("graph search stalled: {why}"));
            return Ok(cert);
        }
        Err(why) => return Err(Error::Certificate(why)),
    };
    for b in &balanced {
        debug_assert_eq!(b.factor.regular_degree(), Some(p.s));
        debug_assert_eq!(b.factor.loop_count(), p.singles);
        debug_assert_eq!(b.rest.regular_degree(), Some((p.k - 1) * p.s));
    }
    let terms = balanced
        .into_iter()
        .map(|b| CertTerm::new(b.coeff, vec![monomial_of_graph(&b.factor)], monomial_of_graph(&b.rest)))
        .collect();
    let cert = FactorCertificate::new(f.clone(), terms, CertMethod::Graph);
    if opts.standardize {
        cert.standardized(&mut Straightener::new())
    } else {
        Ok(cert)
    }
}
