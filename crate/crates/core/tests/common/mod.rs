//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use torquo::LoopedMultigraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// All `len`-subsets of `1..=n`, lexicographic.
pub fn subsets(n: usize, len: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, len: usize, from: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in from..=n {
            cur.push(v as u8);
            rec(n, len, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, len, 1, &mut Vec::new(), &mut out);
    out
}

/// Rows ordered longest first, then lexicographically; consecutive rows
/// compared entrywise over the shorter length.
pub fn naive_standard(rows: &[Vec<u8>]) -> bool {
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sorted.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
        && sorted.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(b, a)| a <= b))
}

/// Multisets of rows with the given lengths and exact content, then filtered
/// for standardness. Content only prunes, it never orders.
pub fn naive_tableaux(row_lengths: &[usize], n: usize, content: &[u32]) -> BTreeSet<Vec<Vec<u8>>> {
    let mut lens = row_lengths.to_vec();
    lens.sort_by(|a, b| b.cmp(a));
    let pools: BTreeMap<usize, Vec<Vec<u8>>> = lens.iter().map(|&l| (l, subsets(n, l))).collect();
    let mut out = BTreeSet::new();
    let mut left = content.to_vec();
    fn rec(
        lens: &[usize],
        pools: &BTreeMap<usize, Vec<Vec<u8>>>,
        p: usize,
        from: usize,
        left: &mut Vec<u32>,
        cur: &mut Vec<Vec<u8>>,
        out: &mut BTreeSet<Vec<Vec<u8>>>,
    ) {
        if p == lens.len() {
            if left.iter().all(|&c| c == 0) && naive_standard(cur) {
                out.insert(cur.clone());
            }
            return;
        }
        let pool = &pools[&lens[p]];
        let start = if p > 0 && lens[p] == lens[p - 1] { from } else { 0 };
        for (i, row) in pool.iter().enumerate().skip(start) {
            if row.iter().any(|&e| left[e as usize - 1] == 0) {
                continue;
            }
            for &e in row {
                left[e as usize - 1] -= 1;
            }
            cur.push(row.clone());
            rec(lens, pools, p + 1, i, left, cur, out);
            cur.pop();
            for &e in row {
                left[e as usize - 1] += 1;
            }
        }
    }
    rec(&lens, &pools, 0, 0, &mut left, &mut Vec::new(), &mut out);
    out
}

/// Row lengths of a type A shape with the given column lengths.
pub fn rows_of_columns(cols: &[usize]) -> Vec<usize> {
    let h = cols.iter().copied().max().unwrap_or(0);
    (0..h).map(|i| cols.iter().filter(|&&c| c > i).count()).collect()
}

/// Uniform-content count for `G_{r,n}` with `L_{m varpi_r}` at degree `k`.
pub fn naive_grassmannian_dim(r: usize, n: usize, m: usize, k: usize) -> usize {
    let rows = vec![r; k * m];
    let c = (k * m * r / n) as u32;
    naive_tableaux(&rows, n, &vec![c; n]).len()
}

/// Component kinds computed by union-find, by name.
pub fn brute_classify(g: &LoopedMultigraph) -> Vec<&'static str> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in g.edges() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut comps: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
    for v in 1..=n {
        let r = find(&mut parent, v);
        comps.entry(r).or_default().0 += 1;
    }
    for &(a, b) in g.edges() {
        let r = find(&mut parent, a);
        let e = comps.get_mut(&r).unwrap();
        if a == b {
            e.1 += 1;
        } else {
            e.2 += 1;
        }
    }
    let mut kinds: Vec<&'static str> = comps
        .values()
        .map(|&(v, loops, edges)| match (loops, v) {
            (2, 1) => "double-loop",
            (0, _) if v % 2 == 0 => "even-cycle",
            (0, _) => "odd-cycle",
            _ if edges % 2 == 0 => "even-path",
            _ => "odd-path",
        })
        .collect();
    kinds.sort();
    kinds
}

/// Every 2-regular looped multigraph on `n` labelled vertices (loops count 1).
pub fn all_two_regular(n: usize) -> Vec<LoopedMultigraph> {
    fn rec(n: usize, deg: &mut Vec<usize>, edges: &mut Vec<(usize, usize)>, out: &mut Vec<LoopedMultigraph>) {
        let Some(u) = (1..=n).find(|&v| deg[v] < 2) else {
            out.push(LoopedMultigraph::new(n, edges.iter().copied()).unwrap());
            return;
        };
        let last = edges.last().copied();
        for v in u..=n {
            if u != v && deg[v] == 2 {
                continue;
            }
            if let Some(l) = last {
                if l.0 == u && l.1 > v {
                    continue;
                }
            }
            deg[u] += 1;
            if u != v {
                deg[v] += 1;
            }
            edges.push((u, v));
            rec(n, deg, edges, out);
            edges.pop();
            deg[u] -= 1;
            if u != v {
                deg[v] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut vec![0; n + 1], &mut Vec::new(), &mut out);
    out
}

/// A `2r`-regular looped multigraph on `n` vertices from a random stub pairing;
/// a stub paired with its own vertex becomes two loops.
pub fn random_regular(rng: &mut impl Rng, n: usize, r: usize) -> LoopedMultigraph {
    let mut stubs: Vec<usize> = (1..=n).flat_map(|v| std::iter::repeat_n(v, 2 * r)).collect();
    stubs.shuffle(rng);
    let mut edges = Vec::new();
    for p in stubs.chunks(2) {
        if p[0] == p[1] {
            edges.push((p[0], p[0]));
            edges.push((p[0], p[0]));
        } else {
            edges.push((p[0].min(p[1]), p[0].max(p[1])));
        }
    }
    LoopedMultigraph::new(n, edges).unwrap()
}

/// Union of `k` random perfect matchings between `1..=m` and `m+1..=2m`.
pub fn random_bipartite(rng: &mut impl Rng, m: usize, k: usize) -> LoopedMultigraph {
    let mut edges = Vec::new();
    for _ in 0..k {
        let mut right: Vec<usize> = (m + 1..=2 * m).collect();
        right.shuffle(rng);
        edges.extend((1..=m).zip(right));
    }
    LoopedMultigraph::new(2 * m, edges).unwrap()
}

/// Inverse of the Cartan matrix in closed form, as `(numerator, denominator)`.
pub fn cartan_inverse_closed(letter: char, n: usize, i: usize, j: usize) -> (i64, i64) {
    let (i, j) = (i as i64, j as i64);
    let n = n as i64;
    match letter {
        'A' => {
            let np1 = n + 1;
            (i.min(j) * (np1 - i.max(j)), np1)
        }
        _ => {
            if i == n {
                (j, 2)
            } else {
                (i.min(j), 1)
            }
        }
    }
}

/// Reads monomials written as `p_{12}^2p_{14}^3p_4p_{6}^5`; every index is one digit.
pub fn tex_monomial(s: &str, n: usize) -> torquo::PluckerMonomial {
    let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
    let mut rows = Vec::new();
    for chunk in s.split('p').filter(|c| !c.is_empty()) {
        let chunk = chunk.strip_prefix('_').expect("`p_` prefix");
        let (idx, pow) = chunk.split_once('^').unwrap_or((chunk, "1"));
        let row: Vec<u8> = idx.bytes().map(|b| b - b'0').collect();
        for _ in 0..pow.parse::<usize>().unwrap() {
            rows.push(row.clone());
        }
    }
    torquo::PluckerMonomial::new(n, rows).unwrap()
}
