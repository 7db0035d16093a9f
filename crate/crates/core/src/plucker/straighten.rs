//! Rewriting into standard monomials with the quadratic Plücker relations.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{canonical_cmp, first_violation, PluckerMonomial, PluckerPoly, Row};
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Profile {
    Uniform,
    Flag,
}

fn profile(m: &PluckerMonomial) -> Result<Profile> {
    let l = m.lengths();
    match l.as_slice() {
        [] | [_] => Ok(Profile::Uniform),
        [1, 2] => Ok(Profile::Flag),
        _ => Err(Error::UnsupportedProfile(l)),
    }
}

/// Sorts `row` in place and returns the sign of the sorting permutation, or
/// `None` if an entry repeats.
fn sort_signed(row: &mut Row) -> Option<i64> {
    let mut sign = 1;
    for i in 1..row.len() {
        let mut j = i;
        while j > 0 && row[j - 1] > row[j] {
            row.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && row[j - 1] == row[j] {
            return None;
        }
    }
    Some(sign)
}

fn replace_pair(m: &PluckerMonomial, i: usize, a: Row, b: Row) -> PluckerMonomial {
    let mut f: Vec<Row> = Vec::with_capacity(m.len());
    f.extend_from_slice(&m.factors()[..i]);
    f.push(a);
    f.push(b);
    f.extend_from_slice(&m.factors()[i + 2..]);
    f.sort_by(|x, y| canonical_cmp(x, y));
    PluckerMonomial::from_sorted(m.n(), f)
}

fn collect(terms: Vec<(PluckerMonomial, i64)>) -> Vec<(PluckerMonomial, i64)> {
    let mut acc: BTreeMap<PluckerMonomial, i64> = BTreeMap::new();
    for (m, c) in terms {
        *acc.entry(m).or_insert(0) += c;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Shuffle relation on rows `i` and `i+1` of equal length `r`, violating at column `s`.
fn garnir(m: &PluckerMonomial, i: usize, s: usize) -> Vec<(PluckerMonomial, i64)> {
    let a = &m.factors()[i];
    let b = &m.factors()[i + 1];
    let r = a.len();
    let z: Vec<u8> = a[s..].iter().chain(b[..=s].iter()).copied().collect();
    let k = r - s;
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        if pick.iter().enumerate().any(|(t, &p)| p != t) {
            let mut in_s = vec![false; r + 1];
            for &p in &pick {
                in_s[p] = true;
            }
            // inversions of the permutation listing `pick` first, then the rest
            let inv: usize = pick
                .iter()
                .map(|&p| (0..p).filter(|&q| !in_s[q]).count())
                .sum();
            let mut na: Row = a[..s].to_vec();
            na.extend(pick.iter().map(|&p| z[p]));
            let mut nb: Row = (0..=r).filter(|&q| !in_s[q]).map(|q| z[q]).collect();
            nb.extend_from_slice(&b[s + 1..]);
            if let (Some(sa), Some(sb)) = (sort_signed(&mut na), sort_signed(&mut nb)) {
                let shuffle = if inv.is_multiple_of(2) { 1 } else { -1 };
                out.push((replace_pair(m, i, na, nb), -shuffle * sa * sb));
            }
        }
        // next k-subset of 0..=r in lexicographic order
        let mut t = k;
        loop {
            if t == 0 {
                return collect(out);
            }
            t -= 1;
            if pick[t] < r + 1 - (k - t) {
                break;
            }
        }
        pick[t] += 1;
        for u in t + 1..k {
            pick[u] = pick[u - 1] + 1;
        }
    }
}

/// `p_{a1 a2} p_b = p_{b a2} p_{a1} - p_{b a1} p_{a2}` for `b < a1 < a2`.
fn pair_single(m: &PluckerMonomial, i: usize) -> Vec<(PluckerMonomial, i64)> {
    let (a1, a2) = (m.factors()[i][0], m.factors()[i][1]);
    let b = m.factors()[i + 1][0];
    collect(vec![
        (replace_pair(m, i, vec![b, a2], vec![a1]), 1),
        (replace_pair(m, i, vec![b, a1], vec![a2]), -1),
    ])
}

/// One relation applied to the first violating pair of consecutive factors;
/// `None` when `m` is already standard. Every returned monomial is smaller
/// than `m` in the canonical order.
pub fn relation_step(m: &PluckerMonomial) -> Result<Option<Vec<(PluckerMonomial, i64)>>> {
    profile(m)?;
    let Some((i, s)) = first_violation(m.factors()) else {
        return Ok(None);
    };
    let (la, lb) = (m.factors()[i].len(), m.factors()[i + 1].len());
    let terms = if la == lb {
        garnir(m, i, s)
    } else {
        debug_assert_eq!((la, lb, s), (2, 1, 0));
        pair_single(m, i)
    };
    debug_assert!(terms.iter().all(|(t, _)| t < m));
    Ok(Some(terms))
}

/// Straightening engine that caches single rewriting steps and normal forms.
#[derive(Debug, Default)]
pub struct Straightener {
    steps: HashMap<PluckerMonomial, Vec<(PluckerMonomial, i64)>>,
    normal: HashMap<PluckerMonomial, Vec<(PluckerMonomial, BigInt)>>,
    applications: u64,
}

impl Straightener {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of relation applications performed so far (cache hits excluded).
    pub fn applications(&self) -> u64 {
        self.applications
    }

    fn step(&mut self, m: &PluckerMonomial) -> Result<Option<Vec<(PluckerMonomial, i64)>>> {
        if let Some(t) = self.steps.get(m) {
            return Ok(Some(t.clone()));
        }
        let r = relation_step(m)?;
        if let Some(t) = &r {
            self.applications += 1;
            self.steps.insert(m.clone(), t.clone());
        }
        Ok(r)
    }

    /// Integer normal form of a single monomial, ascending order.
    pub fn normal_form(&mut self, m: &PluckerMonomial) -> Result<Vec<(PluckerMonomial, BigInt)>> {
        if let Some(nf) = self.normal.get(m) {
            return Ok(nf.clone());
        }
        profile(m)?;
        let mut pending: BTreeMap<PluckerMonomial, BigInt> = BTreeMap::new();
        let mut done: BTreeMap<PluckerMonomial, BigInt> = BTreeMap::new();
        pending.insert(m.clone(), BigInt::one());
        while let Some((x, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            if let Some(nf) = self.normal.get(&x) {
                for (y, d) in nf {
                    *done.entry(y.clone()).or_insert_with(BigInt::zero) += &c * d;
                }
                continue;
            }
            match self.step(&x)? {
                None => *done.entry(x).or_insert_with(BigInt::zero) += c,
                Some(terms) => {
                    for (y, s) in terms {
                        *pending.entry(y).or_insert_with(BigInt::zero) += &c * s;
                    }
                }
            }
        }
        let nf: Vec<(PluckerMonomial, BigInt)> =
            done.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.normal.insert(m.clone(), nf.clone());
        Ok(nf)
    }

    pub fn straighten_monomial(&mut self, m: &PluckerMonomial) -> Result<PluckerPoly> {
        let nf = self.normal_form(m)?;
        Ok(PluckerPoly::from_terms(
            m.n(),
            nf.into_iter().map(|(y, c)| (Rational::from_integer(c), y)),
        ))
    }

    pub fn straighten(&mut self, p: &PluckerPoly) -> Result<PluckerPoly> {
        let mut out = PluckerPoly::zero(p.n());
        for (m, c) in p.terms() {
            for (y, d) in self.normal_form(m)? {
                out.add_term(y, c * Rational::from_integer(d));
            }
        }
        Ok(out)
    }
}

/// Rewrites `p` as a combination of standard monomials.
pub fn straighten(p: &PluckerPoly) -> Result<PluckerPoly> {
    Straightener::new().straighten(p)
}

pub fn straighten_monomial(m: &PluckerMonomial) -> Result<PluckerPoly> {
    Straightener::new().straighten_monomial(m)
}

/// Applies one three-term relation to the factors `a` and `b` of `m` and
/// returns the other two terms, e.g. `p13 p45 = p14 p35 - p15 p34` and
/// `p13 p4 = p14 p3 - p34 p1`. Both factors must occur in `m`, have lengths
/// `(2,2)` or `(2,1)` and involve distinct indices.
pub fn exchange(m: &PluckerMonomial, a: &[u8], b: &[u8]) -> Result<PluckerPoly> {
    let bad = |msg: &str| Error::InvalidMonomial(format!("cannot exchange {a:?} and {b:?}: {msg}"));
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let need = if a == b { 2 } else { 1 };
    if m.multiplicity(a) < need || m.multiplicity(b) < 1 {
        return Err(bad("factor not present"));
    }
    let rest = m
        .divide(&PluckerMonomial::new(m.n(), vec![a.to_vec(), b.to_vec()])?)
        .ok_or_else(|| bad("factor not present"))?;
    let mono = |rows: Vec<Row>| -> Result<PluckerMonomial> {
        Ok(PluckerMonomial::new(m.n(), rows)?.mul(&rest))
    };
    let mut out = PluckerPoly::zero(m.n());
    let mut push = |c: i64, rows: Vec<Row>| -> Result<()> {
        out.add_term(mono(rows)?, Rational::from_integer(c.into()));
        Ok(())
    };
    match (a.len(), b.len()) {
        (2, 2) => {
            let mut v = [a[0], a[1], b[0], b[1]];
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(bad("indices repeat"));
            }
            let [w, x, y, z] = [v[0], v[1], v[2], v[3]];
            // p_wx p_yz - p_wy p_xz + p_wz p_xy = 0
            let m1 = (vec![w, x], vec![y, z]);
            let m2 = (vec![w, y], vec![x, z]);
            let m3 = (vec![w, z], vec![x, y]);
            let cur = if a == m1.0 || a == m1.1 {
                1
            } else if a == m2.0 || a == m2.1 {
                2
            } else {
                3
            };
            match cur {
                1 => {
                    push(1, vec![m2.0, m2.1])?;
                    push(-1, vec![m3.0, m3.1])?;
                }
                2 => {
                    push(1, vec![m1.0, m1.1])?;
                    push(1, vec![m3.0, m3.1])?;
                }
                _ => {
                    push(1, vec![m2.0, m2.1])?;
                    push(-1, vec![m1.0, m1.1])?;
                }
            }
        }
        (2, 1) => {
            let mut v = [a[0], a[1], b[0]];
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(bad("indices repeat"));
            }
            let [x, y, z] = [v[0], v[1], v[2]];
            // p_xy p_z - p_xz p_y + p_yz p_x = 0
            let tz = (vec![x, y], vec![z]);
            let ty = (vec![x, z], vec![y]);
            let tx = (vec![y, z], vec![x]);
            if b[0] == z {
                push(1, vec![ty.0, ty.1])?;
                push(-1, vec![tx.0, tx.1])?;
            } else if b[0] == y {
                push(1, vec![tz.0, tz.1])?;
                push(1, vec![tx.0, tx.1])?;
            } else {
                push(1, vec![ty.0, ty.1])?;
                push(-1, vec![tz.0, tz.1])?;
            }
        }
        _ => return Err(bad("unsupported lengths")),
    }
    Ok(out)
}
