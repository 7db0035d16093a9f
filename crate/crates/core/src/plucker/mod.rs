//! Plücker monomials and polynomials with exact rational coefficients.

mod eval;
mod straighten;
mod text;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

pub use eval::{eval_monomial, eval_on_matrix, minor, Evaluator, Matrix};
pub use straighten::{exchange, relation_step, straighten, straighten_monomial, Straightener};
pub use text::{parse_monomial, parse_poly};

/// A strictly increasing index tuple; entries are 1-based.
pub type Row = Vec<u8>;

/// Canonical factor order: longer tuples first, then lexicographic.
pub fn canonical_cmp(a: &[u8], b: &[u8]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

pub(crate) fn check_row(row: &[u8], n: usize) -> Result<()> {
    if row.is_empty() {
        return Err(Error::InvalidMonomial("empty index tuple".into()));
    }
    if row.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidMonomial(format!("{row:?} is not strictly increasing")));
    }
    if row[0] == 0 || row[row.len() - 1] as usize > n {
        return Err(Error::InvalidMonomial(format!("{row:?} has entries outside 1..={n}")));
    }
    Ok(())
}

/// True when consecutive rows (in canonical order) have non-decreasing columns.
pub fn rows_standard(rows: &[Row]) -> bool {
    first_violation(rows).is_none()
}

/// Index `i` and column `j` of the first pair of consecutive rows `i, i+1`
/// with `rows[i][j] > rows[i+1][j]`.
pub(crate) fn first_violation(rows: &[Row]) -> Option<(usize, usize)> {
    rows.windows(2).enumerate().find_map(|(i, w)| {
        w[1].iter()
            .zip(w[0].iter())
            .position(|(b, a)| a > b)
            .map(|j| (i, j))
    })
}

/// A product of Plücker coordinates, kept in canonical factor order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerMonomial {
    n: usize,
    factors: Vec<Row>,
}

impl Ord for PluckerMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| {
                self.factors
                    .iter()
                    .zip(&other.factors)
                    .map(|(a, b)| canonical_cmp(a, b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| self.factors.len().cmp(&other.factors.len()))
    }
}

impl PartialOrd for PluckerMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PluckerMonomial {
    pub fn new(n: usize, mut factors: Vec<Row>) -> Result<Self> {
        for f in &factors {
            check_row(f, n)?;
        }
        factors.sort_by(|a, b| canonical_cmp(a, b));
        Ok(PluckerMonomial { n, factors })
    }

    pub(crate) fn from_sorted(n: usize, factors: Vec<Row>) -> Self {
        debug_assert!(factors.windows(2).all(|w| canonical_cmp(&w[0], &w[1]).is_le()));
        PluckerMonomial { n, factors }
    }

    /// The constant monomial 1.
    pub fn one(n: usize) -> Self {
        PluckerMonomial { n, factors: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Row] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Row> {
        self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Distinct tuple lengths, ascending.
    pub fn lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.factors.iter().map(Vec::len).collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    pub fn is_standard(&self) -> bool {
        rows_standard(&self.factors)
    }

    /// Number of occurrences of each index `1..=n`.
    pub fn content(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.n];
        for f in &self.factors {
            for &e in f {
                c[e as usize - 1] += 1;
            }
        }
        c
    }

    pub fn multiplicity(&self, factor: &[u8]) -> usize {
        self.factors.iter().filter(|f| f.as_slice() == factor).count()
    }

    pub fn mul(&self, other: &PluckerMonomial) -> PluckerMonomial {
        let mut f = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            if canonical_cmp(&self.factors[i], &other.factors[j]).is_le() {
                f.push(self.factors[i].clone());
                i += 1;
            } else {
                f.push(other.factors[j].clone());
                j += 1;
            }
        }
        f.extend_from_slice(&self.factors[i..]);
        f.extend_from_slice(&other.factors[j..]);
        PluckerMonomial::from_sorted(self.n.max(other.n), f)
    }

    pub fn pow(&self, k: usize) -> PluckerMonomial {
        let mut f = Vec::with_capacity(self.factors.len() * k);
        for x in &self.factors {
            for _ in 0..k {
                f.push(x.clone());
            }
        }
        PluckerMonomial::from_sorted(self.n, f)
    }

    /// Removes one copy of each factor of `other`; `None` if `other` does not divide.
    pub fn divide(&self, other: &PluckerMonomial) -> Option<PluckerMonomial> {
        let mut rest = self.factors.clone();
        for f in &other.factors {
            let pos = rest.iter().position(|x| x == f)?;
            rest.remove(pos);
        }
        Some(PluckerMonomial::from_sorted(self.n, rest))
    }

    pub fn with_n(mut self, n: usize) -> Result<Self> {
        for f in &self.factors {
            check_row(f, n)?;
        }
        self.n = n;
        Ok(self)
    }
}

impl fmt::Display for PluckerMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.factors.len() {
            let row = &self.factors[i];
            let mut k = 1;
            while i + k < self.factors.len() && &self.factors[i + k] == row {
                k += 1;
            }
            let body: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "p[{}]", body.join(","))?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
            i += k;
        }
        Ok(())
    }
}

/// A finite rational combination of Plücker monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerPoly {
    n: usize,
    terms: BTreeMap<PluckerMonomial, Rational>,
}

impl PluckerPoly {
    pub fn zero(n: usize) -> Self {
        PluckerPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: PluckerMonomial) -> Self {
        let mut p = Self::zero(m.n);
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Rational, PluckerMonomial)>) -> Self {
        let mut p = Self::zero(n);
        for (c, m) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: PluckerMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        self.n = self.n.max(m.n);
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &PluckerPoly, c: &Rational) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, other: &PluckerPoly) -> PluckerPoly {
        let mut p = self.clone();
        p.add_assign_scaled(other, &Rational::one());
        p
    }

    pub fn sub(&self, other: &PluckerPoly) -> PluckerPoly {
        let mut p = self.clone();
        p.add_assign_scaled(other, &-Rational::one());
        p
    }

    pub fn scale(&self, c: &Rational) -> PluckerPoly {
        let mut p = Self::zero(self.n);
        p.add_assign_scaled(self, c);
        p
    }

    pub fn mul(&self, other: &PluckerPoly) -> PluckerPoly {
        let mut p = Self::zero(self.n.max(other.n));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                p.add_term(a.mul(b), ca * cb);
            }
        }
        p
    }

    pub fn mul_monomial(&self, m: &PluckerMonomial) -> PluckerPoly {
        let mut p = Self::zero(self.n.max(m.n));
        for (a, c) in &self.terms {
            p.add_term(a.mul(m), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PluckerMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PluckerMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &PluckerMonomial> {
        self.terms.keys()
    }

    pub fn is_standard(&self) -> bool {
        self.terms.keys().all(PluckerMonomial::is_standard)
    }
}

impl From<PluckerMonomial> for PluckerPoly {
    fn from(m: PluckerMonomial) -> Self {
        PluckerPoly::from_monomial(m)
    }
}

/// Formats a rational as `num/den`, or just `num` when integral.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Formats a rational always as `num/den`.
pub fn fmt_fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl fmt::Display for PluckerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (m, c) in &self.terms {
            let s = fmt_rational(c);
            if s.starts_with('-') {
                writeln!(f, "{s} * {m}")?;
            } else {
                writeln!(f, "+{s} * {m}")?;
            }
        }
        Ok(())
    }
}
