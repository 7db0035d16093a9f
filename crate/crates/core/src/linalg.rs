//! Exact linear algebra over the integers and the rationals.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Sparse vector keyed by column index.
pub type SparseInt = BTreeMap<usize, BigInt>;
pub type SparseRat = BTreeMap<usize, Rational>;

/// Inverts a square rational matrix by Gauss-Jordan elimination.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn primitive(row: &mut SparseInt) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Row echelon form over the integers, built one row at a time with
/// fraction-free elimination and content normalization.
#[derive(Debug, Default, Clone)]
pub struct IntegerEchelon {
    pivots: HashMap<usize, SparseInt>,
}

impl IntegerEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns true when it was independent of the rows so far.
    pub fn insert(&mut self, mut row: SparseInt) -> bool {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let Some((&c, _)) = row.range(cursor..).next() else {
                return false;
            };
            let Some(p) = self.pivots.get(&c) else {
                primitive(&mut row);
                if row[&c].is_negative() {
                    for v in row.values_mut() {
                        *v = -&*v;
                    }
                }
                self.pivots.insert(c, row);
                return true;
            };
            let a = row[&c].clone();
            let b = &p[&c];
            let g = a.gcd(b);
            let (fa, fb) = (b / &g, &a / &g);
            for v in row.values_mut() {
                *v *= &fa;
            }
            for (&col, pv) in p {
                let e = row.entry(col).or_insert_with(BigInt::zero);
                *e -= &fb * pv;
                if e.is_zero() {
                    row.remove(&col);
                }
            }
            primitive(&mut row);
            cursor = c + 1;
        }
    }
}

/// Rational echelon form that remembers how each stored row was built from
/// the tagged input rows, so that targets in the span can be expressed.
#[derive(Debug, Default, Clone)]
pub struct TrackedEchelon {
    pivots: HashMap<usize, (SparseRat, SparseRat)>,
}

fn axpy(dst: &mut SparseRat, f: &Rational, src: &SparseRat) {
    for (&c, v) in src {
        let e = dst.entry(c).or_insert_with(Rational::zero);
        *e += f * v;
        if e.is_zero() {
            dst.remove(&c);
        }
    }
}

impl TrackedEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `row`, known to the caller as `tag`.
    pub fn insert(&mut self, mut row: SparseRat, tag: usize) -> bool {
        row.retain(|_, v| !v.is_zero());
        let mut combo = SparseRat::new();
        combo.insert(tag, Rational::one());
        let mut cursor = 0usize;
        loop {
            let Some((&c, _)) = row.range(cursor..).next() else {
                return false;
            };
            match self.pivots.get(&c) {
                None => {
                    let inv = row[&c].recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    for v in combo.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(c, (row, combo));
                    return true;
                }
                Some((p, pc)) => {
                    let f = -row[&c].clone();
                    axpy(&mut row, &f, p);
                    axpy(&mut combo, &f, pc);
                    cursor = c + 1;
                }
            }
        }
    }

    /// Writes `target` as a combination of the inserted tagged rows.
    pub fn express(&self, target: &SparseRat) -> Option<SparseRat> {
        let mut row = target.clone();
        row.retain(|_, v| !v.is_zero());
        let mut out = SparseRat::new();
        let mut cursor = 0usize;
        while let Some((&c, _)) = row.range(cursor..).next() {
            let (p, pc) = self.pivots.get(&c)?;
            let f = row[&c].clone();
            axpy(&mut row, &-f.clone(), p);
            axpy(&mut out, &f, pc);
            cursor = c + 1;
        }
        Some(out)
    }
}
