//! Evaluation of Plücker polynomials at the point spanned by the columns of an
//! integer matrix. A tuple of length `t` evaluates to the minor on its rows and
//! the first `t` columns, so singletons read column 1 and pairs the 2x2 minors
//! of columns 1 and 2 (the flag `<col 1> c <col 1, col 2>`).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PluckerMonomial, PluckerPoly};
use crate::{Error, Rational, Result};

/// Row-major `n x w` integer matrix.
pub type Matrix = Vec<Vec<i64>>;

fn det_bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let t = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..t {
        if a[k][k] == 0 {
            match (k + 1..t).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..t {
            for j in k + 1..t {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[t - 1][t - 1]
}

/// Minor of `m` on the 1-based `rows` and the first `rows.len()` columns.
pub fn minor(m: &Matrix, rows: &[u8]) -> Result<BigInt> {
    let t = rows.len();
    let width = m.first().map_or(0, Vec::len);
    if t > width {
        return Err(Error::MatrixWidth { width, len: t });
    }
    if t == 0 {
        return Ok(BigInt::one());
    }
    let mut a = Vec::with_capacity(t);
    for &r in rows {
        let row = m
            .get(r as usize - 1)
            .ok_or_else(|| Error::InvalidMonomial(format!("index {r} exceeds matrix height")))?;
        a.push(row[..t].iter().map(|&x| x as i128).collect());
    }
    Ok(BigInt::from(det_bareiss(a)))
}

/// Evaluator with a per-matrix cache of minors.
#[derive(Debug)]
pub struct Evaluator<'a> {
    m: &'a Matrix,
    cache: HashMap<Vec<u8>, BigInt>,
}

impl<'a> Evaluator<'a> {
    pub fn new(m: &'a Matrix) -> Self {
        Evaluator {
            m,
            cache: HashMap::new(),
        }
    }

    pub fn monomial(&mut self, mono: &PluckerMonomial) -> Result<BigInt> {
        let mut v = BigInt::one();
        for f in mono.factors() {
            let d = match self.cache.get(f) {
                Some(d) => d.clone(),
                None => {
                    let d = minor(self.m, f)?;
                    self.cache.insert(f.clone(), d.clone());
                    d
                }
            };
            if d.is_zero() {
                return Ok(d);
            }
            v *= d;
        }
        Ok(v)
    }

    pub fn poly(&mut self, p: &PluckerPoly) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (mono, c) in p.terms() {
            acc += c * Rational::from_integer(self.monomial(mono)?);
        }
        Ok(acc)
    }
}

pub fn eval_monomial(mono: &PluckerMonomial, m: &Matrix) -> Result<BigInt> {
    Evaluator::new(m).monomial(mono)
}

pub fn eval_on_matrix(p: &PluckerPoly, m: &Matrix) -> Result<Rational> {
    Evaluator::new(m).poly(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plucker::parse_poly;

    #[test]
    fn unit_minor() {
        let m: Matrix = vec![vec![1, 0], vec![0, 1], vec![0, 0], vec![0, 0]];
        let p = parse_poly("p[1,2]").unwrap();
        assert_eq!(eval_on_matrix(&p, &m).unwrap(), Rational::one());
    }

    #[test]
    fn three_by_three() {
        let m: Matrix = vec![vec![2, 0, 1], vec![1, 3, 0], vec![0, 1, 4]];
        assert_eq!(minor(&m, &[1, 2, 3]).unwrap(), BigInt::from(25));
    }

    #[test]
    fn too_narrow() {
        let m: Matrix = vec![vec![1], vec![2], vec![3]];
        let p = parse_poly("p[1,2]").unwrap();
        assert!(eval_on_matrix(&p, &m).is_err());
    }
}
