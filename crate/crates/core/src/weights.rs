//! Dominant weights, tableau shapes and the descent criterion.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::inverse;
use crate::{Error, Rational, Result};

/// `TypeA(n)` is `SL_n` (rank `n-1`); `TypeB(n)` is `Spin_{2n+1}` (rank `n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    TypeA(usize),
    TypeB(usize),
}

impl Family {
    pub fn rank(self) -> usize {
        match self {
            Family::TypeA(n) => n.saturating_sub(1),
            Family::TypeB(n) => n,
        }
    }

    pub fn n(self) -> usize {
        match self {
            Family::TypeA(n) | Family::TypeB(n) => n,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::TypeA(_) => 'A',
            Family::TypeB(_) => 'B',
        }
    }

    /// Cartan matrix with entries `<alpha_i, alpha_j^vee>`.
    pub fn cartan(self) -> Vec<Vec<i64>> {
        let l = self.rank();
        let mut c = vec![vec![0i64; l]; l];
        for i in 0..l {
            c[i][i] = 2;
            if i + 1 < l {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        if let Family::TypeB(_) = self {
            if l >= 2 {
                c[l - 2][l - 1] = -2;
            }
        }
        c
    }

    /// Row `i` holds the fundamental weight `varpi_{i+1}` in simple roots.
    pub fn fundamental_weights(self) -> Vec<Vec<Rational>> {
        let c: Vec<Vec<Rational>> = self
            .cartan()
            .into_iter()
            .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
            .collect();
        inverse(&c).expect("Cartan matrices are invertible")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::TypeA(n) => write!(f, "SL{n}"),
            Family::TypeB(n) => write!(f, "Spin{}", 2 * n + 1),
        }
    }
}

/// A group, a parabolic subgroup, a dominant weight and a bundle multiple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupInstance {
    pub label: String,
    pub family: Family,
    pub parabolic: BTreeSet<usize>,
    pub weight: Vec<u64>,
    pub multiple: u64,
}

impl GroupInstance {
    /// Builds an instance whose parabolic is the support of `weight`.
    pub fn new(family: Family, weight: Vec<u64>, multiple: u64) -> Result<Self> {
        let parabolic = weight
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i + 1)
            .collect();
        let inst = GroupInstance {
            label: String::new(),
            family,
            parabolic,
            weight,
            multiple,
        };
        inst.validate()?;
        Ok(inst.with_default_label())
    }

    /// `G_{r,n}` with the bundle `m varpi_r`.
    pub fn grassmannian(r: usize, n: usize, multiple: u64) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::InvalidInstance(format!("G({r},{n}) needs 1 <= r < n")));
        }
        let mut w = vec![0; n - 1];
        w[r - 1] = 1;
        Self::new(Family::TypeA(n), w, multiple)
    }

    /// `SL_n / (P_{alpha_1} cap P_{alpha_2})` with `n (r1 varpi_1 + r2 varpi_2)`.
    pub fn flag(n: usize, r1: u64, r2: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInstance(format!("flag needs n >= 3, got {n}")));
        }
        let mut w = vec![0; n - 1];
        w[0] = r1;
        w[1] = r2;
        Self::new(Family::TypeA(n), w, n as u64)
    }

    /// `Spin_{2n+1} / P_{alpha_i}` with the smallest multiple of `varpi_i` that descends.
    pub fn spin(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidInstance(format!("no fundamental weight {i} in rank {n}")));
        }
        let mut w = vec![0; n];
        w[i - 1] = 1;
        for m in 1..=8 {
            let inst = Self::new(Family::TypeB(n), w.clone(), m)?;
            if descent_ok(&inst) {
                return Ok(inst);
            }
        }
        Err(Error::NoDescent(format!("no multiple of w{i} up to 8 descends")))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn with_default_label(mut self) -> Self {
        let terms: Vec<String> = self
            .weight
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| if a == 1 { format!("w{}", i + 1) } else { format!("{a}w{}", i + 1) })
            .collect();
        self.label = format!("{} {}({})", self.family, self.multiple, terms.join("+"));
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.family.n();
        let min_n = match self.family {
            Family::TypeA(_) => 2,
            Family::TypeB(_) => 2,
        };
        if n < min_n {
            return Err(Error::InvalidInstance(format!("{} is too small", self.family)));
        }
        if self.weight.len() != self.family.rank() {
            return Err(Error::InvalidInstance(format!(
                "{} needs {} weight coefficients, got {}",
                self.family,
                self.family.rank(),
                self.weight.len()
            )));
        }
        if self.multiple == 0 {
            return Err(Error::InvalidInstance("bundle multiple must be positive".into()));
        }
        let support: BTreeSet<usize> = self
            .weight
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i + 1)
            .collect();
        if support != self.parabolic {
            return Err(Error::InvalidInstance(format!(
                "weight support {support:?} differs from parabolic {:?}",
                self.parabolic
            )));
        }
        Ok(())
    }

    pub fn is_type_a(&self) -> bool {
        matches!(self.family, Family::TypeA(_))
    }

    /// Coefficients of `m lambda` in the basis of simple roots.
    pub fn root_coordinates(&self) -> Vec<Rational> {
        let fw = self.family.fundamental_weights();
        let l = self.family.rank();
        let m = Rational::from_integer(BigInt::from(self.multiple));
        (0..l)
            .map(|j| {
                let s: Rational = (0..l)
                    .map(|i| Rational::from_integer(BigInt::from(self.weight[i])) * &fw[i][j])
                    .sum();
                s * &m
            })
            .collect()
    }
}

/// Decides whether `L_{m lambda}` descends to the torus quotient.
pub fn descent_ok(inst: &GroupInstance) -> bool {
    if inst.validate().is_err() {
        return false;
    }
    let coords = inst.root_coordinates();
    let two = BigInt::from(2);
    let even = |q: &Rational| q.is_integer() && q.to_integer().is_multiple_of(&two);
    match inst.family {
        Family::TypeA(_) => coords.iter().all(|q| q.is_integer()),
        Family::TypeB(2) => coords[0].is_integer() && even(&coords[1]),
        Family::TypeB(_) => coords.iter().all(even),
    }
}

/// Column lengths `lambda_1 >= lambda_2 >= ...`; column `j` has `lambda_j` boxes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeA {
    pub columns: Vec<usize>,
}

impl ShapeA {
    pub fn new(mut columns: Vec<usize>) -> Result<Self> {
        if columns.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau(format!("column lengths {columns:?} increase")));
        }
        while columns.last() == Some(&0) {
            columns.pop();
        }
        Ok(ShapeA { columns })
    }

    /// `rows` rows of equal length `width`.
    pub fn rectangle(rows: usize, width: usize) -> Self {
        ShapeA {
            columns: if rows == 0 { vec![] } else { vec![rows; width] },
        }
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        row_lengths(&self.columns)
    }

    pub fn boxes(&self) -> usize {
        self.columns.iter().sum()
    }
}

/// Type B shape: column lengths `p_i`, the spin part `a_n` and `bar p_1` paired rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeB {
    pub columns: Vec<usize>,
    pub spin: usize,
    pub paired: usize,
}

impl ShapeB {
    pub fn row_lengths(&self) -> Vec<usize> {
        row_lengths(&self.columns)
    }

    pub fn boxes(&self) -> usize {
        self.columns.iter().sum()
    }
}

fn row_lengths(columns: &[usize]) -> Vec<usize> {
    let rows = columns.first().copied().unwrap_or(0);
    (0..rows)
        .map(|i| columns.iter().filter(|&&c| c > i).count())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    A(ShapeA),
    B(ShapeB),
}

/// Shape of the tableaux indexing a basis of `H^0(G/P, L^{k m lambda})`.
pub fn shape_from_weight(inst: &GroupInstance, k: u64) -> Result<Shape> {
    inst.validate()?;
    let scale = k * inst.multiple;
    let a: Vec<usize> = inst.weight.iter().map(|&x| (x * scale) as usize).collect();
    if k > 0 && a.iter().all(|&x| x == 0) {
        return Err(Error::InvalidInstance("zero weight has no tableau shape".into()));
    }
    match inst.family {
        Family::TypeA(_) => {
            let mut cols = Vec::with_capacity(a.len());
            let mut acc = 0;
            for &x in a.iter().rev() {
                acc += x;
                cols.push(acc);
            }
            cols.reverse();
            Ok(Shape::A(ShapeA::new(cols)?))
        }
        Family::TypeB(n) => {
            let an = a[n - 1];
            let mut cols = vec![0usize; n];
            let mut acc = an;
            cols[n - 1] = an;
            for i in (0..n - 1).rev() {
                acc += 2 * a[i];
                cols[i] = acc;
            }
            let paired = (cols[0] - an) / 2;
            while cols.last() == Some(&0) {
                cols.pop();
            }
            Ok(Shape::B(ShapeB {
                columns: cols,
                spin: an,
                paired,
            }))
        }
    }
}

pub fn shape_a(inst: &GroupInstance, k: u64) -> Result<ShapeA> {
    match shape_from_weight(inst, k)? {
        Shape::A(s) => Ok(s),
        Shape::B(_) => Err(Error::WrongFamily {
            expected: 'A',
            got: inst.family.to_string(),
        }),
    }
}

pub fn shape_b(inst: &GroupInstance, k: u64) -> Result<ShapeB> {
    match shape_from_weight(inst, k)? {
        Shape::B(s) => Ok(s),
        Shape::A(_) => Err(Error::WrongFamily {
            expected: 'B',
            got: inst.family.to_string(),
        }),
    }
}

/// One line of an instance manifest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub family: String,
    pub n: usize,
    pub parabolic: Vec<usize>,
    pub weight: Vec<u64>,
    pub multiple: u64,
    pub label: String,
    /// Degree checked by the suite.
    #[serde(default = "default_k", skip_serializing_if = "is_default_k")]
    pub k: u64,
    /// Largest generator degree allowed by the suite.
    #[serde(default = "default_d", skip_serializing_if = "is_default_d")]
    pub d: u64,
}

fn default_k() -> u64 {
    2
}
fn default_d() -> u64 {
    1
}
fn is_default_k(k: &u64) -> bool {
    *k == 2
}
fn is_default_d(d: &u64) -> bool {
    *d == 1
}

impl ManifestEntry {
    /// Builds the instance without checking descent.
    pub fn instance(&self) -> Result<GroupInstance> {
        let family = match self.family.as_str() {
            "A" | "a" | "SL" => Family::TypeA(self.n),
            "B" | "b" | "Spin" => Family::TypeB(self.n),
            other => return Err(Error::InvalidInstance(format!("unknown family {other:?}"))),
        };
        let inst = GroupInstance {
            label: self.label.clone(),
            family,
            parabolic: self.parabolic.iter().copied().collect(),
            weight: self.weight.clone(),
            multiple: self.multiple,
        };
        inst.validate()?;
        Ok(inst)
    }
}

const DEFAULT_MANIFEST: &str = include_str!("../data/default_manifest.json");

pub fn parse_manifest(json: &str) -> Result<Vec<ManifestEntry>> {
    Ok(serde_json::from_str(json)?)
}

/// The nine bundled cases at their default degrees.
pub fn default_catalog() -> Vec<ManifestEntry> {
    parse_manifest(DEFAULT_MANIFEST).expect("bundled manifest parses")
}

pub fn default_manifest_json() -> &'static str {
    DEFAULT_MANIFEST
}

/// Resolves a label: catalog entries first, then the patterns
/// `g<r>-<n>[x<m>]`, `g<r><n>`, `flag-<n>-<r1>-<r2>` and `spin<2n+1>-<i>`.
pub fn lookup_instance(label: &str) -> Result<GroupInstance> {
    if let Some(e) = default_catalog().into_iter().find(|e| e.label == label) {
        return e.instance();
    }
    let bad = || Error::InvalidInstance(format!("unknown instance label {label:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let inst = if let Some(rest) = label.strip_prefix("flag-") {
        let parts: Vec<&str> = rest.split('-').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        GroupInstance::flag(num(parts[0])?, num(parts[1])? as u64, num(parts[2])? as u64)?
    } else if let Some(rest) = label.strip_prefix("spin") {
        let (dim, i) = rest.split_once('-').ok_or_else(bad)?;
        let dim = num(dim)?;
        if dim < 5 || dim % 2 == 0 {
            return Err(bad());
        }
        GroupInstance::spin((dim - 1) / 2, num(i)?)?
    } else if let Some(rest) = label.strip_prefix('g') {
        let (body, m) = match rest.split_once('x') {
            Some((b, m)) => (b, Some(num(m)? as u64)),
            None => (rest, None),
        };
        let (r, n) = match body.split_once('-') {
            Some((r, n)) => (num(r)?, num(n)?),
            None if body.len() == 2 => (num(&body[..1])?, num(&body[1..])?),
            None => return Err(bad()),
        };
        GroupInstance::grassmannian(r, n, m.unwrap_or(n as u64))?
    } else {
        return Err(bad());
    };
    Ok(inst.with_label(label))
}

/// Number of boxes per index for a uniform-content type A tableau, if integral.
pub fn uniform_multiplicity(shape: &ShapeA, n: usize) -> Option<u32> {
    let b = shape.boxes();
    b.is_multiple_of(n).then(|| (b / n) as u32)
}

/// Simple-root coordinates of `m lambda` as `num/den` strings.
pub fn format_root_coordinates(inst: &GroupInstance) -> Vec<String> {
    inst.root_coordinates()
        .iter()
        .map(|q| {
            if q.denom().is_one() || q.is_zero() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn b2_fundamental_weights() {
        let fw = Family::TypeB(2).fundamental_weights();
        assert_eq!(fw[0], vec![q(1, 1), q(1, 1)]);
        assert_eq!(fw[1], vec![q(1, 2), q(1, 1)]);
    }

    #[test]
    fn b3_fundamental_weights() {
        let fw = Family::TypeB(3).fundamental_weights();
        assert_eq!(fw[0], vec![q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(fw[1], vec![q(1, 1), q(2, 1), q(2, 1)]);
        assert_eq!(fw[2], vec![q(1, 2), q(1, 1), q(3, 2)]);
    }

    #[test]
    fn grassmannian_shape() {
        let inst = GroupInstance::grassmannian(3, 6, 2).unwrap();
        assert_eq!(shape_a(&inst, 1).unwrap().columns, vec![2, 2, 2]);
        assert_eq!(shape_a(&inst, 0).unwrap().columns, Vec::<usize>::new());
    }

    #[test]
    fn spin7_shapes() {
        let w3 = GroupInstance::spin(3, 3).unwrap();
        assert_eq!(w3.multiple, 4);
        let s = shape_b(&w3, 1).unwrap();
        assert_eq!((s.columns.clone(), s.paired, s.spin), (vec![4, 4, 4], 0, 4));
        let w2 = GroupInstance::spin(3, 2).unwrap();
        let s = shape_b(&w2, 2).unwrap();
        assert_eq!((s.columns.clone(), s.paired), (vec![8, 8], 4));
        assert_eq!(s.row_lengths(), vec![2; 8]);
    }

    #[test]
    fn zero_weight_rejected() {
        let inst = GroupInstance {
            label: String::new(),
            family: Family::TypeA(4),
            parabolic: BTreeSet::new(),
            weight: vec![0, 0, 0],
            multiple: 1,
        };
        assert!(shape_from_weight(&inst, 1).is_err());
        assert_eq!(shape_from_weight(&inst, 0).unwrap(), Shape::A(ShapeA { columns: vec![] }));
    }

    #[test]
    fn parabolic_must_match_support() {
        let mut inst = GroupInstance::grassmannian(2, 5, 5).unwrap();
        inst.parabolic.insert(1);
        assert!(inst.validate().is_err());
        assert!(!descent_ok(&inst));
    }

    #[test]
    fn labels_resolve() {
        assert_eq!(lookup_instance("g26").unwrap().multiple, 6);
        assert_eq!(lookup_instance("g36").unwrap().multiple, 2);
        assert_eq!(lookup_instance("g3-6").unwrap().multiple, 6);
        assert_eq!(lookup_instance("g2-7x14").unwrap().multiple, 14);
        assert_eq!(lookup_instance("flag-5-1-1").unwrap().weight, vec![1, 1, 0, 0]);
        assert_eq!(lookup_instance("spin7-3").unwrap().multiple, 4);
        assert!(lookup_instance("nonsense").is_err());
    }
}
