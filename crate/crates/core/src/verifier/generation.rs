use std::collections::{HashMap, HashSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use super::{CertMethod, CertTerm, FactorCertificate, GenerationReport};
use crate::graphs::extract_degree_one;
use crate::linalg::{IntegerEchelon, SparseInt, SparseRat, TrackedEchelon};
use crate::plucker::{PluckerMonomial, Straightener};
use crate::tableau_a::{enumerate_standard, monomial_from_tableau, ContentSpec};
use crate::weights::{descent_ok, shape_a, GroupInstance};
use crate::{Error, Rational, Result};

/// Largest `products x dim` accepted by default.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct GenerationOptions {
    pub budget: u128,
    /// Attach factorization certificates for this many basis monomials.
    pub witnesses: usize,
}

impl Default for GenerationOptions {
    fn default() -> Self {
        GenerationOptions {
            budget: DEFAULT_BUDGET,
            witnesses: 0,
        }
    }
}

/// Zero-weight standard monomials of degree `k`, in enumeration order.
pub fn basis_a(inst: &GroupInstance, k: u64) -> Result<Vec<PluckerMonomial>> {
    let n = inst.family.n();
    if k == 0 {
        return Ok(vec![PluckerMonomial::one(n)]);
    }
    let shape = shape_a(inst, k)?;
    Ok(enumerate_standard(&shape, n, &ContentSpec::Uniform)?
        .map(|t| monomial_from_tableau(&t))
        .collect())
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of multisets of generators whose degrees sum to `rem`, degrees `<= j`.
fn count_products(sizes: &[usize], j: usize, rem: usize) -> u128 {
    if j == 0 {
        return (rem == 0) as u128;
    }
    let b = sizes[j - 1] as u128;
    let mut total = 0u128;
    for m in 0..=rem / j {
        let choices = if m == 0 { 1 } else if b == 0 { 0 } else { binom(b + m as u128 - 1, m as u128) };
        total = total.saturating_add(choices.saturating_mul(count_products(sizes, j - 1, rem - m * j)));
    }
    total
}

fn multisets(b: &[PluckerMonomial], m: usize, start: usize, cur: &PluckerMonomial, out: &mut Vec<PluckerMonomial>) {
    if m == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..b.len() {
        multisets(b, m - 1, i, &cur.mul(&b[i]), out);
    }
}

fn products(bases: &[Vec<PluckerMonomial>], j: usize, rem: usize, cur: &PluckerMonomial, out: &mut Vec<PluckerMonomial>) {
    if j == 0 {
        if rem == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for m in 0..=rem / j {
        let mut partial = Vec::new();
        multisets(&bases[j - 1], m, 0, cur, &mut partial);
        for p in partial {
            products(bases, j - 1, rem - m * j, &p, out);
        }
    }
}

fn require_type_a(inst: &GroupInstance) -> Result<()> {
    if !inst.is_type_a() {
        return Err(Error::WrongFamily {
            expected: 'A',
            got: inst.family.to_string(),
        });
    }
    if !descent_ok(inst) {
        return Err(Error::NoDescent(format!(
            "{} with multiple {} does not descend",
            inst.label, inst.multiple
        )));
    }
    Ok(())
}

pub fn check_generation(inst: &GroupInstance, k: u64, d: u64) -> Result<GenerationReport> {
    check_generation_with(inst, k, d, &GenerationOptions::default())
}

/// Rank of the span of all products of generators of degree `<= d` inside `R_k`.
pub fn check_generation_with(inst: &GroupInstance, k: u64, d: u64, opts: &GenerationOptions) -> Result<GenerationReport> {
    require_type_a(inst)?;
    if d == 0 && k > 0 {
        return Err(Error::InvalidInstance("generator degree must be positive".into()));
    }
    let start = Instant::now();
    let n = inst.family.n();
    let basis = basis_a(inst, k)?;
    let dim = basis.len();
    let index: HashMap<&PluckerMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let top = d.min(k) as usize;
    let bases: Vec<Vec<PluckerMonomial>> = (1..=top as u64).map(|j| basis_a(inst, j)).collect::<Result<_>>()?;
    let sizes: Vec<usize> = bases.iter().map(Vec::len).collect();
    let count = count_products(&sizes, top, k as usize);
    let entries = count.saturating_mul(dim as u128);
    if entries > opts.budget {
        return Err(Error::Budget {
            products: count,
            dim,
            entries,
            limit: opts.budget,
        });
    }
    let mut all = Vec::new();
    products(&bases, top, k as usize, &PluckerMonomial::one(n), &mut all);
    let mut seen = HashSet::new();
    let mut st = Straightener::new();
    let mut ech = IntegerEchelon::new();
    for p in all {
        if ech.rank() == dim {
            break;
        }
        if !seen.insert(p.clone()) {
            continue;
        }
        let mut row = SparseInt::new();
        for (m, c) in st.normal_form(&p)? {
            let Some(&i) = index.get(&m) else {
                return Err(Error::Certificate(format!("{m} is not a zero-weight standard monomial of degree {k}")));
            };
            row.insert(i, c);
        }
        ech.insert(row);
    }
    let mut report = GenerationReport::new(inst.label.clone(), k, d, dim, ech.rank());
    report.generators_used = sizes.iter().enumerate().map(|(j, &s)| (j as u64 + 1, s)).collect();
    log::debug!("{}: k={k} d={d} dim={dim} rank={} ({} straightening steps)", inst.label, ech.rank(), st.applications());
    if opts.witnesses > 0 && d == 1 && k >= 2 && report.passed() {
        let mut w = Vec::new();
        for m in basis.iter().take(opts.witnesses) {
            w.push(witness(m, inst)?);
        }
        report.witnesses = Some(w);
    }
    report.elapsed = start.elapsed().as_secs_f64();
    Ok(report)
}

fn witness(m: &PluckerMonomial, inst: &GroupInstance) -> Result<FactorCertificate> {
    match extract_degree_one(m, inst) {
        Err(Error::InvalidInstance(_)) | Err(Error::InvalidMonomial(_)) => linear_certificate(m, inst),
        other => other,
    }
}

fn to_rat(row: Vec<(PluckerMonomial, BigInt)>, index: &HashMap<&PluckerMonomial, usize>) -> Result<SparseRat> {
    let mut out = SparseRat::new();
    for (m, c) in row {
        let i = *index
            .get(&m)
            .ok_or_else(|| Error::Certificate(format!("{m} is outside the invariant basis")))?;
        out.insert(i, Rational::from_integer(c));
    }
    Ok(out)
}

/// Writes a zero-weight monomial of degree `k` through `R_1 R_{k-1}` by
/// solving a linear system in the standard basis.
pub fn linear_certificate(f: &PluckerMonomial, inst: &GroupInstance) -> Result<FactorCertificate> {
    require_type_a(inst)?;
    let n = inst.family.n();
    let unit: usize = shape_a(inst, 1)?.boxes();
    let boxes: usize = f.factors().iter().map(Vec::len).sum();
    if unit == 0 || !boxes.is_multiple_of(unit) {
        return Err(Error::InvalidMonomial(format!("{f} has no degree for {}", inst.label)));
    }
    let k = (boxes / unit) as u64;
    if k <= 1 {
        return Ok(FactorCertificate::new(
            f.clone(),
            vec![CertTerm::new(Rational::one(), vec![f.clone()], PluckerMonomial::one(n))],
            CertMethod::Trivial,
        ));
    }
    let basis = basis_a(inst, k)?;
    let index: HashMap<&PluckerMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let b1 = basis_a(inst, 1)?;
    let rest = basis_a(inst, k - 1)?;
    let mut st = Straightener::new();
    let target = to_rat(st.normal_form(f)?, &index)?;
    let mut ech = TrackedEchelon::new();
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    'outer: for g in &b1 {
        for h in &rest {
            if ech.rank() == basis.len() {
                break 'outer;
            }
            let p = g.mul(h);
            if !seen.insert(p.clone()) {
                continue;
            }
            let row = to_rat(st.normal_form(&p)?, &index)?;
            if ech.insert(row, pairs.len()) {
                pairs.push((g.clone(), h.clone()));
            }
        }
    }
    let combo = ech
        .express(&target)
        .ok_or_else(|| Error::Certificate(format!("{f} is not in R_1 R_{}", k - 1)))?;
    let terms = combo
        .into_iter()
        .map(|(tag, c)| {
            let (g, h) = pairs[tag].clone();
            CertTerm::new(c, vec![g], h)
        })
        .collect();
    Ok(FactorCertificate::new(f.clone(), terms, CertMethod::LinearAlgebra))
}

/// `(dim R_k(G_{r,n}), dim R_k(G_{n-r,n}))` for the bundles `n varpi_r`, `n varpi_{n-r}`.
pub fn duality_dims(r: usize, n: usize, k: u64) -> Result<(usize, usize)> {
    if r == 0 || r >= n {
        return Err(Error::InvalidInstance(format!("need 1 <= r < n, got r={r}, n={n}")));
    }
    let a = GroupInstance::grassmannian(r, n, n as u64)?;
    let b = GroupInstance::grassmannian(n - r, n, n as u64)?;
    Ok((basis_a(&a, k)?.len(), basis_a(&b, k)?.len()))
}

pub fn check_duality(r: usize, n: usize, k: u64) -> Result<bool> {
    let (a, b) = duality_dims(r, n, k)?;
    Ok(a == b)
}
