use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::One;

use super::{CertMethod, CertTerm, FactorCertificate, GenerationOptions, GenerationReport};
use crate::plucker::{PluckerMonomial, Row};
use crate::tableau_b::{enumerate_standard_b, is_admissible, is_admissible_upward, TableauB};
use crate::weights::{descent_ok, shape_b, GroupInstance};
use crate::{Error, Rational, Result};

/// `gamma = part * rest` with `part` of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSplit {
    pub degree: u64,
    pub part: TableauB,
    pub rest: TableauB,
}

impl RowSplit {
    pub fn certificate(&self, gamma: &TableauB) -> Result<FactorCertificate> {
        let n2 = 2 * gamma.n();
        let mono = |t: &TableauB| PluckerMonomial::new(n2, t.rows().to_vec());
        Ok(FactorCertificate::new(
            mono(gamma)?,
            vec![CertTerm::new(Rational::one(), vec![mono(&self.part)?], mono(&self.rest)?)],
            CertMethod::RowSplit,
        ))
    }
}

/// Zero-weight standard admissible tableaux of degree `k`.
pub fn basis_b(inst: &GroupInstance, k: u64) -> Result<Vec<TableauB>> {
    Ok(enumerate_standard_b(inst, k, true)?.collect())
}

fn pairs_ok(t: &TableauB) -> bool {
    let n = t.n();
    let r = t.rows();
    (0..t.paired()).all(|i| is_admissible(&r[2 * i], &r[2 * i + 1], n) || is_admissible_upward(&r[2 * i], &r[2 * i + 1], n))
}

fn acceptable(t: &TableauB) -> bool {
    t.is_standard() && pairs_ok(t) && t.is_t_invariant()
}

fn length_counts(lengths: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &l in lengths {
        *m.entry(l).or_insert(0) += 1;
    }
    m
}

struct Search<'a> {
    n: usize,
    types: Vec<(&'a Row, usize)>,
    paired: (usize, usize),
    found: Option<(TableauB, TableauB)>,
}

impl Search<'_> {
    fn run(&mut self, t: usize, need: &mut BTreeMap<usize, usize>, take: &mut Vec<usize>) -> Result<()> {
        if self.found.is_some() {
            return Ok(());
        }
        if t == self.types.len() {
            if need.values().any(|&v| v > 0) {
                return Ok(());
            }
            let mut part = Vec::new();
            let mut rest = Vec::new();
            for (i, &(row, mult)) in self.types.iter().enumerate() {
                part.extend(std::iter::repeat_n(row.clone(), take[i]));
                rest.extend(std::iter::repeat_n(row.clone(), mult - take[i]));
            }
            let part = TableauB::new(self.n, part, self.paired.0)?;
            if !acceptable(&part) {
                return Ok(());
            }
            let rest = TableauB::new(self.n, rest, self.paired.1)?;
            if acceptable(&rest) {
                self.found = Some((part, rest));
            }
            return Ok(());
        }
        let (row, mult) = self.types[t];
        let avail = need.get(&row.len()).copied().unwrap_or(0);
        for c in (0..=mult.min(avail)).rev() {
            if c > 0 {
                *need.get_mut(&row.len()).expect("checked") -= c;
            }
            take.push(c);
            self.run(t + 1, need, take)?;
            take.pop();
            if c > 0 {
                *need.get_mut(&row.len()).expect("checked") += c;
            }
        }
        Ok(())
    }
}

/// Smallest-degree split of `gamma` (degree `k`) into two zero-weight
/// standard admissible tableaux, the first of degree at most `d`.
pub fn find_split(gamma: &TableauB, inst: &GroupInstance, k: u64, d: u64) -> Result<Option<RowSplit>> {
    let n = inst.family.n();
    if k <= d {
        return Ok(Some(RowSplit {
            degree: k,
            part: gamma.clone(),
            rest: TableauB::new(n, Vec::new(), 0)?,
        }));
    }
    let mut types: Vec<(&Row, usize)> = Vec::new();
    for r in gamma.rows() {
        match types.last_mut() {
            Some((last, m)) if *last == r => *m += 1,
            _ => types.push((r, 1)),
        }
    }
    for j in 1..=d.min(k - 1) {
        let sj = shape_b(inst, j)?;
        let sr = shape_b(inst, k - j)?;
        let mut need = length_counts(&sj.row_lengths());
        let mut s = Search {
            n,
            types: types.clone(),
            paired: (sj.paired, sr.paired),
            found: None,
        };
        s.run(0, &mut need, &mut Vec::new())?;
        if let Some((part, rest)) = s.found {
            return Ok(Some(RowSplit { degree: j, part, rest }));
        }
    }
    Ok(None)
}

pub fn check_type_b_factorization(inst: &GroupInstance, k: u64, d: u64) -> Result<GenerationReport> {
    check_type_b_factorization_with(inst, k, d, &GenerationOptions::default())
}

/// Counts the degree-`k` basis tableaux that split off a part of degree `<= d`.
pub fn check_type_b_factorization_with(inst: &GroupInstance, k: u64, d: u64, opts: &GenerationOptions) -> Result<GenerationReport> {
    if inst.is_type_a() {
        return Err(Error::WrongFamily {
            expected: 'B',
            got: inst.family.to_string(),
        });
    }
    if !descent_ok(inst) {
        return Err(Error::NoDescent(format!(
            "{} with multiple {} does not descend",
            inst.label, inst.multiple
        )));
    }
    if d == 0 && k > 0 {
        return Err(Error::InvalidInstance("generator degree must be positive".into()));
    }
    let start = Instant::now();
    let basis = basis_b(inst, k)?;
    let mut split = 0;
    let mut max_part = 0;
    let mut witnesses = Vec::new();
    for g in &basis {
        match find_split(g, inst, k, d)? {
            Some(s) => {
                split += 1;
                max_part = max_part.max(s.degree);
                if witnesses.len() < opts.witnesses {
                    witnesses.push(s.certificate(g)?);
                }
            }
            None => log::info!("{}: no split of degree <= {d} for\n{g}", inst.label),
        }
    }
    let mut report = GenerationReport::new(inst.label.clone(), k, d, basis.len(), split);
    report.generators_used = (1..=d.min(k))
        .map(|j| Ok((j, basis_b(inst, j)?.len())))
        .collect::<Result<_>>()?;
    report.max_part_degree = Some(max_part);
    if opts.witnesses > 0 {
        report.witnesses = Some(witnesses);
    }
    report.elapsed = start.elapsed().as_secs_f64();
    Ok(report)
}
