use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::oracle;
use crate::plucker::{fmt_fraction, PluckerMonomial, PluckerPoly, Straightener};
use crate::{Rational, Result};

/// How a certificate was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertMethod {
    Trivial,
    Graph,
    LinearAlgebra,
    RowSplit,
}

impl CertMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CertMethod::Trivial => "trivial",
            CertMethod::Graph => "graph",
            CertMethod::LinearAlgebra => "linear-algebra",
            CertMethod::RowSplit => "row-split",
        }
    }
}

/// `coeff * prod(generators) * residual`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm {
    pub coeff: Rational,
    pub generators: Vec<PluckerMonomial>,
    pub residual: PluckerMonomial,
}

impl CertTerm {
    pub fn new(coeff: Rational, generators: Vec<PluckerMonomial>, residual: PluckerMonomial) -> Self {
        CertTerm {
            coeff,
            generators,
            residual,
        }
    }

    pub fn product(&self) -> PluckerMonomial {
        self.generators.iter().fold(self.residual.clone(), |a, g| a.mul(g))
    }
}

/// A target monomial written through lower-degree invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCertificate {
    pub target: PluckerMonomial,
    pub terms: Vec<CertTerm>,
    pub method: CertMethod,
    pub notes: Vec<String>,
}

impl FactorCertificate {
    pub fn new(target: PluckerMonomial, terms: Vec<CertTerm>, method: CertMethod) -> Self {
        FactorCertificate {
            target,
            terms,
            method,
            notes: Vec::new(),
        }
    }

    /// The sum of the terms, unstraightened.
    pub fn expansion(&self) -> PluckerPoly {
        PluckerPoly::from_terms(
            self.target.n(),
            self.terms.iter().map(|t| (t.coeff.clone(), t.product())),
        )
    }

    /// All generators, in order of first appearance.
    pub fn generators(&self) -> Vec<&PluckerMonomial> {
        let mut out: Vec<&PluckerMonomial> = Vec::new();
        for g in self.terms.iter().flat_map(|t| &t.generators) {
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }

    /// Expansion and target have the same straightened form.
    pub fn check_straighten(&self, st: &mut Straightener) -> Result<bool> {
        let lhs = st.straighten(&self.expansion())?;
        let rhs = st.straighten_monomial(&self.target)?;
        Ok(lhs == rhs)
    }

    /// Expansion and target agree on `count` seeded random matrices.
    pub fn check_eval(&self, seed: u64, count: usize) -> Result<bool> {
        oracle::agree(&self.expansion(), &PluckerPoly::from_monomial(self.target.clone()), seed, count)
    }

    /// Replaces every generator by its straightened form and collects equal terms.
    pub fn standardized(self, st: &mut Straightener) -> Result<Self> {
        let mut acc: BTreeMap<(Vec<PluckerMonomial>, PluckerMonomial), Rational> = BTreeMap::new();
        for t in &self.terms {
            let mut partial: Vec<(Rational, Vec<PluckerMonomial>)> = vec![(t.coeff.clone(), Vec::new())];
            for g in &t.generators {
                let sg = st.straighten_monomial(g)?;
                let mut next = Vec::new();
                for (c, gs) in &partial {
                    for (m, d) in sg.terms() {
                        let mut gs2 = gs.clone();
                        gs2.push(m.clone());
                        next.push((c * d, gs2));
                    }
                }
                partial = next;
            }
            for (c, mut gs) in partial {
                gs.sort();
                *acc.entry((gs, t.residual.clone())).or_insert_with(Rational::zero) += c;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((g, r), c)| CertTerm::new(c, g, r))
            .collect();
        Ok(FactorCertificate {
            terms,
            ..self
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].coeff.is_one() && self.terms[0].residual.is_one()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                json!({
                    "coeff": fmt_fraction(&t.coeff),
                    "generators": t.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "residual": t.residual.to_string(),
                })
            })
            .collect();
        let mut v = json!({
            "target": self.target.to_string(),
            "method": self.method.as_str(),
            "terms": terms,
        });
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        v
    }
}
