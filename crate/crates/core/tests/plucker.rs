mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use torquo::linalg::{IntegerEchelon, SparseInt};
use torquo::oracle::{agree, random_matrices};
use torquo::plucker::{
    eval_monomial, eval_on_matrix, exchange, parse_monomial, parse_poly, relation_step, straighten,
    straighten_monomial,
};
use torquo::verifier::basis_a;
use torquo::weights::lookup_instance;
use torquo::{PluckerMonomial, PluckerPoly, Rational};

fn mono(s: &str, n: usize) -> PluckerMonomial {
    parse_monomial(s, Some(n)).unwrap()
}

fn poly(terms: &[(i64, &str)], n: usize) -> PluckerPoly {
    PluckerPoly::from_terms(n, terms.iter().map(|&(c, m)| (Rational::from_integer(c.into()), mono(m, n))))
}

#[test]
fn single_relation_examples() {
    let p = exchange(&mono("p[1,3]p[4,5]", 5), &[1, 3], &[4, 5]).unwrap();
    assert_eq!(p, poly(&[(1, "p[1,4]p[3,5]"), (-1, "p[1,5]p[3,4]")], 5));
    let p = exchange(&mono("p[1,3]p[4]", 4), &[1, 3], &[4]).unwrap();
    assert_eq!(p, poly(&[(1, "p[1,4]p[3]"), (-1, "p[3,4]p[1]")], 4));
    let p = exchange(&mono("p[2,4]p[5]", 5), &[2, 4], &[5]).unwrap();
    assert_eq!(p, poly(&[(1, "p[2,5]p[4]"), (-1, "p[4,5]p[2]")], 5));
    assert!(exchange(&mono("p[1,3]p[3,5]", 5), &[1, 3], &[3, 5]).is_err());
    assert!(exchange(&mono("p[1,3]p[4,5]", 5), &[1, 2], &[4, 5]).is_err());
}

#[test]
fn worked_example_relation() {
    let f1 = common::tex_monomial("p_{12}^2p_{13}^5p_{14}^3p_{24}^7p_{25}p_{35}^5p_{5}^4p_{6}^{10}", 6);
    let f2 = common::tex_monomial("p_{12}^2p_{13}^5p_{14}^3p_{24}^6p_{25}^2p_{35}^5p_{5}^3p_4p_{6}^{10}", 6);
    let f3 = common::tex_monomial("p_{12}^2p_{13}^5p_{14}^3p_{24}^6p_{25}p_{35}^5p_{45}p_2p_{5}^3p_{6}^{10}", 6);
    let got = exchange(&f1, &[2, 4], &[5]).unwrap();
    let want = PluckerPoly::from_terms(6, [(Rational::one(), f2), (-Rational::one(), f3)]);
    assert_eq!(got, want);
    assert!(agree(&got, &PluckerPoly::from_monomial(f1), 0, 10).unwrap());
}

#[test]
fn straighten_examples() {
    let p = straighten_monomial(&mono("p[1,4]p[2,3]", 4)).unwrap();
    assert_eq!(p.to_string(), "-1 * p[1,2]p[3,4]\n+1 * p[1,3]p[2,4]\n");
    let p = straighten_monomial(&mono("p[2,3]p[1]", 3)).unwrap();
    assert_eq!(p.to_string(), "-1 * p[1,2]p[3]\n+1 * p[1,3]p[2]\n");
    for s in ["p[1,3]p[4,5]", "p[1,2]^2p[3,4]^2", "p[1,2,4]p[1,3,5]p[2,3,6]p[4,5,6]"] {
        let m = parse_monomial(s, None).unwrap();
        assert!(m.is_standard());
        assert_eq!(straighten_monomial(&m).unwrap(), PluckerPoly::from_monomial(m));
    }
    let rel = poly(&[(1, "p[1,3]p[4,5]"), (-1, "p[1,4]p[3,5]"), (1, "p[1,5]p[3,4]")], 5);
    assert!(straighten(&rel).unwrap().is_zero());
    let rel = poly(&[(1, "p[1,3]p[4]"), (-1, "p[1,4]p[3]"), (1, "p[3,4]p[1]")], 4);
    assert!(straighten(&rel).unwrap().is_zero());
}

#[test]
fn mixed_profiles_rejected() {
    assert!(straighten_monomial(&mono("p[1,2,3]p[4,5]", 5)).is_err());
    assert!(straighten_monomial(&mono("p[1,2,3]p[4]", 5)).is_err());
}

#[test]
fn evaluation_examples() {
    let id = vec![vec![1, 0], vec![0, 1], vec![0, 0], vec![0, 0]];
    assert_eq!(eval_monomial(&mono("p[1,2]", 4), &id).unwrap(), BigInt::one());
    assert_eq!(eval_monomial(&mono("p[3,4]", 4), &id).unwrap(), BigInt::zero());
    let rel = poly(&[(1, "p[1,3]p[4,5]"), (-1, "p[1,4]p[3,5]"), (1, "p[1,5]p[3,4]")], 5);
    for m in random_matrices(3, 10, 5, 2) {
        assert!(eval_on_matrix(&rel, &m).unwrap().is_zero());
    }
    let narrow = vec![vec![1]; 5];
    assert!(eval_on_matrix(&rel, &narrow).is_err());
}

/// Each variable has degree at most 2 in the flag relation, so vanishing on
/// the grid {-1,0,1}^8 proves it vanishes identically.
#[test]
fn flag_relation_vanishes_on_grid() {
    let rel = poly(&[(1, "p[1,3]p[4]"), (-1, "p[1,4]p[3]"), (1, "p[3,4]p[1]")], 4);
    for code in 0..3usize.pow(8) {
        let mut c = code;
        let m: Vec<Vec<i64>> = (0..4)
            .map(|_| {
                (0..2)
                    .map(|_| {
                        let v = (c % 3) as i64 - 1;
                        c /= 3;
                        v
                    })
                    .collect()
            })
            .collect();
        assert!(eval_on_matrix(&rel, &m).unwrap().is_zero(), "{m:?}");
    }
}

#[test]
fn text_roundtrip() {
    let p = parse_poly("# relation\nn: 5\n1 * p[1,3]p[4,5]\n-1/2 * p[1,4]p[3,5]\n").unwrap();
    assert_eq!(p.n(), 5);
    assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    assert_eq!(mono("p[1,2]^3p[3]", 3).to_string(), "p[1,2]^3p[3]");
    assert!(parse_monomial("p[2,1]", None).is_err());
    assert!(parse_monomial("q[1,2]", None).is_err());
}

/// Columns of the evaluation matrix of the degree-1 basis are independent.
#[test]
fn degree_one_bases_are_independent() {
    for label in ["g26", "g36", "flag-4-1-1", "flag-4-2-1"] {
        let inst = lookup_instance(label).unwrap();
        let basis = basis_a(&inst, 1).unwrap();
        let w = basis.iter().flat_map(|m| m.factors()).map(Vec::len).max().unwrap();
        let mats = random_matrices(7, basis.len() + 5, inst.family.n(), w);
        let mut ech = IntegerEchelon::new();
        for (j, _) in basis.iter().enumerate() {
            let col: SparseInt = mats
                .iter()
                .enumerate()
                .map(|(i, m)| (i, eval_monomial(&basis[j], m).unwrap()))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            ech.insert(col);
        }
        assert_eq!(ech.rank(), basis.len(), "{label}");
    }
}

fn concat(m: &PluckerMonomial) -> Vec<u8> {
    m.factors().iter().flatten().copied().collect()
}

fn monomial() -> impl Strategy<Value = PluckerMonomial> {
    prop_oneof![
        (2usize..=3, 4usize..=7).prop_flat_map(|(r, n)| {
            prop::collection::vec(prop::sample::subsequence((1..=n as u8).collect::<Vec<_>>(), r), 1..=4)
                .prop_map(move |rows| PluckerMonomial::new(n, rows).unwrap())
        }),
        (3usize..=6).prop_flat_map(|n| {
            prop::collection::vec(prop::sample::subsequence((1..=n as u8).collect::<Vec<_>>(), 1..=2), 1..=4)
                .prop_map(move |rows| PluckerMonomial::new(n, rows).unwrap())
        }),
    ]
}

proptest! {
    #[test]
    fn straightening_preserves_values(m in monomial(), seed in 0u64..1000) {
        let out = straighten_monomial(&m).unwrap();
        prop_assert!(out.monomials().all(|t| t.is_standard()));
        prop_assert!(agree(&PluckerPoly::from_monomial(m), &out, seed, 10).unwrap());
    }

    #[test]
    fn relation_steps_decrease(m in monomial()) {
        if let Some(terms) = relation_step(&m).unwrap() {
            for (t, _) in &terms {
                prop_assert!(concat(t) < concat(&m), "{} -> {}", m, t);
            }
            let sum = PluckerPoly::from_terms(m.n(), terms.into_iter().map(|(t, c)| (Rational::from_integer(c.into()), t)));
            prop_assert!(agree(&PluckerPoly::from_monomial(m.clone()), &sum, 1, 5).unwrap());
        } else {
            prop_assert!(m.is_standard());
        }
    }

    #[test]
    fn straightening_is_linear(a in monomial(), c in -3i64..=3) {
        let p = PluckerPoly::from_terms(a.n(), [(Rational::from_integer(c.into()), a.clone())]);
        let lhs = straighten(&p).unwrap();
        let rhs = straighten_monomial(&a).unwrap().scale(&Rational::from_integer(c.into()));
        prop_assert_eq!(lhs, rhs);
    }
}
