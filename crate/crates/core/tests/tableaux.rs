mod common;

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use torquo::tableau_a::{
    content, enumerate_standard, is_t_invariant, monomial_from_tableau, parse_tableaux, tableau_from_monomial,
    ContentSpec,
};
use torquo::tableau_b::{
    enumerate_standard_b, format_tableaux_b, is_admissible, is_t_invariant_b, parse_tableaux_b, rows_of_length,
    s_op,
};
use torquo::weights::lookup_instance;
use torquo::{GroupInstance, PluckerMonomial, ShapeA, TableauA, TableauB};

use common::*;

fn t(n: usize, rows: &[&[u8]]) -> TableauA {
    TableauA::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn content_examples() {
    assert_eq!(content(&t(4, &[&[1, 2], &[3, 4]])), vec![1, 1, 1, 1]);
    assert_eq!(content(&t(4, &[&[1, 2], &[1, 2], &[3, 4], &[3, 4]])), vec![2, 2, 2, 2]);
    let g = t(6, &[&[1, 2, 4], &[1, 3, 5], &[2, 3, 6], &[4, 5, 6]]);
    assert_eq!(content(&g), vec![2; 6]);
    assert!(is_t_invariant(&g));
    assert!(is_t_invariant(&t(4, &[&[1, 2], &[3, 4]])));
    assert!(!is_t_invariant(&t(4, &[&[1, 2], &[1, 3]])));
    assert!(is_t_invariant(&t(6, &[&[1, 3, 5], &[2, 4, 6]])));
    let e = TableauA::empty(5);
    assert!(e.is_standard() && e.is_t_invariant());
    assert_eq!(e.content(), vec![0; 5]);
}

#[test]
fn g24_matches_brute_force() {
    let got: BTreeSet<Vec<Vec<u8>>> = enumerate_standard(&ShapeA::rectangle(4, 2), 4, &ContentSpec::Uniform)
        .unwrap()
        .map(|t| t.rows().to_vec())
        .collect();
    assert_eq!(got, naive_tableaux(&[2; 4], 4, &[2; 4]));
    assert_eq!(got.len(), 3);
}

#[test]
fn g36_degree_one_rows() {
    let got: Vec<Vec<Vec<u8>>> = enumerate_standard(&ShapeA::rectangle(2, 3), 6, &ContentSpec::Uniform)
        .unwrap()
        .map(|t| t.rows().to_vec())
        .collect();
    for first in [[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5]] {
        let rest: Vec<u8> = (1..=6).filter(|x| !first.contains(x)).collect();
        assert!(got.contains(&vec![first.to_vec(), rest]));
    }
    assert_eq!(got.len(), 5);
}

#[test]
fn content_total_mismatch_rejected() {
    assert!(enumerate_standard(&ShapeA::rectangle(3, 2), 4, &ContentSpec::Uniform).is_err());
    assert!(enumerate_standard(&ShapeA::rectangle(2, 2), 4, &ContentSpec::Exact(vec![1, 1, 1, 2])).is_err());
}

/// Column-length vectors with at most `max_boxes` boxes and rows of length at most `n`.
fn shapes(n: usize, max_boxes: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == n {
            return;
        }
        for c in 1..=cap.min(left) {
            cur.push(c);
            rec(n, left - c, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_boxes, max_boxes, &mut Vec::new(), &mut out);
    out
}

#[test]
fn enumeration_matches_naive_filter() {
    let mut checked = 0;
    for n in 2..=6 {
        for cols in shapes(n, 12) {
            let shape = ShapeA::new(cols.clone()).unwrap();
            let boxes = shape.boxes();
            let mut contents = Vec::new();
            if boxes.is_multiple_of(n) {
                contents.push(vec![(boxes / n) as u32; n]);
            }
            let mut skew = vec![0u32; n];
            for i in 0..boxes {
                skew[(i * i + i / 3) % n] += 1;
            }
            contents.push(skew);
            for c in contents {
                let got: Vec<Vec<Vec<u8>>> = enumerate_standard(&shape, n, &ContentSpec::Exact(c.clone()))
                    .unwrap()
                    .map(|t| t.rows().to_vec())
                    .collect();
                let unique: BTreeSet<_> = got.iter().cloned().collect();
                assert_eq!(unique.len(), got.len(), "duplicates for {cols:?}");
                assert_eq!(unique, naive_tableaux(&rows_of_columns(&cols), n, &c), "shape {cols:?} content {c:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn duality_counts() {
    for n in 2..=6 {
        for r in 1..n {
            for k in 1..=3 {
                let a = enumerate_standard(&ShapeA::rectangle(k * n, r), n, &ContentSpec::Uniform).unwrap().count();
                let b = enumerate_standard(&ShapeA::rectangle(k * n, n - r), n, &ContentSpec::Uniform).unwrap().count();
                assert_eq!(a, b, "r={r} n={n} k={k}");
            }
        }
    }
}

#[test]
fn tableau_monomial_roundtrip() {
    let g = t(6, &[&[1, 2, 4], &[1, 3, 5], &[2, 3, 6], &[4, 5, 6]]);
    let m = monomial_from_tableau(&g);
    assert_eq!(m.to_string(), "p[1,2,4]p[1,3,5]p[2,3,6]p[4,5,6]");
    assert_eq!(tableau_from_monomial(&m), g);
    assert_eq!(monomial_from_tableau(&t(4, &[&[1, 2], &[3, 4]])).to_string(), "p[1,2]p[3,4]");
    assert_eq!(monomial_from_tableau(&TableauA::empty(3)), PluckerMonomial::one(3));
    assert_eq!(tableau_from_monomial(&PluckerMonomial::one(3)), TableauA::empty(3));
}

#[test]
fn tableau_text_roundtrip() {
    let ts = parse_tableaux("# g24\n1,2\n1,3\n2,4\n3,4\n\n1,2\n1,2\n3,4\n3,4\n").unwrap();
    assert_eq!(ts.len(), 2);
    assert_eq!(ts[0].to_string(), "1,2\n1,3\n2,4\n3,4\n");
    assert!(parse_tableaux("1,x\n").is_err());
}

#[test]
fn s_op_examples() {
    assert_eq!(s_op(3, &[1, 4], 3), vec![1, 3]);
    assert_eq!(s_op(1, &[2, 4], 3), vec![2, 4]);
    assert_eq!(s_op(2, &[3, 5], 3), vec![2, 4]);
}

#[test]
fn admissibility_examples() {
    assert!(is_admissible(&[1, 5], &[2, 6], 3));
    assert!(is_admissible(&[1, 3], &[1, 4], 3));
    assert!(is_admissible(&[2, 4], &[3, 5], 3));
    assert!(!is_admissible(&[1, 2], &[5, 6], 3));
    for len in 1..=3 {
        for r in rows_of_length(3, len) {
            assert!(is_admissible(&r, &r, 3));
        }
    }
}

/// The row operation straight from its definition.
fn naive_s(i: usize, r: &[u8], n: usize) -> Vec<u8> {
    let mut v = r.to_vec();
    if i < n {
        let (a, b) = ((i + 1) as u8, (2 * n + 1 - i) as u8);
        if v.contains(&a) && v.contains(&b) {
            for x in v.iter_mut() {
                if *x == a {
                    *x = i as u8;
                } else if *x == b {
                    *x = (2 * n - i) as u8;
                }
            }
        }
    } else if let Some(x) = v.iter_mut().find(|x| **x == (n + 1) as u8) {
        *x = n as u8;
    }
    v.sort();
    v
}

/// Depth-first search over chains of distinct rows from `start`, at most `depth` steps.
fn reaches(start: &[u8], goal: &[u8], n: usize, depth: usize, seen: &mut Vec<Vec<u8>>) -> bool {
    if start == goal {
        return true;
    }
    if depth == 0 {
        return false;
    }
    for i in 1..=n {
        let next = naive_s(i, start, n);
        if next != start && !seen.contains(&next) {
            seen.push(next.clone());
            let hit = reaches(&next, goal, n, depth - 1, seen);
            seen.pop();
            if hit {
                return true;
            }
        }
    }
    false
}

#[test]
fn admissibility_agrees_with_path_search() {
    for n in 1..=3 {
        for len in 1..=3.min(n) {
            let rows = rows_of_length(n, len);
            for a in &rows {
                for b in &rows {
                    let oracle = reaches(b, a, n, rows.len(), &mut vec![b.clone()]);
                    assert_eq!(is_admissible(a, b, n), oracle, "n={n} {a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn s_op_decreases_or_fixes() {
    for n in 1..=4 {
        for len in 1..=n {
            for r in rows_of_length(n, len) {
                for i in 1..=n {
                    let s = s_op(i, &r, n);
                    assert_eq!(s, naive_s(i, &r, n));
                    if s == r {
                        assert_eq!(s_op(i, &s, n), s);
                    } else {
                        assert!(s.iter().sum::<u8>() < r.iter().sum::<u8>());
                        assert!(s.iter().zip(&r).all(|(x, y)| x <= y));
                    }
                }
            }
        }
    }
}

fn b(n: usize, rows: &[&[u8]], paired: usize) -> TableauB {
    TableauB::new(n, rows.iter().map(|r| r.to_vec()).collect(), paired).unwrap()
}

#[test]
fn type_b_invariance_examples() {
    assert!(is_t_invariant_b(&b(2, &[&[1], &[1], &[4], &[4]], 2)));
    assert!(is_t_invariant_b(&b(3, &[&[2], &[2], &[5], &[5]], 2)));
    assert!(!is_t_invariant_b(&b(3, &[&[1, 2], &[1, 2]], 1)));
    let h = b(3, &[&[1, 2], &[1, 2]], 1).half_weight();
    assert_eq!(h.iter().map(|x| x.to_string()).collect::<Vec<_>>(), vec!["1", "1", "0"]);
    assert!(TableauB::new(3, vec![vec![1, 6]], 0).is_err());
    assert!(TableauB::new(3, vec![vec![7]], 0).is_err());
}

fn degree_one(label: &str) -> HashSet<Vec<Vec<u8>>> {
    enumerate_standard_b(&lookup_instance(label).unwrap(), 1, true)
        .unwrap()
        .map(|t| t.rows().to_vec())
        .collect()
}

fn set(ts: &[&[&[u8]]]) -> HashSet<Vec<Vec<u8>>> {
    ts.iter().map(|t| t.iter().map(|r| r.to_vec()).collect()).collect()
}

#[test]
fn spin_generators() {
    assert_eq!(degree_one("spin5-1"), set(&[&[&[1], &[1], &[4], &[4]], &[&[2], &[2], &[3], &[3]]]));
    assert_eq!(degree_one("spin5-2"), set(&[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]));
    assert_eq!(
        degree_one("spin7-1"),
        set(&[&[&[1], &[1], &[6], &[6]], &[&[2], &[2], &[5], &[5]], &[&[3], &[3], &[4], &[4]]])
    );
}

#[test]
fn spin_enumeration_is_valid_and_complete() {
    for label in ["spin5-1", "spin5-2", "spin7-1", "spin7-3"] {
        let inst = lookup_instance(label).unwrap();
        for k in 1..=2 {
            let all: Vec<TableauB> = enumerate_standard_b(&inst, k, false).unwrap().collect();
            let zero: Vec<TableauB> = enumerate_standard_b(&inst, k, true).unwrap().collect();
            let filtered: Vec<TableauB> = all.iter().filter(|t| t.is_t_invariant()).cloned().collect();
            assert_eq!(zero, filtered, "{label} k={k}");
            for t in &all {
                assert!(t.is_standard() && t.rows().iter().all(|r| !r.is_empty()), "{label}");
            }
        }
    }
    assert!(enumerate_standard_b(&GroupInstance::grassmannian(2, 4, 4).unwrap(), 1, true).is_err());
}

#[test]
fn type_b_text_roundtrip() {
    let ts: Vec<TableauB> = enumerate_standard_b(&lookup_instance("spin7-2").unwrap(), 1, true).unwrap().collect();
    let text = format_tableaux_b(&ts);
    assert!(text.starts_with("type: B, n: 3"));
    assert_eq!(parse_tableaux_b(&text).unwrap(), ts);
}

proptest! {
    #[test]
    fn invariance_is_constant_content(rows in prop::collection::vec(prop::sample::subsequence(vec![1u8, 2, 3, 4, 5], 1..=3), 0..6)) {
        let t = TableauA::new(5, rows).unwrap();
        let c = t.content();
        prop_assert_eq!(t.is_t_invariant(), c.windows(2).all(|w| w[0] == w[1]));
        prop_assert_eq!(c.iter().sum::<u32>() as usize, t.rows().iter().map(Vec::len).sum::<usize>());
    }
}
