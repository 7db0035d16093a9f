//! Type A tableaux: rows are Plücker index tuples.

use std::fmt;

use crate::plucker::{canonical_cmp, check_row, rows_standard, PluckerMonomial, Row};
use crate::weights::ShapeA;
use crate::{Error, Result};

/// A tableau over `1..=n`, rows kept in canonical order
/// (longer rows first, then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableauA {
    n: usize,
    rows: Vec<Row>,
}

impl TableauA {
    pub fn new(n: usize, mut rows: Vec<Row>) -> Result<Self> {
        for r in &rows {
            check_row(r, n).map_err(|e| Error::InvalidTableau(e.to_string()))?;
        }
        rows.sort_by(|a, b| canonical_cmp(a, b));
        Ok(TableauA { n, rows })
    }

    pub fn empty(n: usize) -> Self {
        TableauA { n, rows: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn is_standard(&self) -> bool {
        rows_standard(&self.rows)
    }

    pub fn content(&self) -> Vec<u32> {
        content(self)
    }

    pub fn is_t_invariant(&self) -> bool {
        is_t_invariant(self)
    }

    /// Column lengths of the underlying diagram.
    pub fn shape(&self) -> ShapeA {
        let width = self.rows.first().map_or(0, Vec::len);
        ShapeA {
            columns: (0..width)
                .map(|j| self.rows.iter().filter(|r| r.len() > j).count())
                .collect(),
        }
    }
}

/// `c(i)` = number of boxes containing `i`.
pub fn content(t: &TableauA) -> Vec<u32> {
    let mut c = vec![0u32; t.n];
    for r in &t.rows {
        for &e in r {
            c[e as usize - 1] += 1;
        }
    }
    c
}

pub fn is_t_invariant(t: &TableauA) -> bool {
    let c = content(t);
    c.windows(2).all(|w| w[0] == w[1])
}

impl fmt::Display for TableauA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let s: Vec<String> = r.iter().map(u8::to_string).collect();
            writeln!(f, "{}", s.join(","))?;
        }
        Ok(())
    }
}

pub fn monomial_from_tableau(t: &TableauA) -> PluckerMonomial {
    PluckerMonomial::from_sorted(t.n, t.rows.clone())
}

pub fn tableau_from_monomial(m: &PluckerMonomial) -> TableauA {
    TableauA {
        n: m.n(),
        rows: m.factors().to_vec(),
    }
}

/// Requested content for an enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContentSpec {
    /// Every index occurs equally often.
    Uniform,
    Exact(Vec<u32>),
}

/// Resolves a content spec against a shape and rank.
pub fn resolve_content(shape: &ShapeA, n: usize, spec: &ContentSpec) -> Result<Vec<u32>> {
    let boxes = shape.boxes();
    match spec {
        ContentSpec::Uniform => {
            if n == 0 || !boxes.is_multiple_of(n) {
                return Err(Error::ContentMismatch {
                    boxes,
                    content: boxes - boxes % n.max(1),
                });
            }
            Ok(vec![(boxes / n) as u32; n])
        }
        ContentSpec::Exact(c) => {
            let total: usize = c.iter().map(|&x| x as usize).sum();
            if c.len() != n || total != boxes {
                return Err(Error::ContentMismatch {
                    boxes,
                    content: total,
                });
            }
            Ok(c.clone())
        }
    }
}

/// Standard tableaux of a shape and content, produced column by column
/// (left to right, top to bottom, smallest entry first).
#[derive(Debug, Clone)]
pub struct StandardTableaux {
    n: usize,
    row_len: Vec<usize>,
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<u8>>,
    vals: Vec<u8>,
    left: Vec<u32>,
    pos: usize,
    state: IterState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

pub fn enumerate_standard(shape: &ShapeA, n: usize, spec: &ContentSpec) -> Result<StandardTableaux> {
    let content = resolve_content(shape, n, spec)?;
    let row_len = shape.row_lengths();
    let mut cells = Vec::with_capacity(shape.boxes());
    for (j, &h) in shape.columns.iter().enumerate() {
        for i in 0..h {
            cells.push((i, j));
        }
    }
    let grid = row_len.iter().map(|&l| vec![0u8; l]).collect();
    Ok(StandardTableaux {
        n,
        vals: vec![0; cells.len()],
        row_len,
        cells,
        grid,
        left: content,
        pos: 0,
        state: IterState::Fresh,
    })
}

impl StandardTableaux {
    fn emit(&self) -> TableauA {
        TableauA {
            n: self.n,
            rows: self.grid.clone(),
        }
    }

    /// Smallest admissible value strictly above `after` for the current cell.
    fn next_value(&self, after: u8) -> Option<u8> {
        let (i, j) = self.cells[self.pos];
        let mut lo = 1u8;
        if i > 0 {
            lo = lo.max(self.grid[i - 1][j]);
        }
        if j > 0 {
            lo = lo.max(self.grid[i][j - 1] + 1);
        }
        lo = lo.max(after + 1);
        let room = (self.row_len[i] - 1 - j) as u8;
        let hi = (self.n as u8).checked_sub(room)?;
        (lo..=hi).find(|&v| self.left[v as usize - 1] > 0)
    }
}

impl Iterator for StandardTableaux {
    type Item = TableauA;

    fn next(&mut self) -> Option<TableauA> {
        let len = self.cells.len();
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.state = IterState::Running;
                if len == 0 {
                    self.state = IterState::Done;
                    return Some(self.emit());
                }
            }
            IterState::Running => {
                if len == 0 {
                    self.state = IterState::Done;
                    return None;
                }
                self.pos = len - 1;
            }
        }
        loop {
            let cur = self.vals[self.pos];
            let (i, j) = self.cells[self.pos];
            if cur > 0 {
                self.left[cur as usize - 1] += 1;
                self.grid[i][j] = 0;
            }
            match self.next_value(cur) {
                Some(v) => {
                    self.vals[self.pos] = v;
                    self.left[v as usize - 1] -= 1;
                    self.grid[i][j] = v;
                    if self.pos + 1 == len {
                        return Some(self.emit());
                    }
                    self.pos += 1;
                    self.vals[self.pos] = 0;
                }
                None => {
                    self.vals[self.pos] = 0;
                    if self.pos == 0 {
                        self.state = IterState::Done;
                        return None;
                    }
                    self.pos -= 1;
                }
            }
        }
    }
}

/// Parses tableaux separated by blank lines; rows are comma-separated entries.
/// A `type: A, n: <rank>` header fixes the rank, otherwise the largest entry is used.
pub fn parse_tableaux(s: &str) -> Result<Vec<TableauA>> {
    let blocks = crate::tableau_b::parse_blocks(s)?;
    blocks
        .into_iter()
        .map(|b| {
            if b.family == Some('B') {
                return Err(Error::Parse {
                    line: b.line,
                    msg: "expected a type A tableau".into(),
                });
            }
            let n = b.n.unwrap_or_else(|| b.rows.iter().flatten().copied().max().unwrap_or(0) as usize);
            TableauA::new(n, b.rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contents() {
        let t = TableauA::new(4, vec![vec![1, 2], vec![1, 2], vec![3, 4], vec![3, 4]]).unwrap();
        assert_eq!(t.content(), vec![2, 2, 2, 2]);
        let t = TableauA::new(6, vec![vec![1, 2, 4], vec![1, 3, 5], vec![2, 3, 6], vec![4, 5, 6]]).unwrap();
        assert_eq!(t.content(), vec![2; 6]);
        assert!(t.is_t_invariant());
        let t = TableauA::new(4, vec![vec![1, 2], vec![1, 3]]).unwrap();
        assert!(!t.is_t_invariant());
    }

    #[test]
    fn empty_tableau() {
        let t = TableauA::empty(3);
        assert!(t.is_standard());
        assert_eq!(t.content(), vec![0, 0, 0]);
        let all: Vec<_> = enumerate_standard(&ShapeA::rectangle(0, 2), 3, &ContentSpec::Exact(vec![0, 0, 0]))
            .unwrap()
            .collect();
        assert_eq!(all, vec![TableauA::empty(3)]);
    }

    #[test]
    fn g36_degree_one() {
        let all: Vec<_> = enumerate_standard(&ShapeA::rectangle(2, 3), 6, &ContentSpec::Uniform)
            .unwrap()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(
            all,
            vec![
                "1,3,5\n2,4,6\n",
                "1,3,4\n2,5,6\n",
                "1,2,5\n3,4,6\n",
                "1,2,4\n3,5,6\n",
                "1,2,3\n4,5,6\n"
            ]
        );
    }

    #[test]
    fn content_mismatch() {
        assert!(enumerate_standard(&ShapeA::rectangle(3, 2), 4, &ContentSpec::Uniform).is_err());
        assert!(enumerate_standard(&ShapeA::rectangle(2, 2), 4, &ContentSpec::Exact(vec![1, 1, 1, 2])).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        let text = "# two tableaux\ntype: A, n: 4\n1,2\n3,4\n\n1,3\n2,4\n";
        let ts = parse_tableaux(text).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[1].to_string(), "1,3\n2,4\n");
        assert_eq!(ts[0].n(), 4);
    }
}
