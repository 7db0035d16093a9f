//! Type B tableaux for `Spin_{2n+1}`: entries in `1..=2n`, rows never contain
//! both `i` and `2n+1-i`, and consecutive row pairs must be admissible.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::plucker::{canonical_cmp, rows_standard, Row};
use crate::weights::{shape_b, GroupInstance};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableauB {
    n: usize,
    rows: Vec<Row>,
    paired: usize,
}

/// The row operation `s_i`.
pub fn s_op(i: usize, r: &[u8], n: usize) -> Row {
    let mut out = r.to_vec();
    if i < n {
        let (a, b) = ((i + 1) as u8, (2 * n + 1 - i) as u8);
        if r.contains(&a) && r.contains(&b) {
            for x in out.iter_mut() {
                if *x == a {
                    *x = i as u8;
                } else if *x == b {
                    *x = (2 * n - i) as u8;
                }
            }
            out.sort_unstable();
        }
    } else if i == n {
        for x in out.iter_mut() {
            if *x == (n + 1) as u8 {
                *x = n as u8;
            }
        }
        out.sort_unstable();
    }
    out
}

fn reachable(from: &[u8], to: &[u8], n: usize) -> bool {
    if from == to {
        return true;
    }
    let mut seen: HashSet<Row> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(from.to_vec());
    queue.push_back(from.to_vec());
    while let Some(r) = queue.pop_front() {
        for i in 1..=n {
            let s = s_op(i, &r, n);
            if s == to {
                return true;
            }
            if s != r && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    false
}

/// Whether `(r, r2)` may stand as a pair of consecutive rows: `r == r2`, or
/// `r` is obtained from `r2` by a chain of distinct rows under the `s_i`.
pub fn is_admissible(r: &[u8], r2: &[u8], n: usize) -> bool {
    r.len() == r2.len() && reachable(r2, r, n)
}

/// The other orientation: `r2` obtained from `r`.
pub fn is_admissible_upward(r: &[u8], r2: &[u8], n: usize) -> bool {
    r.len() == r2.len() && reachable(r, r2, n)
}

/// Entries at most `2n`, strictly increasing, never both `i` and `2n+1-i`.
pub fn row_ok(r: &[u8], n: usize) -> bool {
    !r.is_empty()
        && r[0] >= 1
        && (r[r.len() - 1] as usize) <= 2 * n
        && r.windows(2).all(|w| w[0] < w[1])
        && r.iter().all(|&x| !r.contains(&((2 * n + 1) as u8 - x)))
}

impl TableauB {
    pub fn new(n: usize, mut rows: Vec<Row>, paired: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| !row_ok(r, n)) {
            return Err(Error::InvalidTableau(format!("row {r:?} is not a type B row for n={n}")));
        }
        if 2 * paired > rows.len() {
            return Err(Error::InvalidTableau(format!(
                "{paired} row pairs requested but only {} rows",
                rows.len()
            )));
        }
        rows.sort_by(|a, b| canonical_cmp(a, b));
        Ok(TableauB { n, rows, paired })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn paired(&self) -> usize {
        self.paired
    }

    /// Rows beyond the paired prefix.
    pub fn spin_rows(&self) -> &[Row] {
        &self.rows[2 * self.paired..]
    }

    pub fn is_standard(&self) -> bool {
        rows_standard(&self.rows)
    }

    pub fn is_admissible(&self) -> bool {
        (0..self.paired).all(|i| is_admissible(&self.rows[2 * i], &self.rows[2 * i + 1], self.n))
    }

    pub fn is_admissible_upward(&self) -> bool {
        (0..self.paired).all(|i| is_admissible_upward(&self.rows[2 * i], &self.rows[2 * i + 1], self.n))
    }

    /// Standard, made of valid rows and admissible.
    pub fn is_valid(&self) -> bool {
        self.rows.iter().all(|r| row_ok(r, self.n)) && self.is_standard() && self.is_admissible()
    }

    pub fn content(&self) -> Vec<u32> {
        let mut c = vec![0u32; 2 * self.n];
        for r in &self.rows {
            for &e in r {
                c[e as usize - 1] += 1;
            }
        }
        c
    }

    /// Coordinates `(c(j) - c(2n+1-j)) / 2` of the weight on `epsilon_1..epsilon_n`.
    pub fn half_weight(&self) -> Vec<Rational> {
        let c = self.content();
        (0..self.n)
            .map(|j| {
                let d = c[j] as i64 - c[2 * self.n - 1 - j] as i64;
                Rational::new(d.into(), 2.into())
            })
            .collect()
    }

    pub fn is_t_invariant(&self) -> bool {
        is_t_invariant_b(self)
    }
}

pub fn is_t_invariant_b(t: &TableauB) -> bool {
    let c = t.content();
    (0..t.n).all(|j| c[j] == c[2 * t.n - 1 - j])
}

impl fmt::Display for TableauB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let s: Vec<String> = r.iter().map(u8::to_string).collect();
            writeln!(f, "{}", s.join(","))?;
        }
        Ok(())
    }
}

/// Header plus blank-line separated blocks.
pub fn format_tableaux_b(ts: &[TableauB]) -> String {
    let mut out = String::new();
    if let Some(t) = ts.first() {
        out.push_str(&format!("type: B, n: {}, paired: {}\n", t.n, t.paired));
    }
    for (i, t) in ts.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&t.to_string());
    }
    out
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Block {
    pub family: Option<char>,
    pub n: Option<usize>,
    pub paired: Option<usize>,
    pub rows: Vec<Row>,
    pub line: usize,
}

fn parse_header(t: &str, line: usize, cur: &mut Block) -> Result<()> {
    for part in t.split(',') {
        let (k, v) = part.split_once(':').ok_or_else(|| Error::Parse {
            line,
            msg: format!("bad header field {part:?}"),
        })?;
        let v = v.trim();
        let num = || {
            v.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("bad number {v:?}"),
            })
        };
        match k.trim() {
            "type" => cur.family = v.chars().next().map(|c| c.to_ascii_uppercase()),
            "n" => cur.n = Some(num()?),
            "paired" => cur.paired = Some(num()?),
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown header field {other:?}"),
                })
            }
        }
    }
    Ok(())
}

/// Splits tableau text into blocks; header fields carry over to later blocks.
pub(crate) fn parse_blocks(s: &str) -> Result<Vec<Block>> {
    let mut blocks = Vec::new();
    let mut cur = Block::default();
    for (i, raw) in s.lines().enumerate() {
        let line = i + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            if !cur.rows.is_empty() {
                let next = Block {
                    rows: vec![],
                    ..cur.clone()
                };
                blocks.push(std::mem::replace(&mut cur, next));
            }
            continue;
        }
        if t.contains(':') {
            parse_header(t, line, &mut cur)?;
            continue;
        }
        if cur.rows.is_empty() {
            cur.line = line;
        }
        let row: Row = t
            .split(',')
            .map(|e| {
                e.trim().parse::<u8>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad entry {e:?}"),
                })
            })
            .collect::<Result<_>>()?;
        cur.rows.push(row);
    }
    if !cur.rows.is_empty() {
        blocks.push(cur);
    }
    Ok(blocks)
}

pub fn parse_tableaux_b(s: &str) -> Result<Vec<TableauB>> {
    parse_blocks(s)?
        .into_iter()
        .map(|b| {
            let n = b.n.ok_or_else(|| Error::Parse {
                line: b.line,
                msg: "type B tableaux need an `n:` header".into(),
            })?;
            let paired = b.paired.unwrap_or(b.rows.len() / 2);
            TableauB::new(n, b.rows, paired)
        })
        .collect()
}

/// All valid type B rows of length `len`, in lexicographic order.
pub fn rows_of_length(n: usize, len: usize) -> Vec<Row> {
    fn rec(n: usize, len: usize, start: u8, cur: &mut Row, out: &mut Vec<Row>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=(2 * n) as u8 {
            if cur.contains(&((2 * n + 1) as u8 - v)) {
                continue;
            }
            cur.push(v);
            rec(n, len, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, len, 1, &mut Vec::new(), &mut out);
    out
}

/// Lazy enumeration of standard admissible tableaux of one shape.
#[derive(Debug)]
pub struct StandardTableauxB {
    n: usize,
    paired: usize,
    zero_weight: bool,
    row_len: Vec<usize>,
    cands: HashMap<usize, Vec<Row>>,
    adm: HashMap<(Row, Row), bool>,
    idx: Vec<usize>,
    counts: Vec<u32>,
    pos: usize,
    started: bool,
    done: bool,
    disagreements: usize,
}

/// Standard admissible tableaux of shape `p(k m lambda)`, optionally only zero-weight ones.
pub fn enumerate_standard_b(inst: &GroupInstance, k: u64, zero_weight: bool) -> Result<StandardTableauxB> {
    let shape = shape_b(inst, k)?;
    let n = inst.family.n();
    let row_len = shape.row_lengths();
    let mut cands = HashMap::new();
    for &l in &row_len {
        cands.entry(l).or_insert_with(|| rows_of_length(n, l));
    }
    Ok(StandardTableauxB {
        n,
        paired: shape.paired,
        zero_weight,
        idx: vec![0; row_len.len()],
        row_len,
        cands,
        adm: HashMap::new(),
        counts: vec![0; 2 * n],
        pos: 0,
        started: false,
        done: false,
        disagreements: 0,
    })
}

impl StandardTableauxB {
    /// Tableaux yielded so far that the opposite chain orientation would reject.
    pub fn orientation_disagreements(&self) -> usize {
        self.disagreements
    }

    fn row(&self, p: usize) -> &Row {
        &self.cands[&self.row_len[p]][self.idx[p]]
    }

    fn admissible_either(&mut self, a: &Row, b: &Row) -> bool {
        let n = self.n;
        *self
            .adm
            .entry((a.clone(), b.clone()))
            .or_insert_with(|| is_admissible(a, b, n) || is_admissible_upward(a, b, n))
    }

    fn fits(&mut self, p: usize, cand: &Row) -> bool {
        if p > 0 {
            let prev = self.row(p - 1).clone();
            if cand.iter().zip(&prev).any(|(c, a)| a > c) {
                return false;
            }
            if p % 2 == 1 && p < 2 * self.paired && !self.admissible_either(&prev, cand) {
                return false;
            }
        }
        if self.zero_weight {
            let n2 = 2 * self.n;
            let lo = cand[0] as usize;
            let remaining = (self.row_len.len() - p - 1) as u32;
            for t in 1..=self.n {
                let tp = n2 + 1 - t;
                let ct = self.counts[t - 1] + cand.contains(&(t as u8)) as u32;
                let ctp = self.counts[tp - 1] + cand.contains(&(tp as u8)) as u32;
                if tp < lo && ct != ctp {
                    return false;
                }
                if t < lo && (ctp > ct || ct > ctp + remaining) {
                    return false;
                }
            }
        }
        true
    }

    fn place(&mut self, p: usize, delta: i32) {
        let r = self.row(p).clone();
        for &e in &r {
            let c = &mut self.counts[e as usize - 1];
            *c = (*c as i32 + delta) as u32;
        }
    }

    fn build(&self) -> TableauB {
        TableauB {
            n: self.n,
            rows: (0..self.row_len.len()).map(|p| self.row(p).clone()).collect(),
            paired: self.paired,
        }
    }

    /// Advances position `pos` to its next fitting candidate at or after `from`.
    fn seek(&mut self, from: usize) -> bool {
        let p = self.pos;
        let total = self.cands[&self.row_len[p]].len();
        let mut i = from;
        while i < total {
            let cand = self.cands[&self.row_len[p]][i].clone();
            if self.fits(p, &cand) {
                self.idx[p] = i;
                self.place(p, 1);
                return true;
            }
            i += 1;
        }
        false
    }

    fn start_index(&self, p: usize) -> usize {
        if p > 0 && self.row_len[p] == self.row_len[p - 1] {
            self.idx[p - 1]
        } else {
            0
        }
    }
}

impl Iterator for StandardTableauxB {
    type Item = TableauB;

    fn next(&mut self) -> Option<TableauB> {
        if self.done {
            return None;
        }
        let len = self.row_len.len();
        if len == 0 {
            self.done = true;
            return Some(self.build());
        }
        let mut from;
        if !self.started {
            self.started = true;
            self.pos = 0;
            from = 0;
        } else {
            self.pos = len - 1;
            self.place(self.pos, -1);
            from = self.idx[self.pos] + 1;
        }
        loop {
            if self.seek(from) {
                if self.pos + 1 == len {
                    let t = self.build();
                    if self.zero_weight && !t.is_t_invariant() {
                        self.place(self.pos, -1);
                        from = self.idx[self.pos] + 1;
                        continue;
                    }
                    let down = t.is_admissible();
                    if down != t.is_admissible_upward() {
                        self.disagreements += 1;
                        log::trace!("orientation-dependent tableau:\n{t}");
                    }
                    if !down {
                        self.place(self.pos, -1);
                        from = self.idx[self.pos] + 1;
                        continue;
                    }
                    return Some(t);
                }
                self.pos += 1;
                from = self.start_index(self.pos);
            } else {
                if self.pos == 0 {
                    self.done = true;
                    if self.disagreements > 0 {
                        log::debug!(
                            "{} tableaux accepted under only one chain orientation",
                            self.disagreements
                        );
                    }
                    return None;
                }
                self.pos -= 1;
                self.place(self.pos, -1);
                from = self.idx[self.pos] + 1;
            }
        }
    }
}
