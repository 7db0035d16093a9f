//! Text format: `p[1,3]^2p[4,5]` for monomials, one `±c * monomial` per line
//! for polynomials. Lines starting with `#` are comments and an optional
//! `n: <rank>` line fixes the rank (otherwise the largest index is used).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PluckerMonomial, PluckerPoly, Row};
use crate::{Error, Rational, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_factors(s: &str, line: usize) -> Result<Vec<Row>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if s == "1" {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("p[")
            .ok_or_else(|| perr(line, format!("expected `p[` at {rest:?}")))?;
        let close = body.find(']').ok_or_else(|| perr(line, "unclosed `[`"))?;
        let row: Row = body[..close]
            .split(',')
            .map(|e| e.parse::<u8>().map_err(|_| perr(line, format!("bad index {e:?}"))))
            .collect::<Result<_>>()?;
        rest = &body[close + 1..];
        let mut power = 1usize;
        if let Some(p) = rest.strip_prefix('^') {
            let end = p.find(|c: char| !c.is_ascii_digit()).unwrap_or(p.len());
            power = p[..end]
                .parse()
                .map_err(|_| perr(line, "bad exponent"))?;
            rest = &p[end..];
        }
        for _ in 0..power {
            out.push(row.clone());
        }
    }
    Ok(out)
}

fn max_index(rows: &[Row]) -> usize {
    rows.iter().flatten().copied().max().unwrap_or(0) as usize
}

/// Parses one monomial; `n` defaults to the largest index present.
pub fn parse_monomial(s: &str, n: Option<usize>) -> Result<PluckerMonomial> {
    let rows = parse_factors(s.trim(), 1)?;
    let n = n.unwrap_or_else(|| max_index(&rows));
    PluckerMonomial::new(n, rows)
}

fn parse_coeff(s: &str, line: usize) -> Result<Rational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, s.strip_prefix('+').unwrap_or(&s)),
    };
    let body = if body.is_empty() { "1" } else { body };
    let q = match body.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().map_err(|_| perr(line, format!("bad numerator {a:?}")))?;
            let b: BigInt = b.parse().map_err(|_| perr(line, format!("bad denominator {b:?}")))?;
            if b.is_zero() {
                return Err(perr(line, "zero denominator"));
            }
            Rational::new(a, b)
        }
        None => Rational::from_integer(
            body.parse()
                .map_err(|_| perr(line, format!("bad coefficient {body:?}")))?,
        ),
    };
    Ok(if sign < 0 { -q } else { q })
}

/// Parses a polynomial, one term per line.
pub fn parse_poly(s: &str) -> Result<PluckerPoly> {
    let mut n_decl = None;
    let mut terms: Vec<(Rational, Vec<Row>)> = Vec::new();
    for (i, raw) in s.lines().enumerate() {
        let line = i + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        if let Some(v) = t.strip_prefix("n:") {
            n_decl = Some(v.trim().parse().map_err(|_| perr(line, "bad rank"))?);
            continue;
        }
        if t == "0" {
            continue;
        }
        let (c, m) = match t.find("p[") {
            Some(pos) => {
                let head = t[..pos].trim().trim_end_matches('*').trim();
                let c = if head.is_empty() { Rational::one() } else { parse_coeff(head, line)? };
                (c, parse_factors(&t[pos..], line)?)
            }
            None => {
                let (head, tail) = t.split_once('*').unwrap_or((t, "1"));
                (parse_coeff(head, line)?, parse_factors(tail, line)?)
            }
        };
        terms.push((c, m));
    }
    let n = n_decl.unwrap_or_else(|| terms.iter().map(|(_, m)| max_index(m)).max().unwrap_or(0));
    let mut p = PluckerPoly::zero(n);
    for (c, rows) in terms {
        p.add_term(PluckerMonomial::new(n, rows)?, c);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_roundtrip() {
        let m = parse_monomial("p[1,2]^2p[1,3]^5 p[5]^4p[6]^10", None).unwrap();
        assert_eq!(m.n(), 6);
        assert_eq!(m.len(), 21);
        assert_eq!(m.to_string(), "p[1,2]^2p[1,3]^5p[5]^4p[6]^10");
        assert_eq!(parse_monomial(&m.to_string(), Some(6)).unwrap(), m);
        assert!(parse_monomial("1", Some(3)).unwrap().is_one());
    }

    #[test]
    fn poly_roundtrip() {
        let text = "# a relation\n+1 * p[1,4]p[3,5]\n-1 * p[1,5]p[3,4]\n3/2 * p[1,2]p[3,4]\n";
        let p = parse_poly(text).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        let bare = parse_poly("p[1,3]p[4,5]").unwrap();
        assert_eq!(bare.len(), 1);
        assert!(parse_poly("0\n").unwrap().is_zero());
    }

    #[test]
    fn malformed_input() {
        assert!(parse_poly("+1 * q[1,2]").is_err());
        assert!(parse_poly("+x * p[1,2]").is_err());
        assert!(parse_poly("p[2,1]").is_err());
        assert!(parse_poly("n: 3\np[1,4]").is_err());
    }
}
