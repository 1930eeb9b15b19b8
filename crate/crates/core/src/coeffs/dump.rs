//! Text dump of coefficient families.
//!
//! Polynomials: one per line, `family n k num/den k num/den …` listing the
//! nonzero coefficients by ascending power. Tables: `family k n num/den`, one
//! entry per line.

use super::families::{gen_a, gen_b, gen_c, gen_d, gen_p};
use super::poly::{fmt_rat, RationalPoly};
use super::tables::{gen_e_table, gen_f_table, SeriesTable};
use crate::error::{Error, Result};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    B,
    A,
    C,
    D,
    P,
    E,
    F,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "b" => Family::B,
            "a" => Family::A,
            "C" => Family::C,
            "d" => Family::D,
            "P" => Family::P,
            "e" => Family::E,
            "f" => Family::F,
            _ => return Err(Error::Parameter(format!("unknown coefficient family '{s}'"))),
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::B => "b",
            Family::A => "a",
            Family::C => "C",
            Family::D => "d",
            Family::P => "P",
            Family::E => "e",
            Family::F => "f",
        }
    }
}

pub fn poly_line(tag: &str, n: usize, p: &RationalPoly) -> String {
    let mut s = format!("{tag} {n}");
    for (k, c) in p.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            let _ = write!(s, " {k} {}", fmt_rat(c));
        }
    }
    s
}

pub fn table_lines(t: &SeriesTable) -> Vec<String> {
    let tag = t.family().tag();
    let mut out = Vec::new();
    for n in 0..=t.n_max().unwrap_or(0) {
        for (k, c) in t.row(n).unwrap_or(&[]).iter().enumerate() {
            out.push(format!("{tag} {k} {n} {}", fmt_rat(c)));
        }
    }
    out
}

/// Dump lines for indices 0..=max (1..=max for P). For e/f, `max` is n_max and
/// the table carries 2·max + 1 Taylor rows at n = 0 so row max keeps one entry.
pub fn dump(family: Family, max: usize) -> Result<Vec<String>> {
    let poly = |f: fn(usize) -> std::sync::Arc<RationalPoly>, lo: usize| {
        (lo..=max)
            .map(|n| poly_line(family.tag(), n, &f(n)))
            .collect::<Vec<_>>()
    };
    Ok(match family {
        Family::B => poly(gen_b, 0),
        Family::A => poly(gen_a, 0),
        Family::C => poly(gen_c, 0),
        Family::D => poly(gen_d, 0),
        Family::P => poly(gen_p, 1),
        Family::E => table_lines(&gen_e_table(2 * max, max)?),
        Family::F => table_lines(&gen_f_table(2 * max, max)?),
    })
}

/// Inverse of [`poly_line`]: (tag, n, polynomial).
pub fn parse_poly_line(line: &str) -> Result<(String, usize, RationalPoly)> {
    let bad = || Error::Parameter(format!("malformed coefficient line '{line}'"));
    let mut it = line.split_whitespace();
    let tag = it.next().ok_or_else(bad)?.to_string();
    let n: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let mut coeffs = Vec::new();
    while let Some(k) = it.next() {
        let k: usize = k.parse().map_err(|_| bad())?;
        let c: num_rational::BigRational = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, num_traits::Zero::zero());
        }
        coeffs[k] = c;
    }
    Ok((tag, n, RationalPoly::new(coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_dump() {
        let lines = dump(Family::B, 4).unwrap();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[4], "b 4 1 1/1 2 22/1 3 58/1 4 24/1");
        let (tag, n, p) = parse_poly_line(&lines[4]).unwrap();
        assert_eq!((tag.as_str(), n), ("b", 4));
        assert_eq!(p, *gen_b(4));
    }

    #[test]
    fn table_dump() {
        let lines = dump(Family::F, 1).unwrap();
        assert_eq!(lines[0], "f 0 0 -1/3");
        assert_eq!(lines.len(), 4);
    }
}
