//! Published coefficient tables, kept as exact fractions in the dump format.

use crate::coeffs::dump::{dump, Family};
use crate::error::Result;

pub const TABLE_C: &str = include_str!("../golden/table_c.txt");
pub const TABLE_D: &str = include_str!("../golden/table_d.txt");

/// C_n for n ≤ 8 and d_n for n ≤ 10.
pub const TABLE_C_MAX: usize = 8;
pub const TABLE_D_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub family: &'static str,
    pub n: usize,
    pub generated: String,
    pub published: String,
}

fn lines(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect()
}

fn compare(family: Family, max: usize, published: &str) -> Result<Vec<Mismatch>> {
    let generated = dump(family, max)?;
    let published = lines(published);
    let count = generated.len().max(published.len());
    Ok((0..count)
        .filter_map(|n| {
            let g = generated.get(n).cloned().unwrap_or_default();
            let p = published.get(n).cloned().unwrap_or_default();
            (g != p).then(|| Mismatch {
                family: family.tag(),
                n,
                generated: g,
                published: p,
            })
        })
        .collect())
}

/// Diff the generated C_n and d_n against the published tables.
pub fn check_tables() -> Result<Vec<Mismatch>> {
    let mut out = compare(Family::C, TABLE_C_MAX, TABLE_C)?;
    out.extend(compare(Family::D, TABLE_D_MAX, TABLE_D)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree() {
        let m = check_tables().unwrap();
        assert!(m.is_empty(), "{m:#?}");
    }
}
