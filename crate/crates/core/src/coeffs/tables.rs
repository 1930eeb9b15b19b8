//! Taylor tables e_{k,n} (powers of λ−1) and f_{k,n} (powers of η) of the
//! uniform-expansion coefficients c_n(η), and the Stirling coefficients.

use super::cache::SeqCache;
use super::poly::{rat, rat_int, to_f64};
use crate::error::{Error, Result};
use crate::oracle::BigFloat;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

/// Upper bound on the number of Taylor rows generated at n = 0.
pub const GENERATION_BUDGET: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFamily {
    E,
    F,
}

impl TableFamily {
    pub fn tag(self) -> &'static str {
        match self {
            TableFamily::E => "e",
            TableFamily::F => "f",
        }
    }
}

/// Row n holds entries k = 0..=k_max−2n; each step in n uses up two k-rows.
#[derive(Debug, Clone)]
pub struct SeriesTable {
    family: TableFamily,
    rows: Vec<Vec<BigRational>>,
    // e: h_l = Σ_{m=1}^l (−1)^m e_{l−m,0}/(m+1); f: self-convolution and cube of row 0
    aux_a: Vec<BigRational>,
    aux_b: Vec<BigRational>,
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

impl SeriesTable {
    pub const fn empty(family: TableFamily) -> Self {
        Self {
            family,
            rows: Vec::new(),
            aux_a: Vec::new(),
            aux_b: Vec::new(),
        }
    }

    pub fn family(&self) -> TableFamily {
        self.family
    }

    /// Largest k available at n = 0, or None before any generation.
    pub fn k_max(&self) -> Option<usize> {
        self.rows.first().and_then(|r| r.len().checked_sub(1))
    }

    pub fn n_max(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Number of entries in row n.
    pub fn row_len(&self, n: usize) -> usize {
        self.rows.get(n).map_or(0, Vec::len)
    }

    pub fn row(&self, n: usize) -> Option<&[BigRational]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub fn get(&self, k: usize, n: usize) -> Result<&BigRational> {
        self.rows.get(n).and_then(|r| r.get(k)).ok_or(Error::Budget { k, n })
    }

    /// Grow to cover k ≤ k_max − 2n for n ≤ n_max. Existing entries are kept.
    pub fn extend(&mut self, k_max: usize, n_max: usize) -> Result<()> {
        if k_max > GENERATION_BUDGET {
            return Err(Error::Budget { k: k_max, n: 0 });
        }
        if 2 * n_max > k_max {
            return Err(Error::Budget { k: 0, n: n_max });
        }
        let k_max = k_max.max(self.k_max().unwrap_or(0));
        if self.rows.is_empty() {
            self.rows.push(Vec::new());
        }
        match self.family {
            TableFamily::E => self.extend_e0(k_max),
            TableFamily::F => self.extend_f0(k_max),
        }
        while self.rows.len() <= n_max {
            self.rows.push(Vec::new());
        }
        for n in 1..self.rows.len() {
            let want = (k_max + 1).saturating_sub(2 * n);
            let have = self.rows[n].len();
            for k in have..want {
                let v = self.next_entry(k, n);
                self.rows[n].push(v);
            }
        }
        Ok(())
    }

    fn next_entry(&self, k: usize, n: usize) -> BigRational {
        let prev = &self.rows[n - 1];
        match self.family {
            // e_{k,n} = (k+1)e_{k+1,n−1} + (k+2)e_{k+2,n−1}
            TableFamily::E => rat_int(k + 1) * &prev[k + 1] + rat_int(k + 2) * &prev[k + 2],
            // f_{k,n} = (k+2)f_{k+2,n−1} − f_{1,n−1}f_{k,0}
            TableFamily::F => rat_int(k + 2) * &prev[k + 2] - &prev[1] * &self.rows[0][k],
        }
    }

    fn extend_e0(&mut self, k_max: usize) {
        for k in self.rows[0].len()..=k_max {
            let e = &self.rows[0];
            // h_k uses e_{0..k−1}
            let mut h = BigRational::zero();
            for m in 1..=k {
                h += sign(m) * &e[k - m] / rat_int(m + 1);
            }
            self.aux_a.push(h);
            let mut v = -sign(k) / rat_int(k + 3);
            for l in 1..=k {
                let el = &e[k - l];
                v -= rat(2, 1) * sign(l) * el / rat_int(l + 2);
                v -= el * &self.aux_a[l];
            }
            self.rows[0].push(v);
        }
    }

    fn extend_f0(&mut self, k_max: usize) {
        for k in self.rows[0].len()..=k_max {
            let v = if k == 0 {
                rat(-1, 3)
            } else {
                let f = &self.rows[0];
                let mut s = rat(2, 1) * &f[k - 1] + rat(3, 1) * &self.aux_a[k - 1];
                if k >= 2 {
                    s += &self.aux_a[k - 2] + &self.aux_b[k - 2];
                }
                -s / rat_int(k + 3)
            };
            self.rows[0].push(v);
            let f = &self.rows[0];
            let sq: BigRational = (0..=k).map(|i| &f[i] * &f[k - i]).sum();
            self.aux_a.push(sq);
            let cube: BigRational = (0..=k).map(|i| &f[i] * &self.aux_a[k - i]).sum();
            self.aux_b.push(cube);
        }
    }

    /// γ_n from the f-table: γ₀ = 1, γ_n = −f_{1,n−1}.
    pub fn stirling_gamma(&self, n: usize) -> Result<BigRational> {
        if self.family != TableFamily::F {
            return Err(Error::Parameter("Stirling coefficients come from the f-table".into()));
        }
        if n == 0 {
            return Ok(BigRational::one());
        }
        Ok(-self.get(1, n - 1)?.clone())
    }
}

pub fn gen_e_table(k_max: usize, n_max: usize) -> Result<SeriesTable> {
    let mut t = SeriesTable::empty(TableFamily::E);
    t.extend(k_max, n_max)?;
    Ok(t)
}

pub fn gen_f_table(k_max: usize, n_max: usize) -> Result<SeriesTable> {
    let mut t = SeriesTable::empty(TableFamily::F);
    t.extend(k_max, n_max)?;
    Ok(t)
}

static EXACT_F: RwLock<SeriesTable> = RwLock::new(SeriesTable::empty(TableFamily::F));

/// γ_n, extending a shared exact f-table as needed.
pub fn stirling_gamma(n: usize) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    {
        let t = EXACT_F.read().unwrap_or_else(|e| e.into_inner());
        if let Ok(g) = t.stirling_gamma(n) {
            return g;
        }
    }
    let mut t = EXACT_F.write().unwrap_or_else(|e| e.into_inner());
    let n_max = (n - 1).max(t.n_max().unwrap_or(0));
    t.extend(2 * n_max + 1, n_max).expect("within generation budget");
    t.stirling_gamma(n).expect("row generated")
}

/// Taylor terms kept per row when evaluating c_n(η) from the table.
const EVAL_TERMS: usize = 220;
// Working precision for the evaluation table. The recurrences lose a few
// dozen bits at most over the rows kept here.
const EVAL_PREC: u32 = 384;

/// f-table rows in extended precision, rounded to binary64. Same recurrences
/// as the exact table, orders of magnitude cheaper at a few hundred columns.
fn float_f_rows(k_max: usize, n_max: usize) -> Vec<Vec<f64>> {
    let p = EVAL_PREC;
    let int = |k: usize| BigFloat::from_i64(k as i64, p);
    let mut f0: Vec<BigFloat> = Vec::with_capacity(k_max + 1);
    let mut sq: Vec<BigFloat> = Vec::with_capacity(k_max + 1);
    let mut cube: Vec<BigFloat> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let v = if k == 0 {
            BigFloat::from_i64(-1, p).div_i64(3)
        } else {
            let mut s = f0[k - 1].mul_i64(2).add(&sq[k - 1].mul_i64(3));
            if k >= 2 {
                s = s.add(&sq[k - 2]).add(&cube[k - 2]);
            }
            s.neg().div_i64(k as i64 + 3)
        };
        f0.push(v);
        let q = (0..=k).fold(BigFloat::zero(p), |acc, i| acc.add(&f0[i].mul(&f0[k - i])));
        sq.push(q);
        let c = (0..=k).fold(BigFloat::zero(p), |acc, i| acc.add(&f0[i].mul(&sq[k - i])));
        cube.push(c);
    }
    let mut out = vec![f0.iter().map(BigFloat::to_f64).collect::<Vec<_>>()];
    let mut prev = f0.clone();
    for n in 1..=n_max {
        let len = (k_max + 1).saturating_sub(2 * n);
        let row: Vec<BigFloat> = (0..len)
            .map(|k| int(k + 2).mul(&prev[k + 2]).sub(&prev[1].mul(&f0[k])))
            .collect();
        out.push(row.iter().map(BigFloat::to_f64).collect());
        prev = row;
    }
    out
}

static F_ROWS: RwLock<Vec<Vec<f64>>> = RwLock::new(Vec::new());

fn with_f_rows<R>(n: usize, f: impl FnOnce(&[Vec<f64>]) -> R) -> R {
    {
        let rows = F_ROWS.read().unwrap_or_else(|e| e.into_inner());
        if rows.len() > n {
            return f(&rows);
        }
    }
    let mut rows = F_ROWS.write().unwrap_or_else(|e| e.into_inner());
    if rows.len() <= n {
        // grow generously so neighbouring n are covered too
        let n_max = (n + 8).max(2 * rows.len()).max(24);
        *rows = float_f_rows(EVAL_TERMS - 1 + 2 * n_max, n_max);
    }
    f(&rows)
}

/// c_n(η) summed from its η-power series (convergent for |η| < 2√π).
pub fn c_eta_series(n: usize, eta: f64) -> f64 {
    with_f_rows(n, |rows| {
        rows[n][..EVAL_TERMS].iter().rev().fold(0.0, |acc, &c| acc * eta + c)
    })
}

/// Exact closed form of c_n as Σ r·λ^i(λ−1)^{−j}η^{−l}, keyed by (i, j, l).
pub type ClosedForm = BTreeMap<(u32, u32, u32), BigRational>;

// The exact form alongside its f64 terms with signed exponents.
type ClosedEntry = (ClosedForm, Vec<((i32, i32, i32), f64)>);

static CLOSED: SeqCache<ClosedEntry> = SeqCache::new();

fn closed_form_entry(n: usize) -> Arc<ClosedEntry> {
    CLOSED.get(n, |n, prev| {
        let mut out = ClosedForm::new();
        if n == 0 {
            out.insert((0, 1, 0), BigRational::one());
            out.insert((0, 0, 1), -BigRational::one());
        } else {
            // c_n = γ_n/(λ−1) + λ/(λ−1)·dc_{n−1}/dλ, with dη/dλ = (λ−1)/(λη)
            let mut add = |key: (u32, u32, u32), v: BigRational| {
                let e = out.entry(key).or_insert_with(BigRational::zero);
                *e += v;
            };
            for (&(i, j, l), r) in &prev[n - 1].0 {
                if i > 0 {
                    add((i, j + 1, l), r * rat_int(i));
                }
                if j > 0 {
                    add((i + 1, j + 2, l), -(r * rat_int(j)));
                }
                if l > 0 {
                    add((i, j, l + 2), -(r * rat_int(l)));
                }
            }
            add((0, 1, 0), stirling_gamma(n));
            out.retain(|_, v| !v.is_zero());
        }
        let f = out
            .iter()
            .map(|(&(i, j, l), r)| ((i as i32, j as i32, l as i32), to_f64(r)))
            .collect();
        (out, f)
    })
}

pub fn c_closed_form(n: usize) -> ClosedForm {
    closed_form_entry(n).0.clone()
}

/// c_n(η(λ)) from the closed form; cancels badly as λ → 1.
pub fn c_lambda_closed(n: usize, lambda: f64, eta: f64) -> f64 {
    let e = closed_form_entry(n);
    let (ll, lm, le) = (lambda.ln(), (lambda - 1.0).abs().ln(), eta.abs().ln());
    let (sm, se) = ((lambda - 1.0).signum(), eta.signum());
    let mut s = crate::special::CompensatedSum::new();
    for &((i, j, l), r) in &e.1 {
        let mag = (i as f64 * ll - j as f64 * lm - l as f64 * le).exp();
        let sg = if j % 2 == 1 { sm } else { 1.0 } * if l % 2 == 1 { se } else { 1.0 };
        s.add(r * sg * mag);
    }
    s.value()
}

#[cfg(test)]
mod tests {
    use super::super::families::gen_c;
    use super::*;
    use crate::special::{eta_of_lambda, lambda_of_eta};

    #[test]
    fn seeds_and_identity() {
        let e = gen_e_table(20, 4).unwrap();
        let f = gen_f_table(20, 4).unwrap();
        assert_eq!(*e.get(0, 0).unwrap(), rat(-1, 3));
        assert_eq!(*f.get(0, 0).unwrap(), rat(-1, 3));
        assert_eq!(*e.get(0, 1).unwrap(), rat(-1, 540));
        for n in 0..=4 {
            assert_eq!(*f.get(0, n).unwrap(), gen_c(2 * n).coeff(0));
            assert_eq!(*e.get(0, n).unwrap(), gen_c(2 * n).coeff(0));
        }
        assert!(matches!(f.get(19, 1), Err(Error::Budget { .. })));
        assert!(matches!(f.get(0, 5), Err(Error::Budget { .. })));
        assert!(gen_f_table(4, 3).is_err());
    }

    #[test]
    fn row_zero_sums() {
        let e = gen_e_table(40, 0).unwrap();
        let lam: f64 = 1.1;
        let s: f64 = e
            .row(0)
            .unwrap()
            .iter()
            .enumerate()
            .map(|(k, c)| to_f64(c) * (lam - 1.0).powi(k as i32))
            .sum();
        let closed = 1.0 / (lam - 1.0) - 1.0 / eta_of_lambda(lam);
        assert!((s - closed).abs() < 1e-14, "{s} {closed}");

        let f = gen_f_table(40, 0).unwrap();
        let eta: f64 = 0.2;
        let s: f64 = f
            .row(0)
            .unwrap()
            .iter()
            .enumerate()
            .map(|(k, c)| to_f64(c) * eta.powi(k as i32))
            .sum();
        let closed = 1.0 / (lambda_of_eta(eta) - 1.0) - 1.0 / eta;
        assert!((s - closed).abs() < 1e-14, "{s} {closed}");
    }

    #[test]
    fn stirling() {
        assert_eq!(stirling_gamma(0), rat(1, 1));
        assert_eq!(stirling_gamma(1), rat(-1, 12));
        assert_eq!(stirling_gamma(2), rat(1, 288));
        assert_eq!(stirling_gamma(3), rat(139, 51840));
        assert_eq!(stirling_gamma(4), rat(-571, 2488320));
    }

    #[test]
    fn closed_form_agrees_with_series() {
        for n in 0..6 {
            // far from λ = 1, where the closed form is still usable
            for lam in [6.0, 0.08] {
                let eta = eta_of_lambda(lam);
                let a = c_lambda_closed(n, lam, eta);
                let b = c_eta_series(n, eta);
                assert!((a - b).abs() < 1e-11 * b.abs(), "n={n} λ={lam}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn float_rows_match_exact() {
        let exact = gen_f_table(60, 12).unwrap();
        let float = float_f_rows(60, 12);
        for (n, row) in float.iter().enumerate() {
            for (k, c) in exact.row(n).unwrap().iter().enumerate() {
                assert_eq!(row[k], to_f64(c), "k={k} n={n}");
            }
        }
    }
}
