//! Term and remainder data for the transition and uniform expansions at
//! small a, the setting of the published figures.

use crate::error::{Error, Result};
use crate::expansions::{transition_terms, uniform_terms};
use crate::oracle::{bf, q_at_tau, BigFloat};
use crate::special::{half_erfc, CompensatedSum};
use serde::Serialize;

pub const PRESET_A: f64 = 3.0;
pub const PRESET_TAU: [f64; 3] = [0.1, 1.1, 1.321];
pub const DEFAULT_NMAX: usize = 40;

pub fn preset(id: u32) -> Result<(f64, f64)> {
    match id {
        1..=3 => Ok((PRESET_A, PRESET_TAU[id as usize - 1])),
        _ => Err(Error::Parameter(format!("no figure preset {id}; choose 1, 2 or 3"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureRow {
    pub n: usize,
    /// |(2πa)^{−½}e^{−τ²/2}C_n(τ)a^{−n/2}|
    pub term_transition: f64,
    /// |uniform term n/2|, even n only.
    pub term_uniform: Option<f64>,
    /// |Q − partial sum of the transition expansion over terms m < n|.
    pub remainder_transition: f64,
}

#[derive(Debug, Clone)]
pub struct FigureData {
    pub a: f64,
    pub tau: f64,
    pub q: BigFloat,
    pub rows: Vec<FigureRow>,
}

impl FigureData {
    fn least(v: impl Iterator<Item = f64>) -> f64 {
        v.fold(f64::INFINITY, f64::min)
    }

    pub fn least_transition(&self) -> f64 {
        Self::least(self.rows.iter().map(|r| r.term_transition))
    }

    pub fn least_uniform(&self) -> f64 {
        Self::least(self.rows.iter().filter_map(|r| r.term_uniform))
    }
}

pub fn figure_data(a: f64, tau: f64, nmax: usize) -> Result<FigureData> {
    if !(a > 0.0) || a + tau * a.sqrt() <= 0.0 {
        return Err(crate::error::domain(format!(
            "need a > 0 and a + τ√a > 0, got a = {a}, τ = {tau}"
        )));
    }
    let q = q_at_tau(a, tau)?;
    let lambda = 1.0 + tau / a.sqrt();
    let tt = transition_terms(a, tau, nmax + 1);
    let ut = uniform_terms(a, lambda, nmax / 2 + 1);
    let mut s = CompensatedSum::new();
    s.add(half_erfc(tau));
    let rows = (0..=nmax)
        .map(|n| {
            let row = FigureRow {
                n,
                term_transition: tt[n].abs(),
                term_uniform: (n % 2 == 0).then(|| ut[n / 2].abs()),
                remainder_transition: q.sub(&bf(s.value())).abs().to_f64(),
            };
            s.add(tt[n]);
            row
        })
        .collect();
    Ok(FigureData { a, tau, q, rows })
}
