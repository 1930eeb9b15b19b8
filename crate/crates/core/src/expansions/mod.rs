//! Binary64 evaluators for the asymptotic expansions, with regime selection
//! and optimal truncation.

mod hybrid;
pub(crate) mod negative;
mod outer;
mod transition;
mod uniform;

pub use hybrid::{hybrid_q, hybrid_q_with, HybridConfig};
pub use negative::{gammastar_asym, gammastar_terms};
pub use outer::{
    gamma_outer_lower, gamma_outer_neg, gamma_outer_upper, gamma_transition_point, outer_q_series, OuterSeries,
};
pub use transition::{q_transition, q_transition_auto, transition_terms};
pub use uniform::{c_eta, q_uniform, q_uniform_auto, uniform_terms};

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    OuterLower,
    OuterUpper,
    OuterNegative,
    TransitionPoint,
    Transition,
    Uniform,
    Reference,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::OuterLower => "outer-lower",
            Regime::OuterUpper => "outer-upper",
            Regime::OuterNegative => "outer-negative",
            Regime::TransitionPoint => "transition-point",
            Regime::Transition => "transition",
            Regime::Uniform => "uniform",
            Regime::Reference => "reference",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A value far outside binary64 range: sign·exp(ln_abs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogScaled {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LogScaled {
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub value: f64,
    pub terms_used: usize,
    /// Magnitude of the first omitted term, in the units of `value`.
    pub first_neglected: f64,
    pub regime: Regime,
    pub error_estimate: f64,
    /// Set when the inputs fall outside the expansion's intended range.
    pub out_of_range: bool,
    /// Γ-type values in log form, for magnitudes binary64 cannot hold.
    pub log_scaled: Option<LogScaled>,
}

impl EvalReport {
    pub(crate) fn new(value: f64, terms_used: usize, first_neglected: f64, regime: Regime) -> Self {
        Self {
            value,
            terms_used,
            first_neglected,
            regime,
            error_estimate: first_neglected,
            out_of_range: false,
            log_scaled: None,
        }
    }
}

/// Index of the first local minimum of |terms| scanning from 0, ties to the
/// smaller index; the last index if the magnitudes never stop decreasing.
pub fn optimal_truncation(terms: &[f64]) -> usize {
    for i in 0..terms.len().saturating_sub(1) {
        if terms[i].abs() <= terms[i + 1].abs() {
            return i;
        }
    }
    terms.len().saturating_sub(1)
}

/// For a series in powers of a^{−1/2}: group magnitudes
/// S_k = max(|t_{2k} + t_{2k+1}|, min(|t_{2k}|, |t_{2k+1}|)).
pub fn grouped_magnitudes(terms: &[f64]) -> Vec<f64> {
    terms
        .chunks(2)
        .map(|c| match c {
            [x, y] => (x + y).abs().max(x.abs().min(y.abs())),
            [x] => x.abs(),
            _ => 0.0,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Cut {
    /// Number of terms summed.
    pub n: usize,
    pub first_neglected: f64,
    pub error_estimate: f64,
}

/// Where to stop a half-integer-power series. Locates the least group on the
/// envelope max(S_k, S_{k+1}), which is blind to isolated dips at zeros of a
/// single coefficient, then stops before the smaller of the two groups there.
/// `converged` marks a series whose tail fell below rounding level.
pub(crate) fn cut_grouped(terms: &[f64], converged: bool) -> Cut {
    let s = grouped_magnitudes(terms);
    if converged || s.len() < 3 {
        return Cut {
            n: terms.len(),
            first_neglected: 0.0,
            error_estimate: s.last().copied().unwrap_or(0.0),
        };
    }
    let env: Vec<f64> = s.windows(2).map(|w| w[0].max(w[1])).collect();
    // strict rise required: a dip leaves a plateau of two equal envelope values
    let k = (0..env.len() - 1)
        .find(|&i| env[i] < env[i + 1])
        .unwrap_or(env.len() - 1);
    let j = if s[k + 1] < s[k] { k + 1 } else { k };
    let n = 2 * j;
    Cut {
        n,
        first_neglected: terms.get(n).map_or(0.0, |t| t.abs()),
        error_estimate: env[k.min(env.len() - 1)].max(s[j]),
    }
}

/// Plain first-local-minimum cut for integer-power series.
pub(crate) fn cut_plain(terms: &[f64], converged: bool) -> Cut {
    if converged || terms.is_empty() {
        return Cut {
            n: terms.len(),
            first_neglected: 0.0,
            error_estimate: terms.last().map_or(0.0, |t| t.abs()),
        };
    }
    let n = optimal_truncation(terms);
    Cut {
        n,
        first_neglected: terms[n].abs(),
        error_estimate: terms[n].abs(),
    }
}

/// Integer-power series whose coefficients can cross zero: the least term is
/// located on the envelope max(|t_k|, |t_{k+1}|) as in `cut_grouped`.
pub(crate) fn cut_enveloped(terms: &[f64], converged: bool) -> Cut {
    if converged || terms.len() < 3 {
        return cut_plain(terms, converged);
    }
    let env: Vec<f64> = terms.windows(2).map(|w| w[0].abs().max(w[1].abs())).collect();
    let k = (0..env.len() - 1)
        .find(|&i| env[i] < env[i + 1])
        .unwrap_or(env.len() - 1);
    let n = if terms[k + 1].abs() < terms[k].abs() { k + 1 } else { k };
    Cut {
        n,
        first_neglected: terms[n].abs(),
        error_estimate: env[k],
    }
}
