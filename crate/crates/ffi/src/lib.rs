//! C interface to the incgamma crate.
//!
//! Every call takes an `IgContext*` from `ig_context_new` and returns an
//! `IgStatus`; results go through out-pointers. On failure the message is
//! kept on the context until the next call (`ig_last_error`). A context must
//! not be used from two threads at once; separate contexts are independent.

use incgamma::expansions::{hybrid_q_with, HybridConfig, Regime};
use incgamma::inversion::{negative_zero, negative_zero_auto, quantile, quantile_auto, thompson_approx};
use incgamma::Error;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgStatus {
    Ok = 0,
    Domain = 1,
    Validity = 2,
    Budget = 3,
    Degenerate = 4,
    Index = 5,
    NonConvergence = 6,
    Parameter = 7,
    NullPointer = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgRegime {
    OuterLower = 0,
    OuterUpper = 1,
    OuterNegative = 2,
    TransitionPoint = 3,
    Transition = 4,
    Uniform = 5,
    Reference = 6,
}

impl From<Regime> for IgRegime {
    fn from(r: Regime) -> Self {
        match r {
            Regime::OuterLower => IgRegime::OuterLower,
            Regime::OuterUpper => IgRegime::OuterUpper,
            Regime::OuterNegative => IgRegime::OuterNegative,
            Regime::TransitionPoint => IgRegime::TransitionPoint,
            Regime::Transition => IgRegime::Transition,
            Regime::Uniform => IgRegime::Uniform,
            Regime::Reference => IgRegime::Reference,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IgEval {
    pub value: f64,
    pub error_estimate: f64,
    pub terms_used: usize,
    pub regime: IgRegime,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IgQuantile {
    pub x: f64,
    pub tau0: f64,
    /// Error estimate carried over to Q.
    pub error_estimate: f64,
    pub terms_used: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IgZero {
    pub x_minus: f64,
    pub tau1: f64,
    pub error_estimate: f64,
    pub terms_used: usize,
}

/// Opaque evaluation context.
pub struct IgContext {
    config: HybridConfig,
    last_error: Option<CString>,
}

fn status_of(e: &Error) -> IgStatus {
    match e {
        Error::Domain(_) => IgStatus::Domain,
        Error::Validity(_) => IgStatus::Validity,
        Error::Budget { .. } => IgStatus::Budget,
        Error::Degenerate(_) => IgStatus::Degenerate,
        Error::Index(_) => IgStatus::Index,
        Error::NonConvergence(_) => IgStatus::NonConvergence,
        Error::Parameter(_) => IgStatus::Parameter,
    }
}

fn set_error(ctx: &mut IgContext, msg: String) {
    ctx.last_error = Some(CString::new(msg.replace('\0', " ")).unwrap_or_default());
}

// Run `f` on a live context with the error slot cleared, mapping errors and panics.
fn with_ctx<T>(ctx: *mut IgContext, out: *mut T, f: impl FnOnce(&IgContext) -> incgamma::Result<T>) -> IgStatus {
    let Some(ctx) = (unsafe { ctx.as_mut() }) else {
        return IgStatus::NullPointer;
    };
    ctx.last_error = None;
    if out.is_null() {
        set_error(ctx, "null output pointer".into());
        return IgStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(|| f(ctx))) {
        Ok(Ok(v)) => {
            unsafe { out.write(v) };
            IgStatus::Ok
        }
        Ok(Err(e)) => {
            let s = status_of(&e);
            set_error(ctx, e.to_string());
            s
        }
        Err(_) => {
            set_error(ctx, "internal panic".into());
            IgStatus::Panic
        }
    }
}

fn terms_arg(terms: i32) -> Option<usize> {
    usize::try_from(terms).ok()
}

/// New context with default settings; free with `ig_context_free`.
#[no_mangle]
pub extern "C" fn ig_context_new() -> *mut IgContext {
    Box::into_raw(Box::new(IgContext {
        config: HybridConfig::default(),
        last_error: None,
    }))
}

/// # Safety
/// `ctx` must come from `ig_context_new` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ig_context_free(ctx: *mut IgContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Dispatch settings for `ig_q`: transition region |τ| ≤ factor·a^{1/6},
/// reference evaluation below `reference_below`, at most `max_terms` terms.
///
/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn ig_context_configure(
    ctx: *mut IgContext,
    transition_factor: f64,
    reference_below: f64,
    max_terms: usize,
) -> IgStatus {
    let Some(c) = ctx.as_mut() else {
        return IgStatus::NullPointer;
    };
    if transition_factor.is_nan()
        || transition_factor <= 0.0
        || reference_below.is_nan()
        || reference_below < 0.0
        || max_terms < 2
    {
        set_error(
            c,
            "need transition_factor > 0, reference_below >= 0, max_terms >= 2".into(),
        );
        return IgStatus::Parameter;
    }
    c.last_error = None;
    c.config.transition_factor = transition_factor;
    c.config.reference_below = reference_below;
    c.config.max_terms = max_terms;
    IgStatus::Ok
}

/// Q(a,x) for a > 0, x >= 0.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_q(ctx: *mut IgContext, a: f64, x: f64, out: *mut IgEval) -> IgStatus {
    with_ctx(ctx, out, |c| {
        let r = hybrid_q_with(a, x, &c.config)?;
        Ok(IgEval {
            value: r.value,
            error_estimate: r.error_estimate,
            terms_used: r.terms_used,
            regime: r.regime.into(),
        })
    })
}

/// x with Q(a,x) = q. `terms` < 0 picks the number of terms automatically.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_quantile(
    ctx: *mut IgContext,
    a: f64,
    q: f64,
    terms: i32,
    out: *mut IgQuantile,
) -> IgStatus {
    with_ctx(ctx, out, |_| {
        let r = match terms_arg(terms) {
            Some(n) => quantile(a, q, n)?,
            None => quantile_auto(a, q)?,
        };
        Ok(IgQuantile {
            x: r.x,
            tau0: r.tau0,
            error_estimate: r.q_error_estimate,
            terms_used: r.terms_used,
        })
    })
}

/// Negative zero x₋(a) of γ*(a,x) for a < 0 away from the integers.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_negative_zero(ctx: *mut IgContext, a: f64, terms: i32, out: *mut IgZero) -> IgStatus {
    with_ctx(ctx, out, |_| {
        let r = match terms_arg(terms) {
            Some(n) => negative_zero(a, n)?,
            None => negative_zero_auto(a)?,
        };
        Ok(IgZero {
            x_minus: r.x_minus,
            tau1: r.tau1,
            error_estimate: r.first_neglected,
            terms_used: r.terms_used,
        })
    })
}

/// The two-term approximation a − τ₁√(−a) − τ₁²/3 − 1/3 to x₋(a).
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_thompson(ctx: *mut IgContext, a: f64, out: *mut f64) -> IgStatus {
    with_ctx(ctx, out, |_| thompson_approx(a))
}

/// Message for the last failed call on `ctx`, or null. Owned by the context.
///
/// # Safety
/// `ctx` must be a live context or null.
#[no_mangle]
pub unsafe extern "C" fn ig_last_error(ctx: *const IgContext) -> *const c_char {
    match ctx.as_ref().and_then(|c| c.last_error.as_ref()) {
        Some(s) => s.as_ptr(),
        None => ptr::null(),
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn ig_status_str(status: IgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        IgStatus::Ok => c"ok",
        IgStatus::Domain => c"domain error",
        IgStatus::Validity => c"outside the validity region",
        IgStatus::Budget => c"beyond the generation budget",
        IgStatus::Degenerate => c"degenerate input",
        IgStatus::Index => c"index error",
        IgStatus::NonConvergence => c"no convergence",
        IgStatus::Parameter => c"bad parameter",
        IgStatus::NullPointer => c"null pointer",
        IgStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

#[no_mangle]
pub extern "C" fn ig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Domain(String::new())), IgStatus::Domain);
        assert_eq!(status_of(&Error::Budget { k: 1, n: 2 }), IgStatus::Budget);
        let s = unsafe { CStr::from_ptr(ig_status_str(IgStatus::Validity)) };
        assert_eq!(s.to_str().unwrap(), "outside the validity region");
        assert_eq!(terms_arg(-1), None);
        assert_eq!(terms_arg(4), Some(4));
    }
}
