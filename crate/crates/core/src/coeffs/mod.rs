//! Exact rational generation of every coefficient family.

pub mod cache;
pub mod checks;
pub mod dump;
pub mod families;
pub mod poly;
pub mod series;
pub mod tables;

pub use checks::{bernoulli, check_altdrec, check_delta, delta_formula};
pub use families::{bell_partial, gen_a, gen_b, gen_c, gen_d, gen_p};
pub use poly::{RationalPoly, Ring};
pub use tables::{gen_e_table, gen_f_table, stirling_gamma, SeriesTable, TableFamily};

use std::sync::Arc;

/// Binary64 coefficient lists, cached per family.
pub(crate) mod f64cache {
    use super::cache::SeqCache;
    use super::*;

    static B64: SeqCache<Vec<f64>> = SeqCache::new();
    static C64: SeqCache<Vec<f64>> = SeqCache::new();
    static D64: SeqCache<Vec<f64>> = SeqCache::new();
    static A64: SeqCache<Vec<f64>> = SeqCache::new();

    pub fn b(n: usize) -> Arc<Vec<f64>> {
        B64.get(n, |k, _| gen_b(k).to_f64_coeffs())
    }
    pub fn c(n: usize) -> Arc<Vec<f64>> {
        C64.get(n, |k, _| gen_c(k).to_f64_coeffs())
    }
    pub fn d(n: usize) -> Arc<Vec<f64>> {
        D64.get(n, |k, _| gen_d(k).to_f64_coeffs())
    }
    pub fn a(n: usize) -> Arc<Vec<f64>> {
        A64.get(n, |k, _| gen_a(k).to_f64_coeffs())
    }
}
