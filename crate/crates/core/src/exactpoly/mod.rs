//! Rationals, sparse multivariate polynomials, the signature form `q`.

pub mod poly;
pub mod quadform;
pub mod rational;
pub mod sample;

pub use poly::{Monomial, MultiPoly};
pub use quadform::{QuadForm, Signature};
pub use rational::Rational;
pub use sample::null_samples;

use crate::error::Result;

/// `a + b`, `a · b`, `c · a` with variable-count checking.
pub fn poly_add(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    a.checked_add(b)
}

pub fn poly_mul(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    a.checked_mul(b)
}

pub fn poly_scale(a: &MultiPoly, c: &Rational) -> MultiPoly {
    a.scale(c)
}

pub fn homogeneous_components(p: &MultiPoly) -> Vec<(u32, MultiPoly)> {
    p.homogeneous_components()
}

pub fn divide_by_q(p: &MultiPoly, qf: &QuadForm) -> Result<Option<MultiPoly>> {
    qf.divide(p)
}

/// `None` is `∞`.
pub fn q_valuation(p: &MultiPoly, qf: &QuadForm) -> Result<Option<u32>> {
    qf.valuation(p)
}

pub fn vanishes_on_nullcone(p: &MultiPoly, qf: &QuadForm) -> Result<bool> {
    qf.vanishes_on_nullcone(p)
}
