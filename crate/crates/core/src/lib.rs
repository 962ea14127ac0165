//! Exact-arithmetic toolkit for Szabó operators on pseudo-Riemannian tangent
//! spaces.
//!
//! Everything is pointwise and algebraic: a tangent space is modelled as
//! `R^(p,q)` with the diagonal metric `diag(-1,..,-1,+1,..,+1)`, covariant
//! derivative curvature tensors are 5-index rational arrays, and the Szabó
//! map is a matrix of homogeneous cubic polynomials. On top of that sit the
//! class `P_n` of odd Hom-valued polynomial maps, determinantal ideals of
//! polynomial families over the nullcone, the spectral machinery for the
//! annihilating operator `A(v)`, and a symbolic Stiefel-Whitney / KO engine
//! that emits replayable proof traces.
//!
//! Module map:
//!
//! * [`exactpoly`] – rationals, sparse multivariate polynomials, the quadratic
//!   form `q` and division by it, exact nullcone sampling.
//! * [`pseudolin`] – exact linear algebra over `R^(p,q)`.
//! * [`curvature`] – the `∇R` tensor, its symmetry system, the Szabó operator.
//! * [`szaboclass`] – the class `P_n`, nilpotency over the nullcone.
//! * [`polydep`] – minors, dependence degree, descent.
//! * [`spectral`] – spectral profiles, `A(v)`, the `Δ` module, fibre ranks.
//! * [`obstruction`] – `Z_2[x]/(x^(n+1))`, Adams' `φ`, proof traces, verdicts.
//! * [`json`] – the on-disk JSON formats shared by the CLI and the C ABI.
//! * [`cli`] – the `szabo` command-line front end.

pub mod cli;
pub mod curvature;
pub mod error;
pub mod exactpoly;
pub mod fixtures;
pub mod json;
pub mod obstruction;
pub mod polydep;
pub mod pseudolin;
pub mod spectral;
pub mod szaboclass;

pub use error::{Error, Result};
pub use exactpoly::{MultiPoly, QuadForm, Rational, Signature};
pub use pseudolin::{InnerSpace, QMatrix, SubspaceQ};
