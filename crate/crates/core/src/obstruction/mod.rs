//! Mod-2 characteristic classes and KO-theory of real projective spaces,
//! used symbolically to bound the rank of bundles with `V ≅ V ⊗ γ₁`.
//! Every conclusion is recorded as a replayable [`ProofTrace`].

pub mod ko;
pub mod techn;
pub mod trace;
pub mod wolf;
pub mod z2;

pub use ko::{ko_order, lema5_solve, phi, phi_bounds_check, subb_dichotomy, Dichotomy, PhiBounds};
pub use techn::{techn_case1, techn_case2, techn_case3};
pub use trace::{replay, ProofTrace, Rule, TraceStep, Verdict};
pub use wolf::{wolf_verdict, WolfVerdict};
pub use z2::{z2_mul, z2_pow_one_plus_x, Z2TruncPoly};

use serde::Serialize;

/// Symbolic bundle over `RP^n`: rank, hypotheses, and derived data.
#[derive(Clone, Debug, Serialize)]
pub struct BundleDescriptor {
    pub n: u64,
    pub rank: u64,
    pub subbundle_of_trivial: Option<u64>,
    pub self_tensor_gamma1: bool,
    pub nowhere_zero_section: bool,
    pub restriction_self_tensor: Option<u64>,
    /// `w(V)` when it is determined by the hypotheses.
    pub sw: Option<String>,
    /// Residues `a` with `{V} = a{γ₁}` allowed by the hypotheses.
    pub ko_residues: Option<Vec<String>>,
}

impl BundleDescriptor {
    /// `V ≅ V⊗γ₁` of rank `r`: `2a ≡ r`, and `w(V)` is `(1+x)^{r/2}` up to the
    /// choice of residue.
    pub fn self_tensor(n: u64, rank: u64) -> crate::Result<Self> {
        let residues = lema5_solve(rank, n)?;
        Ok(BundleDescriptor {
            n,
            rank,
            subbundle_of_trivial: None,
            self_tensor_gamma1: true,
            nowhere_zero_section: false,
            restriction_self_tensor: None,
            sw: None,
            ko_residues: Some(residues.iter().map(|a| a.to_string()).collect()),
        })
    }
}
