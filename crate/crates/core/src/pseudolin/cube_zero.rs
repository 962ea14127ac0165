use num_traits::Zero;
use serde::Serialize;

use super::{image, InnerSpace, QMatrix, SubspaceQ};
use crate::error::{Error, Result};
use crate::exactpoly::rational::{self, Rational};

/// The four conclusions about a self-adjoint `A` with `A³ = 0`, each with
/// the numbers it was decided from.
#[derive(Clone, Debug, Serialize)]
pub struct CubeZeroReport {
    pub rank_a2: usize,
    pub rank_a_phi_a2: usize,
    pub rank_a2_phi_a2: usize,
    /// `Im(A²)` has zero Gram matrix.
    pub im_a2_isotropic: bool,
    pub ranks_equal: bool,
    /// `A` maps `Im(AΦA²)` onto `Im(A²)` without kernel.
    pub restriction_isomorphism: bool,
    /// Determinant of the Gram matrix of `Im(AΦA²)`; `1` for the zero space.
    #[serde(serialize_with = "ser_rat")]
    pub gram_det_a_phi_a2: Rational,
    pub a_phi_a2_nondegenerate: bool,
    pub mutually_orthogonal: bool,
    #[serde(skip)]
    pub im_a2: SubspaceQ,
    #[serde(skip)]
    pub im_a_phi_a2: SubspaceQ,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_frac_string(r))
}

impl CubeZeroReport {
    pub fn all_hold(&self) -> bool {
        self.im_a2_isotropic
            && self.ranks_equal
            && self.restriction_isomorphism
            && self.a_phi_a2_nondegenerate
            && self.mutually_orthogonal
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank_a2 == 0
    }
}

pub fn lema4_report(a: &QMatrix, sp: &InnerSpace) -> Result<CubeZeroReport> {
    if a.nrows() != sp.m() || !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: sp.m(),
            got: a.nrows(),
        });
    }
    if !sp.is_self_adjoint(a) {
        return Err(Error::precondition("A is not self-adjoint"));
    }
    let a2 = a * a;
    if !(&a2 * a).is_zero() {
        return Err(Error::precondition("A^3 != 0"));
    }
    let phi = sp.phi_map();
    let a_phi_a2 = &(a * &phi) * &a2;
    let a2_phi_a2 = &(&a2 * &phi) * &a2;

    let im_a2 = image(&a2);
    let im_f = image(&a_phi_a2);
    let (r2, rf, rg) = (im_a2.dim(), im_f.dim(), a2_phi_a2.rank());

    let mapped = im_f.image_under(a);
    let restriction_isomorphism = mapped.dim() == im_f.dim() && mapped.same_as(&im_a2);

    let gram = sp.gram(&im_f);
    let det = if gram.nrows() == 0 {
        Rational::from_integer(1.into())
    } else {
        gram.determinant()
    };

    Ok(CubeZeroReport {
        rank_a2: r2,
        rank_a_phi_a2: rf,
        rank_a2_phi_a2: rg,
        im_a2_isotropic: sp.is_totally_isotropic(&im_a2),
        ranks_equal: r2 == rf && rf == rg,
        restriction_isomorphism,
        a_phi_a2_nondegenerate: !det.is_zero(),
        gram_det_a_phi_a2: det,
        mutually_orthogonal: sp.are_orthogonal(&im_a2, &im_f),
        im_a2,
        im_a_phi_a2: im_f,
    })
}
