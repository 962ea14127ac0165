//! Spectral profiles on the timelike pseudo-sphere, the operator `A(v)`
//! annihilating `S(v)`, the module `Δ` of maps killed by `A`, and fibre
//! ranks of `Δ` over spacelike, timelike and null vectors.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::rational::{is_zero_vec, to_frac_string, Rational};
use crate::exactpoly::sample::{random_vector, rng_from_seed};
use crate::exactpoly::{MultiPoly, QuadForm, Signature};
use crate::polydep::{self, PolyMapFamily};
use crate::pseudolin::{self, InnerSpace, QMatrix, SubspaceQ, UniPoly};
use crate::szaboclass::{pclass_check, HomPolyMap, PClassReport};

fn frac_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_frac_string).collect()
}

/// `μ₋(X) = X·Σ(−1)ᵏσₖX^{2(l−k)}`, read off the minimal polynomial at `v₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralProfile {
    pub l: usize,
    /// `σ₁, …, σ_l`.
    pub sigma: Vec<Rational>,
    pub mu_minus: UniPoly,
    pub source: Vec<Rational>,
}

impl SpectralProfile {
    /// `σ_k` with `σ₀ = 1`.
    pub fn sigma_k(&self, k: usize) -> Rational {
        if k == 0 {
            Rational::one()
        } else {
            self.sigma[k - 1].clone()
        }
    }

    pub fn from_sigma(sigma: Vec<Rational>, source: Vec<Rational>) -> Self {
        let l = sigma.len();
        let mut c = vec![Rational::zero(); 2 * l + 2];
        c[2 * l + 1] = Rational::one();
        for (k, s) in sigma.iter().enumerate() {
            let k = k + 1;
            c[2 * (l - k) + 1] = if k % 2 == 0 { s.clone() } else { -s.clone() };
        }
        SpectralProfile {
            l,
            sigma,
            mu_minus: UniPoly::new(c),
            source,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileOutcome {
    /// `S(v₀) = 0`, so `μ = X` and `l = 0`.
    Zero {
        source: Vec<Rational>,
    },
    Profile(SpectralProfile),
    Rejected {
        minimal_polynomial: UniPoly,
        diagnosis: String,
    },
}

impl ProfileOutcome {
    pub fn profile(&self) -> Option<&SpectralProfile> {
        match self {
            ProfileOutcome::Profile(p) => Some(p),
            _ => None,
        }
    }
}

/// Default source `e₁`.
pub fn default_source(sig: Signature) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); sig.m()];
    v[0] = Rational::one();
    v
}

pub fn spec_profile(s: &HomPolyMap, v0: &[Rational]) -> Result<ProfileOutcome> {
    let sp = InnerSpace::new(s.signature());
    if v0.len() != sp.m() {
        return Err(Error::DimensionMismatch {
            expected: sp.m(),
            got: v0.len(),
        });
    }
    if sp.ip(v0, v0)? != -Rational::one() {
        return Err(Error::precondition("source vector is not unit timelike"));
    }
    let sv = s.eval(v0)?;
    if sv.is_zero() {
        return Ok(ProfileOutcome::Zero {
            source: v0.to_vec(),
        });
    }
    let mu = pseudolin::minimal_polynomial(&sv);
    let reject = |d: &str| {
        Ok(ProfileOutcome::Rejected {
            minimal_polynomial: mu.clone(),
            diagnosis: d.into(),
        })
    };
    if !mu.is_square_free() {
        return reject("minimal polynomial is not square-free");
    }
    if !mu.is_odd() {
        return reject("spectrum not symmetric");
    }
    // odd and square-free: μ = X·m(X²) with m(0) ≠ 0
    if mu.coeff(1).is_zero() {
        return reject("μ/X has zero constant term");
    }
    let deg = mu.degree().unwrap();
    let l = (deg - 1) / 2;
    let sigma = (1..=l)
        .map(|k| {
            let c = mu.coeff(2 * (l - k) + 1);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let p = SpectralProfile::from_sigma(sigma, v0.to_vec());
    debug_assert_eq!(p.mu_minus, mu);
    Ok(ProfileOutcome::Profile(p))
}

fn n_of(s: &HomPolyMap) -> Result<u32> {
    if !s.is_odd() {
        return Err(Error::precondition(format!(
            "degree {} is even",
            s.degree()
        )));
    }
    Ok((s.degree() - 1) / 2)
}

/// `A = Σ_{k=0}^{l} σₖ q^{(2n+1)k} S^{2l−2k}`, homogeneous of degree `2l(2n+1)`.
pub fn a_operator(s: &HomPolyMap, profile: &SpectralProfile) -> Result<HomPolyMap> {
    if profile.l == 0 {
        return Err(Error::precondition("profile has l = 0"));
    }
    let n = n_of(s)?;
    let sig = s.signature();
    let qf = QuadForm::new(sig);
    let l = profile.l as u32;
    let target = 2 * l * (2 * n + 1);
    let mut acc = HomPolyMap::zero(sig, target);
    for k in 0..=l {
        let term = s
            .pow(2 * l - 2 * k)
            .mul_poly(&qf.power((2 * n + 1) * k))
            .scale(&profile.sigma_k(k as usize));
        if term.degree() != target && !term.is_zero() {
            return Err(Error::precondition(format!(
                "summand {k} has degree {} not {target}",
                term.degree()
            )));
        }
        let term = if term.degree() == target {
            term
        } else {
            HomPolyMap::zero(sig, target)
        };
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// Outcome of `S·A ≡ 0`.
#[derive(Clone, Debug, Serialize)]
pub struct EqnyReport {
    pub holds: bool,
    pub l: usize,
    /// First entry of `S·A` that is not the zero polynomial.
    pub first_nonzero: Option<(usize, usize)>,
    /// Integer point at which `S(v)A(v) ≠ 0`.
    pub witness: Option<Vec<String>>,
    pub class: PClassReport,
    pub diagnosis: Option<String>,
}

pub fn eqny_identity_check(s: &HomPolyMap, outcome: &ProfileOutcome) -> Result<EqnyReport> {
    let class = pclass_check(s);
    let (prod, l) = match outcome {
        ProfileOutcome::Zero { .. } => (s.clone(), 0),
        ProfileOutcome::Profile(p) => (s.checked_mul(&a_operator(s, p)?)?, p.l),
        ProfileOutcome::Rejected { diagnosis, .. } => {
            return Ok(EqnyReport {
                holds: false,
                l: 0,
                first_nonzero: None,
                witness: None,
                class,
                diagnosis: Some(format!("no profile: {diagnosis}")),
            })
        }
    };
    let m = s.m();
    let first_nonzero = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .find(|&(i, j)| !prod.entry(i, j).is_zero());
    let mut witness = None;
    let mut diagnosis = None;
    if let Some((i, j)) = first_nonzero {
        let mut rng = rng_from_seed(0);
        for _ in 0..64 {
            let v = random_vector(&mut rng, m, 4);
            if !prod.entry(i, j).eval(&v)?.is_zero() {
                witness = Some(frac_vec(&v));
                break;
            }
        }
        diagnosis = Some(if l == 0 {
            "S(v₀) = 0 but S is not identically zero".to_string()
        } else {
            format!(
                "(S·A)[{i}][{j}] = {} ≠ 0: the profile at v₀ is not constant",
                prod.entry(i, j)
            )
        });
    }
    Ok(EqnyReport {
        holds: first_nonzero.is_none(),
        l,
        first_nonzero,
        witness,
        class,
        diagnosis,
    })
}

/// `Ker(m(S_v)) = Im(S_v)` where `μ = X·m(X)` (or `m = μ` if `S_v` is invertible).
#[derive(Clone, Debug)]
pub struct KerImReport {
    pub holds: bool,
    pub minimal_polynomial: UniPoly,
    pub m: UniPoly,
    pub kernel: SubspaceQ,
    pub image: SubspaceQ,
}

pub fn jordan_ker_im_at(sv: &QMatrix) -> Result<KerImReport> {
    let mu = pseudolin::minimal_polynomial(sv);
    if !mu.is_square_free() {
        return Err(Error::precondition(format!(
            "minimal polynomial {mu} is not square-free"
        )));
    }
    let m = if mu.coeff(0).is_zero() {
        mu.div_rem(&UniPoly::x()).0
    } else {
        mu.clone()
    };
    let kernel = pseudolin::kernel(&m.eval_matrix(sv));
    let image = pseudolin::image(sv);
    Ok(KerImReport {
        holds: kernel.same_as(&image),
        minimal_polynomial: mu,
        m,
        kernel,
        image,
    })
}

/// Polynomial maps `x` with `A·x ≡ 0`.
#[derive(Clone, Debug)]
pub struct DeltaModule {
    s: HomPolyMap,
    a: HomPolyMap,
    profile: SpectralProfile,
}

impl DeltaModule {
    pub fn new(s: &HomPolyMap, profile: &SpectralProfile) -> Result<Self> {
        Ok(DeltaModule {
            s: s.clone(),
            a: a_operator(s, profile)?,
            profile: profile.clone(),
        })
    }

    pub fn a(&self) -> &HomPolyMap {
        &self.a
    }

    pub fn s(&self) -> &HomPolyMap {
        &self.s
    }

    pub fn profile(&self) -> &SpectralProfile {
        &self.profile
    }

    pub fn m(&self) -> usize {
        self.s.m()
    }
}

pub fn delta_membership(x: &[MultiPoly], d: &DeltaModule) -> Result<bool> {
    if let Some(p) = x.iter().find(|p| p.nvars() != d.m()) {
        return Err(Error::VarCountMismatch {
            left: p.nvars(),
            right: d.m(),
        });
    }
    Ok(d.a.apply(x)?.iter().all(MultiPoly::is_zero))
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub scaled_member: bool,
    pub member: bool,
    /// `P·x ∈ Δ ⇒ x ∈ Δ`.
    pub consistent: bool,
}

pub fn delta_saturation_check(
    x: &[MultiPoly],
    p: &MultiPoly,
    d: &DeltaModule,
) -> Result<SaturationReport> {
    if p.is_zero() {
        return Err(Error::precondition("P must be nonzero"));
    }
    let px: Vec<MultiPoly> = x.iter().map(|c| p * c).collect();
    let scaled_member = delta_membership(&px, d)?;
    let member = delta_membership(x, d)?;
    Ok(SaturationReport {
        scaled_member,
        member,
        consistent: !scaled_member || member,
    })
}

#[derive(Clone, Debug)]
pub struct IsometryAction {
    /// `v ↦ T·x(T⁻¹v)`.
    pub image: Vec<MultiPoly>,
    /// `A(Tv) = T A(v) T⁻¹` as polynomial identity.
    pub equivariant: bool,
    pub member_before: bool,
    pub member_after: bool,
}

pub fn delta_isometry_action(
    x: &[MultiPoly],
    t: &QMatrix,
    d: &DeltaModule,
) -> Result<IsometryAction> {
    let sp = InnerSpace::new(d.s.signature());
    if !sp.is_isometry(t) {
        return Err(Error::NotIsometry);
    }
    let tinv = sp.isometry_inverse(t)?;
    let rows = tinv.to_rows();
    let moved = x
        .iter()
        .map(|p| p.linear_substitute(&rows))
        .collect::<Result<Vec<_>>>()?;
    let m = d.m();
    let image: Vec<MultiPoly> = (0..m)
        .map(|i| {
            (0..m).fold(MultiPoly::zero(m), |acc, j| {
                if t[(i, j)].is_zero() {
                    acc
                } else {
                    &acc + &moved[j].scale(&t[(i, j)])
                }
            })
        })
        .collect();
    let equivariant = d.a.conjugate(t, &tinv)? == d.a;
    Ok(IsometryAction {
        member_before: delta_membership(x, d)?,
        member_after: delta_membership(&image, d)?,
        image,
        equivariant,
    })
}

/// Columns `w ↦ S(w)eⱼ`.
pub fn column_generators(s: &HomPolyMap) -> Vec<Vec<MultiPoly>> {
    let m = s.m();
    (0..m)
        .map(|j| (0..m).map(|i| s.entry(i, j).clone()).collect())
        .collect()
}

/// Span of `{x(v)}` over the generators.
pub fn evaluation_fiber(generators: &[Vec<MultiPoly>], v: &[Rational]) -> Result<SubspaceQ> {
    if is_zero_vec(v) {
        return Err(Error::precondition("v must be nonzero"));
    }
    let vals = generators
        .iter()
        .map(|x| x.iter().map(|p| p.eval(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceQ::span(v.len(), &vals))
}

/// Rational point of the unit sphere in `R^k` by inverse stereographic
/// projection of a random point of `Q^{k−1}`.
fn sphere_point<R: rand::Rng>(rng: &mut R, k: usize) -> Vec<Rational> {
    if k == 1 {
        return vec![Rational::one()];
    }
    let t = random_vector(rng, k - 1, 4);
    let n2: Rational = t.iter().map(|x| x * x).sum();
    let den = &n2 + Rational::one();
    let mut out: Vec<Rational> = t
        .iter()
        .map(|x| Rational::from_integer(2.into()) * x / &den)
        .collect();
    out.push((&n2 - Rational::one()) / &den);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RankObservation {
    pub rank: usize,
    pub constant: bool,
    /// Sample with the smallest rank seen.
    pub witness: Vec<String>,
}

fn observe(s: &HomPolyMap, points: &[Vec<Rational>]) -> Result<RankObservation> {
    let mut ranks = Vec::new();
    for v in points {
        ranks.push(s.eval(v)?.rank());
    }
    let min = ranks
        .iter()
        .copied()
        .enumerate()
        .min_by_key(|e| e.1)
        .unwrap();
    let max = *ranks.iter().max().unwrap();
    Ok(RankObservation {
        rank: max,
        constant: min.1 == max,
        witness: frac_vec(&points[min.0]),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GluedRankReport {
    pub r_plus: RankObservation,
    pub r_minus: RankObservation,
    /// Maximal fibre rank over the nullcone, from dependence degrees.
    pub r_zero: usize,
    /// Columns chosen independent over the nullcone and the degree of each
    /// rejected column against them.
    pub independent_columns: Vec<usize>,
    pub rejected: Vec<(usize, Option<u32>)>,
    /// Descent length for the first rejected column, if its degree is finite.
    pub descent_steps: Option<usize>,
    pub r_zero_sampled: usize,
    pub r_minus_equals_r_plus: bool,
    pub r_zero_below_r_plus: bool,
    pub s_is_zero: bool,
    pub lemma_chain: Vec<String>,
}

pub const SPACELIKE_SAMPLES: usize = 12;
pub const NULL_SAMPLES: usize = 200;

pub fn glued_rank_analysis(s: &HomPolyMap, seed: u64) -> Result<GluedRankReport> {
    let sig = s.signature();
    sig.require_admissible()?;
    let sp = InnerSpace::new(sig);
    let m = sig.m();
    let mut rng = rng_from_seed(seed);
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    // orbit points of e_{p+1} and e_1 under random isometries
    for _ in 0..SPACELIKE_SAMPLES {
        let t = sp.random_isometry(&mut rng, 4);
        plus.push(t.col(sig.p));
        minus.push(t.col(0));
    }
    // ι: unit spheres of the definite coordinate subspaces
    for _ in 0..SPACELIKE_SAMPLES / 2 {
        let mut v = vec![Rational::zero(); m];
        v[sig.p..].clone_from_slice(&sphere_point(&mut rng, sig.q));
        plus.push(v);
        let mut v = vec![Rational::zero(); m];
        v[..sig.p].clone_from_slice(&sphere_point(&mut rng, sig.p));
        minus.push(v);
    }
    let r_plus = observe(s, &plus)?;
    let r_minus = observe(s, &minus)?;

    let cols = column_generators(s);
    let mut independent: Vec<usize> = Vec::new();
    let mut rejected = Vec::new();
    let mut descent_steps = None;
    for j in 0..m {
        if cols[j].iter().all(MultiPoly::is_zero) {
            rejected.push((j, None));
            continue;
        }
        let mut maps: Vec<Vec<MultiPoly>> = independent.iter().map(|&i| cols[i].clone()).collect();
        maps.push(cols[j].clone());
        let fam = PolyMapFamily::new(sig, m, maps)?;
        match polydep::dependence_degree(&fam)? {
            Some(0) => independent.push(j),
            k => {
                if descent_steps.is_none() && k.is_some() {
                    descent_steps = Some(polydep::descend(&fam, seed)?.steps.len());
                }
                rejected.push((j, k));
            }
        }
    }
    let r_zero = independent.len();
    let fam_all = PolyMapFamily::new(sig, m, cols)?;
    let r_zero_sampled = polydep::max_null_rank(&fam_all, NULL_SAMPLES, seed)?;
    let s_is_zero = s.is_zero();
    let lemma_chain = vec![
        "r+ and r- observed on unit spacelike and timelike samples".to_string(),
        "r0 from the largest column subfamily of dependence degree 0".to_string(),
        "rank lemma: r- = r+; if S is not identically zero then r0 < r+".to_string(),
    ];
    Ok(GluedRankReport {
        r_minus_equals_r_plus: r_minus.rank == r_plus.rank,
        r_zero_below_r_plus: r_zero < r_plus.rank,
        r_plus,
        r_minus,
        r_zero,
        independent_columns: independent,
        rejected,
        descent_steps,
        r_zero_sampled,
        s_is_zero,
        lemma_chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rational::int;
    use crate::fixtures;

    fn op(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_i64(rows)
    }

    #[test]
    fn sigma_round_trip() {
        let p = SpectralProfile::from_sigma(vec![int(4)], vec![]);
        assert_eq!(p.mu_minus, UniPoly::from_i64(&[0, -4, 0, 1]));
        let p = SpectralProfile::from_sigma(vec![int(5), int(4)], vec![]);
        // X(X²−1)(X²−4) = X⁵ − 5X³ + 4X
        assert_eq!(p.mu_minus, UniPoly::from_i64(&[0, 4, 0, -5, 0, 1]));
    }

    #[test]
    fn profiles_of_fixtures() {
        let s = fixtures::split_plane();
        let v0 = default_source(s.signature());
        match spec_profile(&s, &v0).unwrap() {
            ProfileOutcome::Rejected {
                diagnosis,
                minimal_polynomial,
            } => {
                assert_eq!(diagnosis, "spectrum not symmetric");
                assert_eq!(minimal_polynomial, UniPoly::from_i64(&[0, -1, 1]));
            }
            other => panic!("{other:?}"),
        }
        let c = fixtures::clifford_profile(1);
        let p = spec_profile(&c, &default_source(c.signature())).unwrap();
        assert_eq!(p.profile().unwrap().sigma, vec![int(-1)]);
        let z = HomPolyMap::zero(c.signature(), 3);
        assert!(matches!(
            spec_profile(&z, &default_source(c.signature())).unwrap(),
            ProfileOutcome::Zero { .. }
        ));
        assert!(spec_profile(&c, &[int(1), int(1), int(0)]).is_err());
    }

    #[test]
    fn eqny_on_fixtures() {
        for n in 0..=2 {
            let c = fixtures::clifford_profile(n);
            let out = spec_profile(&c, &default_source(c.signature())).unwrap();
            let a = a_operator(&c, out.profile().unwrap()).unwrap();
            assert_eq!(a.degree(), 2 * (2 * n + 1));
            assert!(eqny_identity_check(&c, &out).unwrap().holds);
        }
        let g = fixtures::generic_rank_one();
        let out = spec_profile(&g, &default_source(g.signature())).unwrap();
        let r = eqny_identity_check(&g, &out).unwrap();
        assert!(!r.holds);
        assert!(r.diagnosis.is_some());
        let z = HomPolyMap::zero(g.signature(), 3);
        let out = spec_profile(&z, &default_source(z.signature())).unwrap();
        assert!(eqny_identity_check(&z, &out).unwrap().holds);
    }

    #[test]
    fn ker_im_examples() {
        let r = jordan_ker_im_at(&op(&[&[-2, 4], &[-4, 8]])).unwrap();
        assert!(r.holds);
        assert_eq!(r.minimal_polynomial, UniPoly::from_i64(&[0, -6, 1]));
        assert!(r.image.contains(&[int(1), int(2)]));
        let r = jordan_ker_im_at(&QMatrix::zeros(3, 3)).unwrap();
        assert!(r.holds && r.image.dim() == 0 && r.m == UniPoly::one());
        assert!(jordan_ker_im_at(&op(&[&[2, 0], &[0, 3]])).unwrap().holds);
        assert!(jordan_ker_im_at(&op(&[&[0, 1], &[0, 0]])).is_err());
    }

    #[test]
    fn delta_examples() {
        let c = fixtures::clifford_profile(1);
        let out = spec_profile(&c, &default_source(c.signature())).unwrap();
        let d = DeltaModule::new(&c, out.profile().unwrap()).unwrap();
        let zero = vec![MultiPoly::zero(3); 3];
        assert!(delta_membership(&zero, &d).unwrap());
        for x in column_generators(&c) {
            assert!(delta_membership(&x, &d).unwrap());
        }
        // A = S² − q³ vanishes on span{e₁,e₂} and is −q³ on e₃
        let e1 = vec![MultiPoly::one(3), MultiPoly::zero(3), MultiPoly::zero(3)];
        assert!(delta_membership(&e1, &d).unwrap());
        let e3 = vec![MultiPoly::zero(3), MultiPoly::zero(3), MultiPoly::one(3)];
        assert!(!delta_membership(&e3, &d).unwrap());
        let q = QuadForm::new(c.signature());
        let r = delta_saturation_check(&e3, q.poly(), &d).unwrap();
        assert!(!r.scaled_member && r.consistent);
    }

    #[test]
    fn fibers_are_even_and_match_images() {
        let c = fixtures::clifford_profile(1);
        let gens = column_generators(&c);
        let v = vec![int(0), int(3), int(4)];
        let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
        let f = evaluation_fiber(&gens, &v).unwrap();
        assert!(f.same_as(&evaluation_fiber(&gens, &neg).unwrap()));
        assert!(f.same_as(&pseudolin::image(&c.eval(&v).unwrap())));
        assert!(evaluation_fiber(&gens, &[int(0), int(0), int(0)]).is_err());
    }

    #[test]
    fn glued_ranks() {
        let z = HomPolyMap::zero(Signature::new(1, 2).unwrap(), 3);
        let r = glued_rank_analysis(&z, 1).unwrap();
        assert_eq!((r.r_plus.rank, r.r_minus.rank, r.r_zero), (0, 0, 0));
        let r = glued_rank_analysis(&fixtures::null_rank_one(), 1).unwrap();
        assert_eq!(r.r_zero, r.r_zero_sampled);
        assert_eq!((r.r_plus.rank, r.r_minus.rank, r.r_zero), (1, 1, 1));
        let r = glued_rank_analysis(&fixtures::clifford_profile(1), 1).unwrap();
        assert!(r.r_minus_equals_r_plus);
        assert_eq!(r.r_plus.rank, 2);
    }
}
