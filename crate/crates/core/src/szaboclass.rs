//! The class `P_n`: self-adjoint, argument-annihilating, odd homogeneous
//! polynomial maps `V → End(V)` of degree `2n + 1`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::rational::Rational;
use crate::exactpoly::sample::rng_from_seed;
use crate::exactpoly::{null_samples, MultiPoly, QuadForm, Signature};
use crate::pseudolin::{InnerSpace, QMatrix};

/// Square matrix of homogeneous polynomials of one common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPolyMap {
    sig: Signature,
    degree: u32,
    entries: Vec<Vec<MultiPoly>>,
}

impl HomPolyMap {
    pub fn new(sig: Signature, degree: u32, entries: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let m = sig.m();
        if entries.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: entries.len(),
            });
        }
        for row in &entries {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: row.len(),
                });
            }
            for p in row {
                if p.nvars() != m {
                    return Err(Error::VarCountMismatch {
                        left: p.nvars(),
                        right: m,
                    });
                }
                if !p.is_homogeneous_of(degree) {
                    return Err(Error::Parse(format!(
                        "entry {p} is not homogeneous of degree {degree}"
                    )));
                }
            }
        }
        Ok(HomPolyMap {
            sig,
            degree,
            entries,
        })
    }

    pub fn zero(sig: Signature, degree: u32) -> Self {
        let m = sig.m();
        HomPolyMap {
            sig,
            degree,
            entries: vec![vec![MultiPoly::zero(m); m]; m],
        }
    }

    /// `p · Id` for a homogeneous scalar `p`.
    pub fn scalar(sig: Signature, p: &MultiPoly) -> Result<Self> {
        let m = sig.m();
        let d = p.degree().unwrap_or(0);
        let mut e = vec![vec![MultiPoly::zero(m); m]; m];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = p.clone();
        }
        HomPolyMap::new(sig, d, e)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn m(&self) -> usize {
        self.sig.m()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entries(&self) -> &[Vec<MultiPoly>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(MultiPoly::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }

    pub fn eval(&self, v: &[Rational]) -> Result<QMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.eval(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QMatrix::from_rows(rows)
    }

    pub fn checked_mul(&self, other: &HomPolyMap) -> Result<HomPolyMap> {
        if self.sig != other.sig {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: other.m(),
            });
        }
        let m = self.m();
        let mut out = vec![vec![MultiPoly::zero(m); m]; m];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = MultiPoly::zero(m);
                for k in 0..m {
                    let a = &self.entries[i][k];
                    let b = &other.entries[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                *cell = acc;
            }
        }
        Ok(HomPolyMap {
            sig: self.sig,
            degree: self.degree + other.degree,
            entries: out,
        })
    }

    pub fn checked_add(&self, other: &HomPolyMap) -> Result<HomPolyMap> {
        if self.sig != other.sig {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: other.m(),
            });
        }
        let sum: Vec<Vec<MultiPoly>> = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        let zero_side = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        if !self.is_zero() && !other.is_zero() && self.degree != other.degree {
            return Err(Error::Precondition(format!(
                "cannot add maps of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(HomPolyMap {
            sig: self.sig,
            degree: zero_side,
            entries: sum,
        })
    }

    /// Entry-wise product with a homogeneous scalar polynomial.
    pub fn mul_poly(&self, p: &MultiPoly) -> HomPolyMap {
        let d = p.degree().unwrap_or(0);
        HomPolyMap {
            sig: self.sig,
            degree: self.degree + d,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x * p).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> HomPolyMap {
        HomPolyMap {
            sig: self.sig,
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x.scale(c)).collect())
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> HomPolyMap {
        let mut acc = HomPolyMap::scalar(self.sig, &MultiPoly::one(self.m())).unwrap();
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same signature");
        }
        acc
    }

    pub fn trace(&self) -> MultiPoly {
        let mut t = MultiPoly::zero(self.m());
        for i in 0..self.m() {
            t = &t + &self.entries[i][i];
        }
        t
    }

    /// `S(λ) x(λ)` for a vector of polynomials.
    pub fn apply(&self, x: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        if x.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: x.len(),
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(MultiPoly::zero(self.m()), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// `S(λ)·λ`.
    pub fn apply_to_argument(&self) -> Vec<MultiPoly> {
        let lam: Vec<MultiPoly> = (0..self.m()).map(|i| MultiPoly::var(self.m(), i)).collect();
        self.apply(&lam).expect("dimension")
    }

    /// `v ↦ T S(T⁻¹ v) T⁻¹` with `Tinv` given explicitly.
    pub fn conjugate(&self, t: &QMatrix, tinv: &QMatrix) -> Result<HomPolyMap> {
        let m = self.m();
        let sub = self.substitute_linear(tinv)?;
        let mut out = vec![vec![MultiPoly::zero(m); m]; m];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = MultiPoly::zero(m);
                for a in 0..m {
                    if t[(i, a)].is_zero() {
                        continue;
                    }
                    for b in 0..m {
                        if tinv[(b, j)].is_zero() {
                            continue;
                        }
                        let c = &t[(i, a)] * &tinv[(b, j)];
                        acc = &acc + &sub.entries[a][b].scale(&c);
                    }
                }
                *cell = acc;
            }
        }
        Ok(HomPolyMap {
            sig: self.sig,
            degree: self.degree,
            entries: out,
        })
    }

    /// `λ ↦ S(M λ)`.
    pub fn substitute_linear(&self, mat: &QMatrix) -> Result<HomPolyMap> {
        let rows = mat.to_rows();
        let entries = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| p.linear_substitute(&rows))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HomPolyMap {
            sig: self.sig,
            degree: self.degree,
            entries,
        })
    }
}

/// Outcome of the coefficient-level membership test.
#[derive(Clone, Debug, Serialize)]
pub struct PClassReport {
    pub degree: u32,
    pub odd: bool,
    /// `n` with `degree = 2n + 1`, when odd.
    pub n: Option<u32>,
    pub self_adjoint: bool,
    pub annihilates_argument: bool,
    pub failures: Vec<String>,
}

impl PClassReport {
    pub fn is_member(&self) -> bool {
        self.odd && self.self_adjoint && self.annihilates_argument
    }
}

pub fn pclass_check(s: &HomPolyMap) -> PClassReport {
    let m = s.m();
    let sig = s.signature();
    let mut failures = Vec::new();
    let odd = s.is_odd();
    if !odd {
        failures.push(format!("degree {} is even", s.degree()));
    }
    // G S symmetric: g_i S_ij = g_j S_ji
    let mut self_adjoint = true;
    'outer: for i in 0..m {
        for j in i + 1..m {
            let a = s.entry(i, j).scale(&sig.sign_q(i));
            let b = s.entry(j, i).scale(&sig.sign_q(j));
            if a != b {
                self_adjoint = false;
                failures.push(format!("G*S not symmetric at ({i},{j})"));
                break 'outer;
            }
        }
    }
    let sv = s.apply_to_argument();
    let annihilates_argument = sv.iter().all(MultiPoly::is_zero);
    if !annihilates_argument {
        let i = sv.iter().position(|p| !p.is_zero()).unwrap();
        failures.push(format!("(S(l) l)_{i} = {} != 0", sv[i]));
    }
    PClassReport {
        degree: s.degree(),
        odd,
        n: odd.then(|| (s.degree() - 1) / 2),
        self_adjoint,
        annihilates_argument,
        failures,
    }
}

pub fn odd_power(s: &HomPolyMap, k: u32) -> Result<HomPolyMap> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenPower(k));
    }
    Ok(s.pow(k))
}

/// `S(Tv) = T S(v) T⁻¹` at sampled rational `v` (evaluation level).
pub fn equivariance_check(s: &HomPolyMap, t: &QMatrix, samples: usize, seed: u64) -> Result<bool> {
    let sp = InnerSpace::new(s.signature());
    let tinv = sp.isometry_inverse(t)?;
    let mut rng = rng_from_seed(seed);
    for _ in 0..samples {
        let v = crate::exactpoly::sample::random_vector(&mut rng, s.m(), 5);
        let tv = t.apply(&v)?;
        let lhs = s.eval(&tv)?;
        let rhs = &(t * &s.eval(&v)?) * &tinv;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn trace_power_poly(s: &HomPolyMap, n: u32) -> MultiPoly {
    s.pow(n).trace()
}

#[derive(Clone, Debug, Serialize)]
pub struct NilpotencyReport {
    pub nilpotent_on_nullcone: bool,
    /// First `n` whose `Tr(Sⁿ)` is not divisible by `q`.
    pub witness_power: Option<u32>,
}

/// `Tr(Sⁿ)` vanishes on the nullcone for `n = 1..m`.
pub fn pointwise_nilpotent_on_nullcone(s: &HomPolyMap) -> Result<NilpotencyReport> {
    let sig = s.signature();
    sig.require_admissible()?;
    let qf = QuadForm::new(sig);
    let mut pw = HomPolyMap::scalar(sig, &MultiPoly::one(s.m()))?;
    for n in 1..=s.m() as u32 {
        pw = pw.checked_mul(s)?;
        if !qf.vanishes_on_nullcone(&pw.trace())? {
            return Ok(NilpotencyReport {
                nilpotent_on_nullcone: false,
                witness_power: Some(n),
            });
        }
    }
    Ok(NilpotencyReport {
        nilpotent_on_nullcone: true,
        witness_power: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingOrder {
    /// Least `n ≤ m` with `Sⁿ ≡ 0` over the nullcone.
    pub order: Option<u32>,
    /// Greatest odd number below `order`, reported once `order ≥ 4`.
    pub odd_below: Option<u32>,
}

pub fn vanishing_order_on_nullcone(s: &HomPolyMap) -> Result<VanishingOrder> {
    let sig = s.signature();
    sig.require_admissible()?;
    let qf = QuadForm::new(sig);
    let mut pw = s.clone();
    for n in 1..=s.m() as u32 {
        if n > 1 {
            pw = pw.checked_mul(s)?;
        }
        let mut all = true;
        for p in pw.entries().iter().flatten() {
            if !qf.vanishes_on_nullcone(p)? {
                all = false;
                break;
            }
        }
        if all {
            let odd_below = (n >= 4).then(|| if n % 2 == 0 { n - 1 } else { n - 2 });
            return Ok(VanishingOrder {
                order: Some(n),
                odd_below,
            });
        }
    }
    Ok(VanishingOrder {
        order: None,
        odd_below: None,
    })
}

/// `T` with `S = q·T`; the degree drops by two.
pub fn factor_out_q(s: &HomPolyMap) -> Result<HomPolyMap> {
    let qf = QuadForm::new(s.signature());
    let m = s.m();
    let mut out = vec![vec![MultiPoly::zero(m); m]; m];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            match qf.divide(s.entry(i, j))? {
                Some(y) => *cell = y,
                None => return Err(Error::NotDivisible { row: i, col: j }),
            }
        }
    }
    // Divisibility of every entry forces S = 0 when the degree is below 2.
    let d = s.degree().saturating_sub(2);
    HomPolyMap::new(s.signature(), d, out)
}

#[derive(Clone, Debug, Serialize)]
pub struct P0Certificate {
    pub signature: [usize; 2],
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub dimension: usize,
}

impl P0Certificate {
    pub fn passes(&self) -> bool {
        self.dimension == 0
    }
}

/// Linear maps `S(λ) = Σ_k C_k λ_k` subject to self-adjointness and
/// `S(λ)λ = 0`; the solution space must be trivial.
pub fn p0_trivial_certificate(sig: Signature) -> Result<P0Certificate> {
    let m = sig.m();
    if m < 2 {
        return Err(Error::precondition("dimension must be at least 2"));
    }
    let idx = |i: usize, j: usize, k: usize| (i * m + j) * m + k;
    let n = m * m * m;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let unit = |pairs: &[(usize, i64)]| {
        let mut r = vec![Rational::zero(); n];
        for &(c, s) in pairs {
            r[c] += Rational::from_integer(s.into());
        }
        r
    };
    for k in 0..m {
        for i in 0..m {
            for j in i + 1..m {
                rows.push(unit(&[
                    (idx(i, j, k), sig.sign(i)),
                    (idx(j, i, k), -sig.sign(j)),
                ]));
            }
        }
    }
    // (S(λ)λ)_i = Σ_{j,k} c_ijk λ_j λ_k: coefficient of λ_j λ_k.
    for i in 0..m {
        for j in 0..m {
            rows.push(unit(&[(idx(i, j, j), 1)]));
            for k in j + 1..m {
                rows.push(unit(&[(idx(i, j, k), 1), (idx(i, k, j), 1)]));
            }
        }
    }
    let rank = QMatrix::from_rows(rows.clone())?.rank();
    Ok(P0Certificate {
        signature: [sig.p, sig.q],
        unknowns: n,
        equations: rows.len(),
        rank,
        dimension: n - rank,
    })
}

/// Evaluation-level echo of membership: `S(v)` self-adjoint and `S(v)v = 0`
/// at sampled points.
pub fn pointwise_echo(s: &HomPolyMap, samples: usize, seed: u64) -> Result<bool> {
    let sp = InnerSpace::new(s.signature());
    let mut rng = rng_from_seed(seed);
    for _ in 0..samples {
        let v = crate::exactpoly::sample::random_vector(&mut rng, s.m(), 6);
        let sv = s.eval(&v)?;
        if !sp.is_self_adjoint(&sv) || !crate::exactpoly::rational::is_zero_vec(&sv.apply(&v)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nullcone samples at which `S(v)` is nilpotent, for cross-checking.
pub fn nilpotent_at_null_samples(s: &HomPolyMap, count: usize, seed: u64) -> Result<bool> {
    let qf = QuadForm::new(s.signature());
    for v in null_samples(&qf, count, seed)? {
        if !s.eval(&v)?.pow(s.m() as u32).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
