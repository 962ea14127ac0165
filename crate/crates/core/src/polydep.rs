//! Determinantal ideals of families of vector-valued polynomial maps and
//! their dependence degree over the nullcone.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::rational::Rational;
use crate::exactpoly::{null_samples, MultiPoly, QuadForm, Signature};
use crate::pseudolin::{Echelon, QMatrix};

/// `r` maps `R^m → R^w`, stored as the columns of a `w × r` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMapFamily {
    sig: Signature,
    w: usize,
    maps: Vec<Vec<MultiPoly>>,
}

impl PolyMapFamily {
    pub fn new(sig: Signature, w: usize, maps: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let m = sig.m();
        if maps.len() > w {
            return Err(Error::precondition(format!(
                "{} maps exceed codomain dimension {w}",
                maps.len()
            )));
        }
        for x in &maps {
            if x.len() != w {
                return Err(Error::DimensionMismatch {
                    expected: w,
                    got: x.len(),
                });
            }
            if let Some(p) = x.iter().find(|p| p.nvars() != m) {
                return Err(Error::VarCountMismatch {
                    left: p.nvars(),
                    right: m,
                });
            }
        }
        Ok(PolyMapFamily { sig, w, maps })
    }

    /// Constant maps from rational vectors.
    pub fn constants(sig: Signature, vectors: &[Vec<Rational>]) -> Result<Self> {
        let w = vectors.first().map(Vec::len).unwrap_or(0);
        let m = sig.m();
        Self::new(
            sig,
            w,
            vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|c| MultiPoly::constant(m, c.clone()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn r(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Vec<MultiPoly>] {
        &self.maps
    }

    /// Evaluated `w × r` matrix.
    pub fn eval(&self, v: &[Rational]) -> Result<QMatrix> {
        let cols = self
            .maps
            .iter()
            .map(|x| x.iter().map(|p| p.eval(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_cols(&cols, self.w))
    }

    pub fn with_map(&self, t: usize, x: Vec<MultiPoly>) -> Result<Self> {
        let mut maps = self.maps.clone();
        maps[t] = x;
        Self::new(self.sig, self.w, maps)
    }
}

/// All `r × r` minors, row subsets in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorIdeal {
    pub row_subsets: Vec<Vec<usize>>,
    pub generators: Vec<MultiPoly>,
}

impl MinorIdeal {
    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(MultiPoly::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<(usize, &MultiPoly)> {
        self.generators
            .iter()
            .enumerate()
            .find(|(_, g)| !g.is_zero())
    }
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Minors of the leading `|rows|` columns by Laplace expansion along the
/// last column, memoised on row bitmasks.
struct MinorMemo<'a> {
    cols: &'a [Vec<MultiPoly>],
    nvars: usize,
    memo: HashMap<u64, MultiPoly>,
}

impl MinorMemo<'_> {
    fn minor(&mut self, rows: &[usize]) -> MultiPoly {
        let k = rows.len();
        if k == 0 {
            return MultiPoly::one(self.nvars);
        }
        let mask: u64 = rows.iter().fold(0, |m, &r| m | (1 << r));
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let col = &self.cols[k - 1];
        let mut acc = MultiPoly::zero(self.nvars);
        for (pos, &r) in rows.iter().enumerate() {
            if col[r].is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let sub = self.minor(&rest);
            if sub.is_zero() {
                continue;
            }
            let term = &col[r] * &sub;
            // sign of the (pos, k-1) cofactor
            if (pos + k - 1).is_multiple_of(2) {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

/// Minor on the given rows of the given columns (order of `cols` kept).
pub fn minor_of(columns: &[&Vec<MultiPoly>], rows: &[usize], nvars: usize) -> MultiPoly {
    assert_eq!(columns.len(), rows.len());
    let cols: Vec<Vec<MultiPoly>> = columns.iter().map(|c| (*c).clone()).collect();
    MinorMemo {
        cols: &cols,
        nvars,
        memo: HashMap::new(),
    }
    .minor(rows)
}

pub fn minor_generators(f: &PolyMapFamily) -> Result<MinorIdeal> {
    let (w, r) = (f.w(), f.r());
    if r > w {
        return Err(Error::precondition(format!("r = {r} exceeds w = {w}")));
    }
    if w > 63 {
        return Err(Error::precondition("codomain dimension too large"));
    }
    let mut memo = MinorMemo {
        cols: f.maps(),
        nvars: f.signature().m(),
        memo: HashMap::new(),
    };
    let row_subsets = combinations(w, r);
    let generators = row_subsets.iter().map(|rows| memo.minor(rows)).collect();
    Ok(MinorIdeal {
        row_subsets,
        generators,
    })
}

pub fn is_zero_ideal(i: &MinorIdeal) -> bool {
    i.is_zero()
}

/// `min` over nonzero minors of their `q`-valuation; `None` for the zero ideal.
pub fn dependence_degree(f: &PolyMapFamily) -> Result<Option<u32>> {
    let sig = f.signature();
    sig.require_admissible()?;
    let qf = QuadForm::new(sig);
    let ideal = minor_generators(f)?;
    let mut best: Option<u32> = None;
    for g in &ideal.generators {
        if let Some(k) = qf.valuation(g)? {
            best = Some(best.map_or(k, |b| b.min(k)));
            if best == Some(0) {
                break;
            }
        }
    }
    Ok(best)
}

pub fn nullcone_dependent(f: &PolyMapFamily) -> Result<bool> {
    Ok(match dependence_degree(f)? {
        None => true,
        Some(k) => k >= 1,
    })
}

/// Coefficients with `Σ cᵢ xᵢ = q·y` and `c_unit ∉ (q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceCertificate {
    pub coeffs: Vec<MultiPoly>,
    pub y: Vec<MultiPoly>,
    /// Position whose coefficient is `−M`, a minor not divisible by `q`.
    pub unit_index: usize,
    /// Null point at which the `s` columns in `independent` are independent.
    pub sample: Vec<Rational>,
    pub independent: Vec<usize>,
    pub rows: Vec<usize>,
}

impl DependenceCertificate {
    /// `Σ cᵢ xᵢ = q·y` exactly and `c_unit` not divisible by `q`.
    pub fn verify(&self, f: &PolyMapFamily) -> Result<bool> {
        let qf = QuadForm::new(f.signature());
        if qf.divide(&self.coeffs[self.unit_index])?.is_some() {
            return Ok(false);
        }
        let m = f.signature().m();
        for row in 0..f.w() {
            let mut lhs = MultiPoly::zero(m);
            for (c, x) in self.coeffs.iter().zip(f.maps()) {
                lhs = &lhs + &(c * &x[row]);
            }
            if lhs != qf.poly() * &self.y[row] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

const CERT_SAMPLES: usize = 40;

/// Cramer certificate built at a null point where a maximal subfamily is
/// independent. `sample_seed` selects the null samples searched.
pub fn dependence_certificate(
    f: &PolyMapFamily,
    sample_seed: u64,
) -> Result<DependenceCertificate> {
    let sig = f.signature();
    let k = dependence_degree(f)?;
    match k {
        None => {
            return Err(Error::precondition(
                "ideal is zero: the maps are dependent everywhere",
            ))
        }
        Some(0) => {
            return Err(Error::precondition(
                "dependence degree is 0: no nullcone dependence",
            ))
        }
        _ => {}
    }
    let qf = QuadForm::new(sig);
    let m = sig.m();
    let samples = null_samples(&qf, CERT_SAMPLES, sample_seed)?;
    let mut evals = Vec::with_capacity(samples.len());
    for v in &samples {
        evals.push(f.eval(v)?);
    }
    let ranks: Vec<usize> = evals.iter().map(QMatrix::rank).collect();
    let s_max = *ranks.iter().max().unwrap_or(&0);

    // Samples in seed order that reach the maximal rank; the first is
    // preferred, later ones are fallbacks.
    for (idx, _) in ranks.iter().enumerate().filter(|(_, &r)| r == s_max) {
        let x = &evals[idx];
        let mut ech = Echelon::new();
        let mut independent = Vec::new();
        for j in 0..f.r() {
            if ech.insert(&x.col(j)) {
                independent.push(j);
            }
        }
        let Some(t) = (0..f.r()).find(|j| !independent.contains(j)) else {
            continue;
        };
        let s = independent.len();
        let cols_j: Vec<&Vec<MultiPoly>> = independent.iter().map(|&j| &f.maps()[j]).collect();
        for rows in combinations(f.w(), s) {
            let mmin = minor_of(&cols_j, &rows, m);
            if mmin.eval(&samples[idx])?.is_zero() {
                continue;
            }
            let mut coeffs = vec![MultiPoly::zero(m); f.r()];
            for (pos, &j) in independent.iter().enumerate() {
                let mut replaced = cols_j.clone();
                replaced[pos] = &f.maps()[t];
                coeffs[j] = minor_of(&replaced, &rows, m);
            }
            coeffs[t] = -&mmin;
            let mut y = Vec::with_capacity(f.w());
            let mut ok = true;
            for row in 0..f.w() {
                let mut comb = MultiPoly::zero(m);
                for (c, xcol) in coeffs.iter().zip(f.maps()) {
                    if !c.is_zero() {
                        comb = &comb + &(c * &xcol[row]);
                    }
                }
                match qf.divide(&comb)? {
                    Some(q) => y.push(q),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Ok(DependenceCertificate {
                    coeffs,
                    y,
                    unit_index: t,
                    sample: samples[idx].clone(),
                    independent: independent.clone(),
                    rows,
                });
            }
            // The first nonvanishing minor decides; other row subsets give
            // the same dependency up to a unit multiple.
            break;
        }
    }
    Err(Error::precondition(
        "no null sample yields a q-divisible Cramer combination",
    ))
}

#[derive(Clone, Debug)]
pub struct DescentStep {
    pub before: Option<u32>,
    pub after: Option<u32>,
    pub certificate: DependenceCertificate,
    pub family: PolyMapFamily,
    /// `q·minor(F') = c_unit·minor(F)` held for every row subset.
    pub identity_verified: bool,
}

/// Replace `x_t` by `y = (Σ cᵢ xᵢ)/q` and check the minor identity.
pub fn descent_step(f: &PolyMapFamily, cert: &DependenceCertificate) -> Result<DescentStep> {
    if !cert.verify(f)? {
        return Err(Error::precondition("certificate identity fails"));
    }
    let before = dependence_degree(f)?;
    if matches!(before, Some(0) | None) {
        return Err(Error::precondition("dependence degree must be at least 1"));
    }
    let qf = QuadForm::new(f.signature());
    let g = f.with_map(cert.unit_index, cert.y.clone())?;
    let old = minor_generators(f)?;
    let new = minor_generators(&g)?;
    let c = &cert.coeffs[cert.unit_index];
    let identity_verified = old
        .generators
        .iter()
        .zip(&new.generators)
        .all(|(a, b)| qf.poly() * b == c * a);
    let after = dependence_degree(&g)?;
    Ok(DescentStep {
        before,
        after,
        certificate: cert.clone(),
        family: g,
        identity_verified,
    })
}

#[derive(Clone, Debug)]
pub struct DescentChain {
    pub initial: Option<u32>,
    pub steps: Vec<DescentStep>,
}

impl DescentChain {
    pub fn terminal(&self) -> Option<u32> {
        self.steps.last().map(|s| s.after).unwrap_or(self.initial)
    }

    /// Each step verified and lowered `k` by exactly one.
    pub fn is_sound(&self) -> bool {
        self.steps.iter().all(|s| {
            s.identity_verified && matches!((s.before, s.after), (Some(b), Some(a)) if a + 1 == b)
        })
    }
}

/// Descend until `k = 0` (at most the initial `k` steps).
pub fn descend(f: &PolyMapFamily, sample_seed: u64) -> Result<DescentChain> {
    let initial = dependence_degree(f)?;
    let mut steps = Vec::new();
    let mut cur = f.clone();
    let mut k = initial;
    while let Some(kk) = k {
        if kk == 0 {
            break;
        }
        let cert = dependence_certificate(&cur, sample_seed)?;
        let step = descent_step(&cur, &cert)?;
        k = step.after;
        cur = step.family.clone();
        steps.push(step);
        if steps.len() as u32 > initial.unwrap_or(0) {
            return Err(Error::precondition(
                "descent did not terminate within the initial degree",
            ));
        }
    }
    Ok(DescentChain { initial, steps })
}

/// Rank of the evaluated family at `v`.
pub fn rank_at(f: &PolyMapFamily, v: &[Rational]) -> Result<usize> {
    Ok(f.eval(v)?.rank())
}

#[derive(Clone, Debug, Serialize)]
pub struct DependenceSummary {
    pub k: Option<u32>,
    pub zero_ideal: bool,
    pub nullcone_dependent: bool,
}

/// Maximal rank over `count` null samples.
pub fn max_null_rank(f: &PolyMapFamily, count: usize, seed: u64) -> Result<usize> {
    let qf = QuadForm::new(f.signature());
    let mut best = 0;
    for v in null_samples(&qf, count, seed)? {
        best = best.max(rank_at(f, &v)?);
    }
    Ok(best)
}

/// Unit-vector family `e_1..e_r` in `R^w` (no `λ` dependence).
pub fn standard_family(sig: Signature, w: usize, r: usize) -> Result<PolyMapFamily> {
    let vecs: Vec<Vec<Rational>> = (0..r)
        .map(|i| {
            (0..w)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    PolyMapFamily::constants(sig, &vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig12() -> Signature {
        Signature::new(1, 2).unwrap()
    }

    fn q_family(power: u32, extra: Option<usize>) -> PolyMapFamily {
        let s = sig12();
        let q = QuadForm::new(s);
        let mut top = q.power(power);
        if let Some(i) = extra {
            top = &top * &MultiPoly::var(3, i);
        }
        PolyMapFamily::new(
            s,
            2,
            vec![
                vec![top, MultiPoly::zero(3)],
                vec![MultiPoly::zero(3), MultiPoly::one(3)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn minor_examples() {
        let f = standard_family(sig12(), 2, 2).unwrap();
        let i = minor_generators(&f).unwrap();
        assert_eq!(i.generators, vec![MultiPoly::one(3)]);
        assert_eq!(dependence_degree(&f).unwrap(), Some(0));
        assert!(!nullcone_dependent(&f).unwrap());

        let g = q_family(1, None);
        assert_eq!(
            minor_generators(&g).unwrap().generators,
            vec![QuadForm::new(sig12()).poly().clone()]
        );
        assert_eq!(dependence_degree(&g).unwrap(), Some(1));
        assert!(nullcone_dependent(&g).unwrap());
        assert_eq!(dependence_degree(&q_family(2, Some(2))).unwrap(), Some(2));
    }

    #[test]
    fn repeated_map_gives_zero_ideal() {
        let s = sig12();
        let x = vec![
            MultiPoly::var(3, 0),
            MultiPoly::var(3, 1),
            MultiPoly::one(3),
        ];
        let f = PolyMapFamily::new(s, 3, vec![x.clone(), x]).unwrap();
        assert!(is_zero_ideal(&minor_generators(&f).unwrap()));
        assert_eq!(dependence_degree(&f).unwrap(), None);
        assert!(nullcone_dependent(&f).unwrap());
        assert!(dependence_certificate(&f, 0).is_err());
    }

    #[test]
    fn certificate_and_descent_for_q_column() {
        let f = q_family(1, None);
        let cert = dependence_certificate(&f, 0).unwrap();
        assert!(cert.verify(&f).unwrap());
        assert_eq!(cert.unit_index, 0);
        let step = descent_step(&f, &cert).unwrap();
        assert!(step.identity_verified);
        assert_eq!((step.before, step.after), (Some(1), Some(0)));
        let chain = descend(&q_family(2, Some(2)), 0).unwrap();
        assert_eq!(chain.steps.len(), 2);
        assert!(chain.is_sound());
        assert_eq!(chain.terminal(), Some(0));
    }

    #[test]
    fn certificate_rejects_independent_family() {
        assert!(dependence_certificate(&standard_family(sig12(), 2, 2).unwrap(), 0).is_err());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
