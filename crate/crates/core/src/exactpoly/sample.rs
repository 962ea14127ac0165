use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::{Monomial, MultiPoly};
use super::quadform::{QuadForm, Signature};
use super::rational::{self, Rational};
use crate::error::Result;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational `a/b`, `|a| ≤ max_num`, `1 ≤ b ≤ max_den`.
pub fn small_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let a = rng.gen_range(-max_num..=max_num);
    let b = rng.gen_range(1..=max_den);
    rational::rat(a, b)
}

pub fn small_int<R: Rng>(rng: &mut R, max_abs: i64) -> Rational {
    rational::int(rng.gen_range(-max_abs..=max_abs))
}

pub fn random_vector<R: Rng>(rng: &mut R, m: usize, max_abs: i64) -> Vec<Rational> {
    (0..m).map(|_| small_int(rng, max_abs)).collect()
}

/// One factor of a rational isometry of the model metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// Hyperbolic rotation in the plane of a timelike `i` and spacelike `j`,
    /// `cosh = (1+t²)/(1-t²)`, `sinh = 2t/(1-t²)`.
    Boost {
        i: usize,
        j: usize,
        t: Rational,
    },
    /// Circular rotation in a plane of equal signs,
    /// `cos = (1-t²)/(1+t²)`, `sin = 2t/(1+t²)`.
    Rotation {
        i: usize,
        j: usize,
        t: Rational,
    },
    Reflection {
        i: usize,
    },
}

impl Elementary {
    fn cs(&self) -> (Rational, Rational) {
        let one = Rational::one();
        let two = rational::int(2);
        match self {
            Elementary::Boost { t, .. } => {
                let d = &one - t * t;
                ((&one + t * t) / &d, &two * t / &d)
            }
            Elementary::Rotation { t, .. } => {
                let d = &one + t * t;
                ((&one - t * t) / &d, &two * t / &d)
            }
            Elementary::Reflection { .. } => (one, Rational::zero()),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        match self {
            Elementary::Boost { i, j, .. } => {
                let (c, s) = self.cs();
                out[*i] = &c * &v[*i] + &s * &v[*j];
                out[*j] = &s * &v[*i] + &c * &v[*j];
            }
            Elementary::Rotation { i, j, .. } => {
                let (c, s) = self.cs();
                out[*i] = &c * &v[*i] - &s * &v[*j];
                out[*j] = &s * &v[*i] + &c * &v[*j];
            }
            Elementary::Reflection { i } => out[*i] = -v[*i].clone(),
        }
        out
    }

    /// Dense `m × m` matrix, row-major.
    pub fn matrix(&self, m: usize) -> Vec<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = (0..m)
            .map(|k| {
                let mut e = vec![Rational::zero(); m];
                e[k] = Rational::one();
                self.apply(&e)
            })
            .collect();
        (0..m)
            .map(|r| (0..m).map(|c| cols[c][r].clone()).collect())
            .collect()
    }
}

fn random_parameter<R: Rng>(rng: &mut R, boost: bool) -> Rational {
    loop {
        let t = small_rational(rng, 5, 6);
        if t.is_zero() {
            continue;
        }
        if boost && (&t * &t).is_one() {
            continue;
        }
        return t;
    }
}

/// A random word of `len` elementary isometries valid for `sig`.
pub fn random_isometry_word<R: Rng>(rng: &mut R, sig: Signature, len: usize) -> Vec<Elementary> {
    let (p, m) = (sig.p, sig.m());
    let mut word = Vec::with_capacity(len);
    while word.len() < len {
        let kind = rng.gen_range(0..3);
        match kind {
            0 if p >= 1 && sig.q >= 1 => {
                let i = rng.gen_range(0..p);
                let j = rng.gen_range(p..m);
                word.push(Elementary::Boost {
                    i,
                    j,
                    t: random_parameter(rng, true),
                });
            }
            1 => {
                // same-sign plane
                let timelike = rng.gen_bool(0.5);
                let (lo, hi) = if timelike { (0, p) } else { (p, m) };
                if hi - lo < 2 {
                    continue;
                }
                let i = rng.gen_range(lo..hi);
                let mut j = rng.gen_range(lo..hi - 1);
                if j >= i {
                    j += 1;
                }
                word.push(Elementary::Rotation {
                    i,
                    j,
                    t: random_parameter(rng, false),
                });
            }
            2 => word.push(Elementary::Reflection {
                i: rng.gen_range(0..m),
            }),
            _ => {}
        }
    }
    word
}

/// Dense matrix of the composite isometry (first factor applied first).
pub fn word_matrix(word: &[Elementary], m: usize) -> Vec<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = (0..m)
        .map(|k| {
            let mut e = vec![Rational::zero(); m];
            e[k] = Rational::one();
            word.iter().fold(e, |v, g| g.apply(&v))
        })
        .collect();
    (0..m)
        .map(|r| (0..m).map(|c| cols[c][r].clone()).collect())
        .collect()
}

/// Exact nonzero null vectors, primitive integral, deterministic per seed.
/// Obtained by pushing `e₁ + e_{p+1}` through random rational isometries.
pub fn null_samples(qf: &QuadForm, count: usize, seed: u64) -> Result<Vec<Vec<Rational>>> {
    let sig = qf.signature();
    sig.require_indefinite()?;
    let m = sig.m();
    let mut rng = rng_from_seed(seed);
    let mut base = vec![Rational::zero(); m];
    base[0] = Rational::one();
    base[sig.p] = Rational::one();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let len = rng.gen_range(m..=2 * m + 2);
        let word = random_isometry_word(&mut rng, sig, len);
        let v = word.iter().fold(base.clone(), |v, g| g.apply(&v));
        let v = rational::primitive(&v);
        debug_assert!(qf.eval(&v)?.is_zero());
        out.push(v);
    }
    Ok(out)
}

/// Random homogeneous polynomial of degree `d` with up to `nterms` terms
/// and small integer coefficients.
pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    m: usize,
    d: u32,
    nterms: usize,
    max_coef: i64,
) -> MultiPoly {
    let mut p = MultiPoly::zero(m);
    for _ in 0..nterms {
        let mut e = vec![0u32; m];
        for _ in 0..d {
            e[rng.gen_range(0..m)] += 1;
        }
        p.add_term(Monomial(e), small_int(rng, max_coef));
    }
    p
}

/// Random polynomial with terms of mixed degree `≤ max_deg`.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    m: usize,
    max_deg: u32,
    nterms: usize,
    max_coef: i64,
) -> MultiPoly {
    let mut p = MultiPoly::zero(m);
    for _ in 0..nterms {
        let d = rng.gen_range(0..=max_deg);
        p = &p + &random_homogeneous(rng, m, d, 1, max_coef);
    }
    p
}
