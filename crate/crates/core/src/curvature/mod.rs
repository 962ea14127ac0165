//! Covariant-derivative curvature tensors and the Szabó operator.

pub mod constraints;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::rational::{self, Rational};
use crate::exactpoly::sample::rng_from_seed;
use crate::exactpoly::{Monomial, MultiPoly, Signature};
use crate::pseudolin::{InnerSpace, QMatrix};
use crate::szaboclass::HomPolyMap;

/// `T[x,y,z,w;v]`, all `m⁵` components, indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovDerivTensor {
    sig: Signature,
    data: Vec<Rational>,
}

/// One failed identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: &'static str,
    pub index: [usize; 5],
    #[serde(serialize_with = "ser_rat")]
    pub residual: Rational,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_frac_string(r))
}

impl CovDerivTensor {
    pub fn zero(sig: Signature) -> Self {
        let m = sig.m();
        CovDerivTensor {
            sig,
            data: vec![Rational::zero(); m.pow(5)],
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn m(&self) -> usize {
        self.sig.m()
    }

    fn offset(&self, i: [usize; 5]) -> usize {
        let m = self.m();
        (((i[0] * m + i[1]) * m + i[2]) * m + i[3]) * m + i[4]
    }

    pub fn get(&self, i: [usize; 5]) -> &Rational {
        &self.data[self.offset(i)]
    }

    pub fn set(&mut self, i: [usize; 5], v: Rational) -> Result<()> {
        if i.iter().any(|&k| k >= self.m()) {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: *i.iter().max().unwrap() + 1,
            });
        }
        let o = self.offset(i);
        self.data[o] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero components in lexicographic index order.
    pub fn nonzero_entries(&self) -> Vec<([usize; 5], Rational)> {
        let m = self.m();
        let mut out = Vec::new();
        for (o, v) in self.data.iter().enumerate() {
            if !v.is_zero() {
                let mut idx = [0; 5];
                let mut r = o;
                for k in (0..5).rev() {
                    idx[k] = r % m;
                    r /= m;
                }
                out.push((idx, v.clone()));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CovDerivTensor {
        CovDerivTensor {
            sig: self.sig,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &CovDerivTensor) -> Result<CovDerivTensor> {
        if self.sig != other.sig {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: other.m(),
            });
        }
        Ok(CovDerivTensor {
            sig: self.sig,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Pushforward by an invertible `P`: `T'(x,…) = T(P⁻¹x, …)` in every slot.
    pub fn pushforward(&self, pinv: &QMatrix) -> CovDerivTensor {
        let m = self.m();
        let mut cur = self.data.clone();
        for slot in 0..5 {
            let stride = m.pow(4 - slot as u32);
            let mut next = vec![Rational::zero(); cur.len()];
            for (o, val) in cur.iter().enumerate() {
                if val.is_zero() {
                    continue;
                }
                let j = (o / stride) % m;
                let base = o - j * stride;
                for i in 0..m {
                    let c = &pinv[(j, i)];
                    if !c.is_zero() {
                        next[base + i * stride] += val * c;
                    }
                }
            }
            cur = next;
        }
        CovDerivTensor {
            sig: self.sig,
            data: cur,
        }
    }
}

/// Every instance of the three identities that fails, with the residual.
pub fn check_symmetries(t: &CovDerivTensor) -> Vec<Violation> {
    let m = t.m();
    let mut out = Vec::new();
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                for w in 0..m {
                    for v in 0..m {
                        let a = t.get([x, y, z, w, v]);
                        let r = a - t.get([z, w, x, y, v]);
                        if !r.is_zero() {
                            out.push(Violation {
                                identity: "pair exchange",
                                index: [x, y, z, w, v],
                                residual: r,
                            });
                        }
                        let r = a + t.get([y, x, z, w, v]);
                        if !r.is_zero() {
                            out.push(Violation {
                                identity: "antisymmetry",
                                index: [x, y, z, w, v],
                                residual: r,
                            });
                        }
                        let r = a + t.get([y, z, x, w, v]) + t.get([z, x, y, w, v]);
                        if !r.is_zero() {
                            out.push(Violation {
                                identity: "first Bianchi",
                                index: [x, y, z, w, v],
                                residual: r,
                            });
                        }
                        let r = a + t.get([x, y, w, v, z]) + t.get([x, y, v, z, w]);
                        if !r.is_zero() {
                            out.push(Violation {
                                identity: "second Bianchi",
                                index: [x, y, z, w, v],
                                residual: r,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn require_valid(t: &CovDerivTensor) -> Result<()> {
    let v = check_symmetries(t);
    if let Some(first) = v.first() {
        return Err(Error::SymmetryViolation {
            count: v.len(),
            first: format!("{} at {:?}", first.identity, first.index),
        });
    }
    Ok(())
}

/// Dimension of the solution space of the identities for `sig`.
pub fn solution_dimension(m: usize) -> usize {
    constraints::solution_space(m).dimension()
}

/// Seeded member of the solution space: the nullspace basis combined with
/// small integer coefficients in `[-3, 3]`.
pub fn random_symmetric_tensor(sig: Signature, seed: u64) -> Result<CovDerivTensor> {
    let m = sig.m();
    if m < 2 {
        return Err(Error::precondition("dimension must be at least 2"));
    }
    if m > 6 {
        return Err(Error::precondition(
            "fixture generation is capped at dimension 6",
        ));
    }
    let space = constraints::solution_space(m);
    let mut rng = rng_from_seed(seed);
    let mut reduced = vec![Rational::zero(); space.layout.ncols()];
    loop {
        let coeffs: Vec<i64> = space.basis.iter().map(|_| rng.gen_range(-3..=3)).collect();
        if coeffs.iter().any(|&c| c != 0) || space.basis.is_empty() {
            for (b, &c) in space.basis.iter().zip(&coeffs) {
                if c == 0 {
                    continue;
                }
                let c = rational::int(c);
                for (col, v) in b {
                    reduced[*col] += &c * v;
                }
            }
            break;
        }
    }
    Ok(expand(sig, &space.layout, &reduced))
}

fn expand(sig: Signature, layout: &constraints::Layout, reduced: &[Rational]) -> CovDerivTensor {
    let m = sig.m();
    let mut t = CovDerivTensor::zero(sig);
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                for w in 0..m {
                    for v in 0..m {
                        if let Some((c, s)) = layout.component(x, y, z, w, v) {
                            let val = &reduced[c] * rational::int(s);
                            let o = t.offset([x, y, z, w, v]);
                            t.data[o] = val;
                        }
                    }
                }
            }
        }
    }
    t
}

/// `B[x,y] = T(x,v,v,y;v)` before raising the index.
fn szabo_form(t: &CovDerivTensor, v: &[Rational]) -> QMatrix {
    let m = t.m();
    let mut b = QMatrix::zeros(m, m);
    for x in 0..m {
        for y in 0..m {
            let mut acc = Rational::zero();
            for a in 0..m {
                if v[a].is_zero() {
                    continue;
                }
                for bb in 0..m {
                    if v[bb].is_zero() {
                        continue;
                    }
                    for c in 0..m {
                        let e = t.get([x, a, bb, y, c]);
                        if !e.is_zero() && !v[c].is_zero() {
                            acc += e * &v[a] * &v[bb] * &v[c];
                        }
                    }
                }
            }
            b[(x, y)] = acc;
        }
    }
    b
}

/// `S(v)` with `(S(v)x, y) = T(x,v,v,y;v)`, i.e. `M = G·B`.
pub fn szabo_at(t: &CovDerivTensor, v: &[Rational]) -> Result<QMatrix> {
    if v.len() != t.m() {
        return Err(Error::DimensionMismatch {
            expected: t.m(),
            got: v.len(),
        });
    }
    require_valid(t)?;
    Ok(szabo_at_unchecked(t, v))
}

pub(crate) fn szabo_at_unchecked(t: &CovDerivTensor, v: &[Rational]) -> QMatrix {
    let g = InnerSpace::new(t.signature()).metric();
    &g * &szabo_form(t, v)
}

/// Cubic polynomial map `λ ↦ S(λ)`.
pub fn szabo_polymap(t: &CovDerivTensor) -> Result<HomPolyMap> {
    require_valid(t)?;
    Ok(szabo_polymap_unchecked(t))
}

pub(crate) fn szabo_polymap_unchecked(t: &CovDerivTensor) -> HomPolyMap {
    let m = t.m();
    let sig = t.signature();
    let mut entries = vec![vec![MultiPoly::zero(m); m]; m];
    for (x, row) in entries.iter_mut().enumerate() {
        let g = sig.sign_q(x);
        for (y, cell) in row.iter_mut().enumerate() {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        let e = t.get([x, a, b, y, c]);
                        if e.is_zero() {
                            continue;
                        }
                        let mut exp = vec![0u32; m];
                        exp[a] += 1;
                        exp[b] += 1;
                        exp[c] += 1;
                        cell.add_term(Monomial(exp), e * &g);
                    }
                }
            }
        }
    }
    HomPolyMap::new(sig, 3, entries).expect("cubic by construction")
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm2Report {
    pub szabo_vanishes: bool,
    pub tensor_vanishes: bool,
}

impl Thm2Report {
    pub fn equivalence_holds(&self) -> bool {
        self.szabo_vanishes == self.tensor_vanishes
    }
}

pub fn thm2_check(t: &CovDerivTensor) -> Result<Thm2Report> {
    let s = szabo_polymap(t)?;
    Ok(Thm2Report {
        szabo_vanishes: s.is_zero(),
        tensor_vanishes: t.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rational::int;
    use crate::szaboclass::pclass_check;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn zero_tensor() {
        let t = CovDerivTensor::zero(sig(1, 2));
        assert!(check_symmetries(&t).is_empty());
        assert!(szabo_at(&t, &[int(1), int(2), int(3)]).unwrap().is_zero());
        assert!(szabo_polymap(&t).unwrap().is_zero());
        let r = thm2_check(&t).unwrap();
        assert!(r.szabo_vanishes && r.tensor_vanishes);
    }

    #[test]
    fn single_entry_breaks_pair_symmetry() {
        let mut t = CovDerivTensor::zero(sig(2, 1));
        t.set([0, 1, 0, 1, 0], int(1)).unwrap();
        let v = check_symmetries(&t);
        assert!(v
            .iter()
            .any(|x| x.identity == "antisymmetry" && x.index == [0, 1, 0, 1, 0]));
        assert!(szabo_at(&t, &[int(1), int(0), int(0)]).is_err());
    }

    #[test]
    fn fixtures_are_valid_and_deterministic() {
        for (p, q) in [(1, 1), (1, 2), (2, 2)] {
            let t = random_symmetric_tensor(sig(p, q), 3).unwrap();
            assert!(check_symmetries(&t).is_empty());
            assert_eq!(t, random_symmetric_tensor(sig(p, q), 3).unwrap());
        }
        let a = random_symmetric_tensor(sig(2, 2), 1).unwrap();
        let b = random_symmetric_tensor(sig(2, 2), 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn szabo_operator_properties() {
        let t = random_symmetric_tensor(sig(1, 3), 17).unwrap();
        let sp = InnerSpace::new(t.signature());
        let v = vec![int(1), int(-2), int(3), int(1)];
        let s = szabo_at(&t, &v).unwrap();
        assert!(sp.is_self_adjoint(&s));
        assert!(rational::is_zero_vec(&s.apply(&v).unwrap()));
        let v2: Vec<Rational> = v.iter().map(|x| x * int(2)).collect();
        assert_eq!(szabo_at(&t, &v2).unwrap(), s.scale(&int(8)));
        let map = szabo_polymap(&t).unwrap();
        assert_eq!(map.eval(&v).unwrap(), s);
        assert!(pclass_check(&map).is_member());
    }
}
