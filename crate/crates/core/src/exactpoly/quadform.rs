use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, MultiPoly};
use super::rational::Rational;
use crate::error::{Error, Result};

/// `(p, q)`: `p` timelike (negative) directions followed by `q` spacelike ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidSignature {
                p,
                q,
                reason: "dimension must be at least 1".into(),
            });
        }
        Ok(Signature { p, q })
    }

    pub fn m(&self) -> usize {
        self.p + self.q
    }

    /// Diagonal metric entry: `-1` for the first `p` slots, `+1` after.
    pub fn sign(&self, i: usize) -> i64 {
        if i < self.p {
            -1
        } else {
            1
        }
    }

    pub fn sign_q(&self, i: usize) -> Rational {
        Rational::from_integer(self.sign(i).into())
    }

    pub fn is_indefinite(&self) -> bool {
        self.p >= 1 && self.q >= 1
    }

    /// `p, q >= 1` and `m >= 3`: the form is irreducible over `C` and its
    /// nullcone is Zariski dense in the complex quadric, so "vanishes on the
    /// nullcone" and "divisible by q" coincide.
    pub fn require_admissible(&self) -> Result<()> {
        let reason = if !self.is_indefinite() {
            "definite signature has trivial nullcone"
        } else if self.m() < 3 {
            "q is reducible in dimension 2"
        } else {
            return Ok(());
        };
        Err(Error::InadmissibleSignature {
            p: self.p,
            q: self.q,
            reason: reason.into(),
        })
    }

    pub fn require_indefinite(&self) -> Result<()> {
        if self.is_indefinite() {
            Ok(())
        } else {
            Err(Error::InadmissibleSignature {
                p: self.p,
                q: self.q,
                reason: "definite signature has trivial nullcone".into(),
            })
        }
    }
}

impl TryFrom<[usize; 2]> for Signature {
    type Error = Error;
    fn try_from(a: [usize; 2]) -> Result<Self> {
        Signature::new(a[0], a[1])
    }
}

impl From<Signature> for [usize; 2] {
    fn from(s: Signature) -> Self {
        [s.p, s.q]
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl std::str::FromStr for Signature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("signature must look like p,q: {s:?}")))?;
        let p = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad p in {s:?}")))?;
        let q = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad q in {s:?}")))?;
        Signature::new(p, q)
    }
}

/// `q(λ) = -λ₁² - … - λ_p² + λ_{p+1}² + … + λ_m²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    sig: Signature,
    poly: MultiPoly,
}

impl QuadForm {
    pub fn new(sig: Signature) -> Self {
        let m = sig.m();
        let mut poly = MultiPoly::zero(m);
        for i in 0..m {
            let mut e = vec![0; m];
            e[i] = 2;
            poly.add_term(Monomial(e), sig.sign_q(i));
        }
        QuadForm { sig, poly }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn eval(&self, v: &[Rational]) -> Result<Rational> {
        self.poly.eval(v)
    }

    /// `qᵏ`.
    pub fn power(&self, k: u32) -> MultiPoly {
        self.poly.pow(k)
    }

    /// Pivot variable for the division: the last coordinate when `q ≥ 1`
    /// (coefficient `+1`), else the first (coefficient `-1`).
    fn pivot(&self) -> (usize, Rational) {
        if self.sig.q >= 1 {
            (self.sig.m() - 1, Rational::one())
        } else {
            (0, -Rational::one())
        }
    }

    /// Exact quotient `y` with `p = q·y`, or `None` when `q ∤ p`.
    pub fn divide(&self, p: &MultiPoly) -> Result<Option<MultiPoly>> {
        if p.nvars() != self.sig.m() {
            return Err(Error::VarCountMismatch {
                left: p.nvars(),
                right: self.sig.m(),
            });
        }
        let (k, lead) = self.pivot();
        let lead_inv = lead.recip();
        // q = lead·λ_k² + rest
        let mut rest = self.poly.clone();
        let mut e = vec![0; self.sig.m()];
        e[k] = 2;
        rest.add_term(Monomial(e), -lead.clone());

        let mut rem = p.clone();
        let mut quot = MultiPoly::zero(p.nvars());
        loop {
            let d = rem.degree_in(k);
            if d < 2 {
                break;
            }
            // Every term of top λ_k-degree d: a·λ_k^d  →  quotient term a·λ_k^(d-2)/lead.
            let mut t = MultiPoly::zero(p.nvars());
            for (mono, c) in rem.terms() {
                if mono.0[k] == d {
                    let mut e = mono.0.clone();
                    e[k] -= 2;
                    t.add_term(Monomial(e), c * &lead_inv);
                }
            }
            // rem -= t·q; the λ_k^d part cancels exactly against t·lead·λ_k².
            let mut shifted = MultiPoly::zero(p.nvars());
            for (mono, c) in t.terms() {
                let mut e = mono.0.clone();
                e[k] += 2;
                shifted.add_term(Monomial(e), c * &lead);
            }
            rem = &(&rem - &shifted) - &(&t * &rest);
            quot = &quot + &t;
        }
        Ok(if rem.is_zero() { Some(quot) } else { None })
    }

    /// Largest `k` with `qᵏ | p`; `None` encodes `∞` (the zero polynomial).
    pub fn valuation(&self, p: &MultiPoly) -> Result<Option<u32>> {
        if p.nvars() != self.sig.m() {
            return Err(Error::VarCountMismatch {
                left: p.nvars(),
                right: self.sig.m(),
            });
        }
        if p.is_zero() {
            return Ok(None);
        }
        let mut k = 0;
        let mut cur = p.clone();
        while let Some(y) = self.divide(&cur)? {
            cur = y;
            k += 1;
        }
        Ok(Some(k))
    }

    pub fn vanishes_on_nullcone(&self, p: &MultiPoly) -> Result<bool> {
        self.sig.require_admissible()?;
        Ok(self.divide(p)?.is_some())
    }

    pub fn is_null(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.eval(v)?.is_zero())
    }
}

/// `q_valuation` with `u32::MAX` standing in for `∞` is sometimes handier.
pub fn valuation_or_max(v: Option<u32>) -> u32 {
    v.unwrap_or(u32::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rational::int;

    fn qf(p: usize, q: usize) -> QuadForm {
        QuadForm::new(Signature::new(p, q).unwrap())
    }

    #[test]
    fn form_shape() {
        let f = qf(1, 1);
        assert_eq!(format!("{}", f.poly()), "-l1^2 + l2^2");
        assert_eq!(f.poly().homogeneous_components().len(), 1);
    }

    #[test]
    fn division_examples() {
        let f = qf(1, 2);
        let l3 = MultiPoly::var(3, 2);
        assert_eq!(f.divide(&(f.poly() * &l3)).unwrap(), Some(l3.clone()));
        assert_eq!(f.divide(&MultiPoly::var(3, 1).pow(2)).unwrap(), None);
        assert_eq!(f.divide(&f.power(2)).unwrap(), Some(f.poly().clone()));
    }

    #[test]
    fn negative_definite_uses_first_variable() {
        let f = qf(3, 0);
        let y = &MultiPoly::var(3, 1) * &MultiPoly::var(3, 2);
        assert_eq!(f.divide(&(f.poly() * &y)).unwrap(), Some(y));
    }

    #[test]
    fn valuations() {
        let f = qf(1, 2);
        let l1 = MultiPoly::var(3, 0);
        assert_eq!(f.valuation(&(&f.power(3) * &l1)).unwrap(), Some(3));
        assert_eq!(f.valuation(&l1).unwrap(), Some(0));
        assert_eq!(f.valuation(&MultiPoly::zero(3)).unwrap(), None);
    }

    #[test]
    fn nullcone_admissibility() {
        let f = qf(1, 2);
        assert!(f.vanishes_on_nullcone(f.poly()).unwrap());
        assert!(!f.vanishes_on_nullcone(&MultiPoly::var(3, 0)).unwrap());
        assert!(qf(1, 1)
            .vanishes_on_nullcone(&MultiPoly::var(2, 0))
            .is_err());
        assert!(qf(0, 3)
            .vanishes_on_nullcone(&MultiPoly::var(3, 0))
            .is_err());
        assert!(f.is_null(&[int(5), int(3), int(4)]).unwrap());
    }

    #[test]
    fn signature_parsing() {
        assert_eq!(
            "2,3".parse::<Signature>().unwrap(),
            Signature { p: 2, q: 3 }
        );
        assert_eq!(
            "(1, 1)".parse::<Signature>().unwrap(),
            Signature { p: 1, q: 1 }
        );
        assert!("0,0".parse::<Signature>().is_err());
        assert!("2".parse::<Signature>().is_err());
    }
}
