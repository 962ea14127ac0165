use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `Z₂[x]/(x^{n+1})`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Z2TruncPoly {
    n: usize,
    coeffs: Vec<bool>,
}

impl Z2TruncPoly {
    /// Coefficients beyond `x^n` are dropped.
    pub fn new(n: usize, mut coeffs: Vec<bool>) -> Self {
        coeffs.resize(n + 1, false);
        Z2TruncPoly { n, coeffs }
    }

    pub fn from_exponents(n: usize, exps: &[usize]) -> Self {
        let mut c = vec![false; n + 1];
        for &e in exps {
            if e <= n {
                c[e] ^= true;
            }
        }
        Z2TruncPoly { n, coeffs: c }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, vec![])
    }

    pub fn one(n: usize) -> Self {
        Self::new(n, vec![true])
    }

    pub fn x(n: usize) -> Self {
        Self::new(n, vec![false, true])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[bool] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.coeffs.get(i).copied().unwrap_or(false)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] && self.coeffs[1..].iter().all(|b| !b)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&b| b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Z2TruncPoly {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut c = vec![false; self.n + 1];
        for (i, _) in self.coeffs.iter().enumerate().filter(|e| *e.1) {
            for (j, _) in other
                .coeffs
                .iter()
                .enumerate()
                .take(self.n + 1 - i)
                .filter(|e| *e.1)
            {
                c[i + j] ^= true;
            }
        }
        Ok(Z2TruncPoly {
            n: self.n,
            coeffs: c,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Inverse series, when the constant term is 1.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        // b₀ = 1, b_k = Σ_{i=1..k} a_i b_{k−i}
        let mut b = vec![false; self.n + 1];
        b[0] = true;
        for k in 1..=self.n {
            let mut s = false;
            for i in 1..=k {
                s ^= self.coeffs[i] && b[k - i];
            }
            b[k] = s;
        }
        Some(Z2TruncPoly {
            n: self.n,
            coeffs: b,
        })
    }

    /// Product in `Z₂[x]` without truncation.
    pub fn untruncated_product(a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut c = vec![false; a.len() + b.len()];
        for (i, _) in a.iter().enumerate().filter(|e| *e.1) {
            for (j, _) in b.iter().enumerate().filter(|e| *e.1) {
                c[i + j] ^= true;
            }
        }
        while c.last() == Some(&false) {
            c.pop();
        }
        c
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::TruncationMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// Parity of `C(r, i)` (Lucas): odd iff the bits of `i` are a subset of those of `r`.
pub fn binomial_parity(r: u64, i: u64) -> bool {
    i <= r && (i & r) == i
}

pub fn z2_mul(a: &Z2TruncPoly, b: &Z2TruncPoly) -> Result<Z2TruncPoly> {
    a.mul(b)
}

/// `(1+x)^r` truncated at `x^n`.
pub fn z2_pow_one_plus_x(r: u64, n: usize) -> Z2TruncPoly {
    Z2TruncPoly::new(n, (0..=n as u64).map(|i| binomial_parity(r, i)).collect())
}

impl fmt::Display for Z2TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|e| *e.1)
            .map(|(i, _)| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for Z2TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod x^{})", self.n + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_one_plus_x() {
        assert_eq!(
            z2_pow_one_plus_x(2, 10),
            Z2TruncPoly::from_exponents(10, &[0, 2])
        );
        assert_eq!(
            z2_pow_one_plus_x(4, 10),
            Z2TruncPoly::from_exponents(10, &[0, 4])
        );
        assert_eq!(
            z2_pow_one_plus_x(3, 2),
            Z2TruncPoly::from_exponents(2, &[0, 1, 2])
        );
        let one_plus_x = Z2TruncPoly::from_exponents(6, &[0, 1]);
        assert_eq!(one_plus_x.pow(5), z2_pow_one_plus_x(5, 6));
    }

    #[test]
    fn inverse_and_mismatch() {
        let p = z2_pow_one_plus_x(3, 7);
        let inv = p.inverse().unwrap();
        assert_eq!(inv, z2_pow_one_plus_x(5, 7));
        assert!(p.mul(&inv).unwrap().is_one());
        assert!(Z2TruncPoly::x(3).inverse().is_none());
        assert!(matches!(
            Z2TruncPoly::one(2).mul(&Z2TruncPoly::one(3)),
            Err(Error::TruncationMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn display() {
        assert_eq!(z2_pow_one_plus_x(3, 2).to_string(), "1 + x + x^2");
        assert_eq!(Z2TruncPoly::zero(4).to_string(), "0");
    }
}
