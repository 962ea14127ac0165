use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::z2::Z2TruncPoly;
use crate::error::{Error, Result};

/// Number of `s` in `1..=n` with `s ≡ 0, 1, 2, 4 (mod 8)`.
pub fn phi(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::precondition("phi needs n >= 1"));
    }
    let full = n / 8;
    let rest = n % 8;
    let partial = [1u64, 2, 4].iter().filter(|&&s| s <= rest).count() as u64;
    Ok(4 * full + partial)
}

/// Order `2^φ(n)` of the reduced KO-group of `RP^n`.
pub fn ko_order(n: u64) -> Result<BigUint> {
    Ok(BigUint::one() << phi(n)?)
}

/// `j` with `2^j ≤ n < 2^{j+1}`.
pub fn floor_log2(n: u64) -> u32 {
    63 - n.leading_zeros()
}

/// Least `K` with `2^K ≥ n`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiBounds {
    pub n: u64,
    pub phi: u64,
    /// `(n−1)/2 ≤ φ(n) ≤ (n+2)/2`.
    pub sandwich: bool,
    pub j: u32,
    /// `φ(n) ≥ j+3`, checked for `n ≥ 10`.
    pub log_bound: Option<bool>,
    /// `2^φ(n) > n+1`.
    pub exceeds: bool,
    /// `exceeds` fails exactly for `n ∈ {1, 3, 7}`.
    pub exceptions_match: bool,
}

impl PhiBounds {
    pub fn passes(&self) -> bool {
        self.sandwich && self.log_bound.unwrap_or(true) && self.exceptions_match
    }
}

pub fn phi_bounds_check(n: u64) -> Result<PhiBounds> {
    let f = phi(n)?;
    // (n−1)/2 ≤ φ ≤ (n+2)/2 without fractions
    let sandwich = n - 1 <= 2 * f && 2 * f <= n + 2;
    let j = floor_log2(n);
    let log_bound = (n >= 10).then_some(f >= j as u64 + 3);
    let exceeds = ko_order(n)? > BigUint::from(n + 1);
    let exceptions_match = exceeds != matches!(n, 1 | 3 | 7);
    Ok(PhiBounds {
        n,
        phi: f,
        sandwich,
        j,
        log_bound,
        exceeds,
        exceptions_match,
    })
}

/// Residues `a mod 2^φ(n)` with `2a ≡ r`; empty for odd `r`.
pub fn lema5_solve(r: u64, n: u64) -> Result<Vec<BigUint>> {
    let order = ko_order(n)?;
    if r % 2 == 1 {
        return Ok(Vec::new());
    }
    let half = BigUint::from(r / 2) % &order;
    let shift = &order >> 1u32;
    let mut out = vec![half.clone(), (&half + &shift) % &order];
    out.sort();
    out.dedup();
    Ok(out)
}

/// Degree dichotomy for a sub-bundle `V` of the trivial bundle of rank
/// `n+1` over `RP^n` with total Stiefel–Whitney class `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Dichotomy {
    TrivialClass,
    DegreeEqualsRank { complement: String },
    Contradiction { reason: String },
}

impl Dichotomy {
    pub fn label(&self) -> String {
        match self {
            Dichotomy::TrivialClass => "trivial class".into(),
            Dichotomy::DegreeEqualsRank { complement } => {
                format!("degree = rank; complement class {complement}")
            }
            Dichotomy::Contradiction { reason } => format!("contradiction: {reason}"),
        }
    }
}

pub fn subb_dichotomy(p: &Z2TruncPoly, r: u64, n: u64) -> Result<Dichotomy> {
    if r > n + 1 {
        return Err(Error::precondition(format!(
            "rank {r} exceeds n+1 = {}",
            n + 1
        )));
    }
    if p.n() as u64 != n {
        return Err(Error::TruncationMismatch {
            left: p.n(),
            right: n as usize,
        });
    }
    if p.is_one() {
        return Ok(Dichotomy::TrivialClass);
    }
    let Some(inv) = p.inverse() else {
        return Ok(Dichotomy::Contradiction {
            reason: "constant term of w is 0".into(),
        });
    };
    let dp = p.degree().unwrap_or(0) as u64;
    if dp > r {
        return Ok(Dichotomy::Contradiction {
            reason: format!("deg w = {dp} exceeds rank {r}"),
        });
    }
    let di = inv.degree().unwrap_or(0) as u64;
    if di > n + 1 - r {
        return Ok(Dichotomy::Contradiction {
            reason: format!(
                "complement class has degree {di} > complement rank {}",
                n + 1 - r
            ),
        });
    }
    // deg p ≤ r and deg p⁻¹ ≤ n+1−r: the untruncated product is 1 + x^{n+1}
    let prod = Z2TruncPoly::untruncated_product(p.coeffs(), inv.coeffs());
    let expected: Vec<bool> = (0..=n + 1).map(|i| i == 0 || i == n + 1).collect();
    if prod != expected || dp != r {
        return Ok(Dichotomy::Contradiction {
            reason: format!("0 < deg w = {dp} < rank {r}"),
        });
    }
    Ok(Dichotomy::DegreeEqualsRank {
        complement: inv.to_string(),
    })
}

pub fn is_zero_residue(a: &BigUint) -> bool {
    a.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::z2::z2_pow_one_plus_x;

    #[test]
    fn phi_values() {
        assert_eq!(phi(1).unwrap(), 1);
        assert_eq!(phi(8).unwrap(), 4);
        assert_eq!(phi(10).unwrap(), 6);
        assert_eq!(phi(13).unwrap(), 7);
        assert!(phi(0).is_err());
    }

    #[test]
    fn bounds_examples() {
        let b = phi_bounds_check(10).unwrap();
        assert_eq!((b.j, b.phi, b.log_bound), (3, 6, Some(true)));
        let b = phi_bounds_check(7).unwrap();
        assert!(!b.exceeds && b.exceptions_match);
        assert!(phi_bounds_check(13).unwrap().passes());
    }

    #[test]
    fn halving() {
        assert!(lema5_solve(3, 5).unwrap().is_empty());
        assert_eq!(
            lema5_solve(4, 4).unwrap(),
            vec![BigUint::from(2u32), BigUint::from(6u32)]
        );
        let o = ko_order(6).unwrap();
        assert_eq!(lema5_solve(0, 6).unwrap(), vec![BigUint::zero(), o >> 1u32]);
    }

    #[test]
    fn dichotomy_cases() {
        assert_eq!(
            subb_dichotomy(&Z2TruncPoly::one(5), 3, 5).unwrap(),
            Dichotomy::TrivialClass
        );
        let d = subb_dichotomy(&z2_pow_one_plus_x(3, 7), 3, 7).unwrap();
        assert_eq!(
            d,
            Dichotomy::DegreeEqualsRank {
                complement: z2_pow_one_plus_x(5, 7).to_string()
            }
        );
        let d = subb_dichotomy(&Z2TruncPoly::from_exponents(6, &[0, 2]), 4, 6).unwrap();
        assert!(matches!(d, Dichotomy::Contradiction { .. }));
        assert!(subb_dichotomy(&Z2TruncPoly::one(3), 5, 3).is_err());
    }

    #[test]
    fn log2_helpers() {
        assert_eq!(floor_log2(10), 3);
        assert_eq!(floor_log2(16), 4);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(1), 0);
    }
}
