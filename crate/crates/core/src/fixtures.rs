//! Named operator fixtures shared by tests, the CLI and the FFI layer.

use crate::error::Result;
use crate::exactpoly::rational::int;
use crate::exactpoly::{Monomial, MultiPoly, QuadForm, Signature};
use crate::szaboclass::HomPolyMap;

fn mono(c: i64, e: &[u32]) -> MultiPoly {
    MultiPoly::monomial(e.len(), Monomial(e.to_vec()), int(c))
}

/// `[[−λ₁λ₂², λ₁²λ₂], [−λ₁²λ₂, λ₁³]]` in signature (1,1); a member of `P_1`.
pub fn split_plane() -> HomPolyMap {
    let sig = Signature::new(1, 1).unwrap();
    HomPolyMap::new(
        sig,
        3,
        vec![
            vec![mono(-1, &[1, 2]), mono(1, &[2, 1])],
            vec![mono(-1, &[2, 1]), mono(1, &[3, 0])],
        ],
    )
    .unwrap()
}

/// `x ↦ c·⟨x,u⟩·u`.
fn rank_one(sig: Signature, c: &MultiPoly, u: &[MultiPoly]) -> Result<HomPolyMap> {
    let m = sig.m();
    let entries = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (c * &(&u[i] * &u[j])).scale(&sig.sign_q(j)))
                .collect()
        })
        .collect();
    let d = c.degree().unwrap_or(0) + 2 * u.iter().filter_map(MultiPoly::degree).max().unwrap_or(0);
    HomPolyMap::new(sig, d, entries)
}

/// Rank-one member of `P_2` in signature (1,2) that is nilpotent along the
/// nullcone: `u = q·e₃ − ⟨λ,e₃⟩λ`, `c = λ₁`.
pub fn null_rank_one() -> HomPolyMap {
    let sig = Signature::new(1, 2).unwrap();
    let q = QuadForm::new(sig);
    let lam: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(3, i)).collect();
    let u: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let base = if i == 2 {
                q.poly().clone()
            } else {
                MultiPoly::zero(3)
            };
            &base - &(&lam[2] * &lam[i])
        })
        .collect();
    rank_one(sig, &lam[0], &u).unwrap()
}

/// Rank-one member of `P_1` in signature (1,2) with `Tr S = λ₁(λ₂²+λ₃²)`,
/// not nilpotent on the nullcone: `u = (0, −λ₃, λ₂)`, `c = λ₁`.
pub fn generic_rank_one() -> HomPolyMap {
    let sig = Signature::new(1, 2).unwrap();
    let u = vec![
        MultiPoly::zero(3),
        -&MultiPoly::var(3, 2),
        MultiPoly::var(3, 1),
    ];
    rank_one(sig, &MultiPoly::var(3, 0), &u).unwrap()
}

/// `q(λ)ⁿ·L(λ)` in signature (1,2) where `L(λ)` acts on `span{e₁,e₂}` as
/// `[[λ₃, λ₁+λ₂], [λ₂−λ₁, −λ₃]]` and kills `e₃`. `L² = q` there, so the
/// minimal polynomial at every unit timelike vector is `X³ + X`.
/// Odd of degree `2n+1`, but neither self-adjoint nor argument-annihilating.
pub fn clifford_profile(n: u32) -> HomPolyMap {
    let sig = Signature::new(1, 2).unwrap();
    let l = |i| MultiPoly::var(3, i);
    let z = MultiPoly::zero(3);
    let lin = HomPolyMap::new(
        sig,
        1,
        vec![
            vec![l(2), &l(0) + &l(1), z.clone()],
            vec![&l(1) - &l(0), -&l(2), z.clone()],
            vec![z.clone(), z.clone(), z],
        ],
    )
    .unwrap();
    lin.mul_poly(&QuadForm::new(sig).power(n))
}

pub const NAMES: &[&str] = &[
    "split-plane",
    "null-rank-one",
    "generic-rank-one",
    "clifford-profile",
];

pub fn by_name(name: &str) -> Option<HomPolyMap> {
    match name {
        "split-plane" => Some(split_plane()),
        "null-rank-one" => Some(null_rank_one()),
        "generic-rank-one" => Some(generic_rank_one()),
        "clifford-profile" => Some(clifford_profile(1)),
        _ => None,
    }
}
