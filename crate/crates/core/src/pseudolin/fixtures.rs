use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{InnerSpace, QMatrix};
use crate::exactpoly::rational::{self, Rational};
use crate::exactpoly::sample::small_rational;

/// Which nilpotency index the generated operator may have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilShape {
    /// Only `A² = 0` blocks.
    SquareZero,
    /// At least one size-3 block when the signature allows it.
    CubeZero,
    /// Either, chosen at random.
    Any,
}

enum Block {
    /// `g → f → e → 0` on one timelike and two spacelike axes.
    ThreeSpacelike { t: usize, s1: usize, s2: usize },
    /// The same with the roles of the signs exchanged.
    ThreeTimelike { t1: usize, t2: usize, s: usize },
    /// `g → e → 0` on a hyperbolic plane.
    Two { t: usize, s: usize },
}

fn unit(m: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    v[i] = Rational::one();
    v
}

fn comb(m: usize, parts: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    for (i, c) in parts {
        v[*i] += c;
    }
    v
}

/// Self-adjoint `A` with `A³ = 0`: orthogonal Jordan blocks of size ≤ 3 on
/// nondegenerate subspaces, scaled, then conjugated by a random isometry.
pub fn cubic_nilpotent<R: Rng>(sp: &InnerSpace, rng: &mut R, shape: NilShape) -> QMatrix {
    let sig = sp.signature();
    let m = sig.m();
    let mut tl: Vec<usize> = (0..sig.p).collect();
    let mut sl: Vec<usize> = (sig.p..m).collect();
    tl.shuffle(rng);
    sl.shuffle(rng);

    let want_three = match shape {
        NilShape::SquareZero => false,
        NilShape::CubeZero => true,
        NilShape::Any => rng.gen_bool(0.6),
    };
    let mut blocks = Vec::new();
    let mut placed_three = false;
    loop {
        let can_a = !tl.is_empty() && sl.len() >= 2;
        let can_b = tl.len() >= 2 && !sl.is_empty();
        let can_two = !tl.is_empty() && !sl.is_empty();
        let three_ok = want_three && (can_a || can_b);
        if !three_ok && !can_two {
            break;
        }
        // Always place one size-3 block first when asked; afterwards mix.
        let pick_three = three_ok && (!placed_three || rng.gen_bool(0.5));
        if pick_three {
            if can_a && (!can_b || rng.gen_bool(0.5)) {
                blocks.push(Block::ThreeSpacelike {
                    t: tl.pop().unwrap(),
                    s1: sl.pop().unwrap(),
                    s2: sl.pop().unwrap(),
                });
            } else {
                blocks.push(Block::ThreeTimelike {
                    t1: tl.pop().unwrap(),
                    t2: tl.pop().unwrap(),
                    s: sl.pop().unwrap(),
                });
            }
            placed_three = true;
        } else if can_two && rng.gen_bool(0.75) {
            blocks.push(Block::Two {
                t: tl.pop().unwrap(),
                s: sl.pop().unwrap(),
            });
        } else {
            break;
        }
    }

    let half = rational::rat(1, 2);
    let mut a = QMatrix::zeros(m, m);
    for b in &blocks {
        let lam = loop {
            let x = small_rational(rng, 4, 3);
            if !x.is_zero() {
                break x;
            }
        };
        // Chains (images listed in order: source → target).
        let chain: Vec<Vec<Rational>> = match *b {
            Block::ThreeSpacelike { t, s1, s2 } => {
                let e = comb(m, &[(t, Rational::one()), (s1, Rational::one())]);
                let f = unit(m, s2);
                let g = comb(m, &[(s1, half.clone()), (t, -half.clone())]);
                vec![g, f, e]
            }
            Block::ThreeTimelike { t1, t2, s } => {
                let e = comb(m, &[(t1, Rational::one()), (s, Rational::one())]);
                let f = unit(m, t2);
                let g = comb(m, &[(t1, half.clone()), (s, -half.clone())]);
                vec![g, f, e]
            }
            Block::Two { t, s } => {
                let e = comb(m, &[(t, Rational::one()), (s, Rational::one())]);
                let g = comb(m, &[(s, half.clone()), (t, -half.clone())]);
                vec![g, e]
            }
        };
        // On the block, A = λ Σ chain[i+1] ⊗ dual(chain[i]), with the dual
        // taken through the block's Gram matrix (antidiagonal).
        let k = chain.len();
        let gram: Vec<Vec<Rational>> = chain
            .iter()
            .map(|x| chain.iter().map(|y| sp.ip(x, y).unwrap()).collect())
            .collect();
        let gram = QMatrix::from_rows(gram).unwrap();
        let ginv = gram.inverse().expect("block is nondegenerate");
        for i in 0..k - 1 {
            // dual functional of chain[i]: x ↦ Σ_j ginv[i][j] (chain[j], x)
            for j in 0..k {
                let c = &ginv[(i, j)] * &lam;
                if c.is_zero() {
                    continue;
                }
                let gy: Vec<Rational> = (0..m).map(|r| sig.sign_q(r) * &chain[j][r]).collect();
                for r in 0..m {
                    if chain[i + 1][r].is_zero() {
                        continue;
                    }
                    for col in 0..m {
                        if !gy[col].is_zero() {
                            a[(r, col)] += &c * &chain[i + 1][r] * &gy[col];
                        }
                    }
                }
            }
        }
    }

    let len = rng.gen_range(m..=2 * m);
    let p = sp.random_isometry(rng, len);
    let pinv = sp.isometry_inverse(&p).expect("generated isometry");
    &(&p * &a) * &pinv
}

/// `P D P⁻¹` with rational `D` containing a zero eigenvalue and possibly
/// repeated ones; always diagonalizable, so Jordan simple.
pub fn random_jordan_simple<R: Rng>(m: usize, rng: &mut R) -> QMatrix {
    let mut d: Vec<Rational> = (0..m).map(|_| small_rational(rng, 6, 2)).collect();
    d[rng.gen_range(0..m)] = Rational::zero();
    let p = loop {
        let rows: Vec<Vec<Rational>> = (0..m)
            .map(|_| {
                (0..m)
                    .map(|_| rational::int(rng.gen_range(-3..=3)))
                    .collect()
            })
            .collect();
        let p = QMatrix::from_rows(rows).unwrap();
        if !p.determinant().is_zero() {
            break p;
        }
    };
    let pinv = p.inverse().unwrap();
    &(&p * &QMatrix::diagonal(&d)) * &pinv
}
