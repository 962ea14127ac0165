//! Library results against independent brute-force computations.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use szabo_core::curvature::{
    check_symmetries, random_symmetric_tensor, solution_dimension, szabo_at, szabo_polymap,
};
use szabo_core::exactpoly::rational::int;
use szabo_core::exactpoly::sample::{random_poly, random_vector, rng_from_seed};
use szabo_core::exactpoly::{null_samples, MultiPoly, QuadForm};
use szabo_core::obstruction::{ko_order, phi, subb_dichotomy, Dichotomy, Z2TruncPoly};
use szabo_core::polydep::{minor_generators, minor_of, nullcone_dependent, rank_at, PolyMapFamily};
use szabo_core::{QMatrix, Rational, Signature};

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

/// Every instance of every identity as a dense row over the `m⁵` entries.
fn dense_symmetry_rank(m: usize) -> usize {
    let n = m.pow(5);
    let at = |i: [usize; 5]| i.iter().fold(0, |acc, &x| acc * m + x);
    let mut rows = Vec::new();
    let mut push = |terms: &[([usize; 5], i64)]| {
        let mut r = vec![Rational::zero(); n];
        for (i, c) in terms {
            r[at(*i)] += int(*c);
        }
        if r.iter().any(|c| !c.is_zero()) {
            rows.push(r);
        }
    };
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                for w in 0..m {
                    for v in 0..m {
                        push(&[([x, y, z, w, v], 1), ([z, w, x, y, v], -1)]);
                        push(&[([x, y, z, w, v], 1), ([y, x, z, w, v], 1)]);
                        push(&[
                            ([x, y, z, w, v], 1),
                            ([y, z, x, w, v], 1),
                            ([z, x, y, w, v], 1),
                        ]);
                        push(&[
                            ([x, y, z, w, v], 1),
                            ([x, y, w, v, z], 1),
                            ([x, y, v, z, w], 1),
                        ]);
                    }
                }
            }
        }
    }
    n - QMatrix::from_rows(rows).unwrap().rank()
}

#[test]
fn solution_dimension_matches_dense_system() {
    for m in 2..=3 {
        let dense = dense_symmetry_rank(m);
        assert_eq!(solution_dimension(m), dense, "m = {m}");
        assert_eq!(dense, m * m * (m * m - 1) * (m + 2) / 24);
    }
}

#[test]
fn szabo_operator_from_definition() {
    for (p, q) in [(1, 2), (2, 2)] {
        let s = sig(p, q);
        let m = s.m();
        let t = random_symmetric_tensor(s, 11).unwrap();
        let poly = szabo_polymap(&t).unwrap();
        let mut rng = rng_from_seed(3);
        for _ in 0..4 {
            let v = random_vector(&mut rng, m, 4);
            let a = szabo_at(&t, &v).unwrap();
            // g(S(v)e_j, e_i) = T(e_j, v, v, e_i; v)
            for i in 0..m {
                for j in 0..m {
                    let mut form = Rational::zero();
                    for x in 0..m {
                        for y in 0..m {
                            for z in 0..m {
                                form += t.get([j, x, y, i, z]) * &v[x] * &v[y] * &v[z];
                            }
                        }
                    }
                    assert_eq!(int(s.sign(i)) * &a[(i, j)], form, "entry ({i},{j})");
                }
            }
            assert_eq!(poly.eval(&v).unwrap(), a);
            let v2: Vec<Rational> = v.iter().map(|c| c * int(2)).collect();
            assert_eq!(szabo_at(&t, &v2).unwrap(), a.scale(&int(8)));
        }
    }
}

#[test]
fn corrupted_tensor_is_caught() {
    let t = random_symmetric_tensor(sig(1, 2), 5).unwrap();
    let (idx, c) = t.nonzero_entries()[0].clone();
    let mut bad = t.clone();
    bad.set(idx, c + int(1)).unwrap();
    let v = check_symmetries(&bad);
    assert!(!v.is_empty());
    assert!(v.iter().any(|w| w.index == idx));
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // moving the new element from the end to `pos` is (len - pos) swaps
            out.push((q, even == ((p.len() - pos) % 2 == 0)));
        }
    }
    out
}

#[test]
fn minors_match_leibniz() {
    let m = 3;
    let mut rng = rng_from_seed(21);
    for k in 1..=4 {
        let cols: Vec<Vec<MultiPoly>> = (0..k)
            .map(|_| (0..5).map(|_| random_poly(&mut rng, m, 2, 3, 4)).collect())
            .collect();
        let refs: Vec<&Vec<MultiPoly>> = cols.iter().collect();
        let rows: Vec<usize> = (0..k)
            .map(|i| (i * 2) % 5)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        if rows.len() != k {
            continue;
        }
        let mut det = MultiPoly::zero(m);
        for (perm, even) in permutations(k) {
            let mut term = MultiPoly::one(m);
            for (c, &r) in perm.iter().enumerate() {
                term = term.checked_mul(&cols[c][rows[r]]).unwrap();
            }
            det = if even { &det + &term } else { &det - &term };
        }
        assert_eq!(minor_of(&refs, &rows, m), det, "k = {k}");
    }
}

#[test]
fn null_samples_are_null_and_distinct() {
    for (p, q) in [(1, 2), (2, 3), (3, 3)] {
        let qf = QuadForm::new(sig(p, q));
        let s = null_samples(&qf, 30, 4).unwrap();
        for v in &s {
            assert!(qf.eval(v).unwrap().is_zero());
            assert!(v.iter().any(|c| !c.is_zero()));
        }
        assert_eq!(s, null_samples(&qf, 30, 4).unwrap());
    }
}

#[test]
fn ko_order_is_power_of_two_of_count() {
    let mut count = 0u32;
    for n in 1..=200u64 {
        count += matches!(n % 8, 0 | 1 | 2 | 4) as u32;
        assert_eq!(phi(n).unwrap(), count as u64);
        let mut two = BigUint::one();
        for _ in 0..count {
            two *= 2u32;
        }
        assert_eq!(ko_order(n).unwrap(), two);
    }
}

fn all_polys(n: usize, max_deg: usize) -> Vec<Z2TruncPoly> {
    let bits = max_deg.min(n) + 1;
    (0..1u32 << bits)
        .map(|mask| Z2TruncPoly::new(n, (0..=n).map(|i| i < bits && mask >> i & 1 == 1).collect()))
        .collect()
}

/// A class `p` of a rank `r` sub-bundle of the trivial rank `n+1` bundle
/// needs a complement class `b` with `deg b ≤ n+1−r` and `p·b = 1`.
#[test]
fn dichotomy_matches_complement_search() {
    for n in 1..=6usize {
        for r in 0..=n as u64 + 1 {
            for p in all_polys(n, r as usize) {
                if !p.coeff(0) {
                    continue;
                }
                let exists = all_polys(n, n + 1 - r as usize)
                    .iter()
                    .any(|b| p.mul(b).unwrap().is_one());
                let d = subb_dichotomy(&p, r, n as u64).unwrap();
                assert_eq!(
                    !matches!(d, Dichotomy::Contradiction { .. }),
                    exists,
                    "n={n} r={r} p={p}"
                );
                if exists {
                    assert!(
                        p.is_one() || p.degree() == Some(r as usize),
                        "n={n} r={r} p={p}"
                    );
                }
            }
        }
    }
}

fn small_family(seed: u64, s: Signature, dependent_on_nullcone: bool) -> PolyMapFamily {
    let m = s.m();
    let mut rng = rng_from_seed(seed);
    let qf = QuadForm::new(s);
    let a: Vec<MultiPoly> = (0..3).map(|_| random_poly(&mut rng, m, 1, 2, 3)).collect();
    let c = random_poly(&mut rng, m, 1, 2, 3);
    let b: Vec<MultiPoly> = a
        .iter()
        .map(|x| {
            let tail = if dependent_on_nullcone {
                qf.poly()
                    .checked_mul(&random_poly(&mut rng, m, 1, 2, 3))
                    .unwrap()
            } else {
                random_poly(&mut rng, m, 1, 2, 3)
            };
            &c.checked_mul(x).unwrap() + &tail
        })
        .collect();
    PolyMapFamily::new(s, 3, vec![a, b]).unwrap()
}

#[test]
fn column_operations_on_minors() {
    let s = sig(1, 2);
    for seed in 0..6 {
        let f = small_family(seed, s, seed % 2 == 0);
        let m = s.m();
        let c = random_poly(&mut rng_from_seed(100 + seed), m, 1, 2, 3);
        let scaled: Vec<MultiPoly> = f.maps()[0]
            .iter()
            .map(|p| c.checked_mul(p).unwrap())
            .collect();
        let added: Vec<MultiPoly> = f.maps()[0]
            .iter()
            .zip(&f.maps()[1])
            .map(|(x, y)| x + &c.checked_mul(y).unwrap())
            .collect();
        let g = minor_generators(&f).unwrap().generators;
        let gs = minor_generators(&f.with_map(0, scaled).unwrap())
            .unwrap()
            .generators;
        let ga = minor_generators(&f.with_map(0, added).unwrap())
            .unwrap()
            .generators;
        for i in 0..g.len() {
            assert_eq!(gs[i], c.checked_mul(&g[i]).unwrap());
            assert_eq!(ga[i], g[i]);
        }
    }
}

#[test]
fn nullcone_dependence_matches_samples() {
    for (p, q) in [(1, 2), (2, 2), (1, 3)] {
        let s = sig(p, q);
        let samples = null_samples(&QuadForm::new(s), 50, 9).unwrap();
        for seed in 0..6 {
            let f = small_family(seed * 7 + p as u64, s, seed % 2 == 0);
            let at_samples = samples.iter().all(|v| rank_at(&f, v).unwrap() < f.r());
            assert_eq!(
                nullcone_dependent(&f).unwrap(),
                at_samples,
                "({p},{q}) seed {seed}"
            );
            if seed % 2 == 0 {
                assert!(at_samples);
            }
        }
    }
}
