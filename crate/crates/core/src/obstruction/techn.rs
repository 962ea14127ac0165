//! Rank constraints on bundles `V` over `RP^n` with `V ≅ V ⊗ γ₁`.

use super::ko::{ceil_log2, floor_log2};
use super::trace::{Cmp, ProofTrace, Rule, Verdict};
use super::z2::z2_pow_one_plus_x;
use crate::error::{Error, Result};

fn exps(r: u64, n: u64) -> Vec<usize> {
    z2_pow_one_plus_x(r, n as usize)
        .coeffs()
        .iter()
        .enumerate()
        .filter(|e| *e.1)
        .map(|e| e.0)
        .collect()
}

fn cmp(
    lhs_name: impl Into<String>,
    lhs: u64,
    cmp: Cmp,
    rhs_name: impl Into<String>,
    rhs: u64,
) -> Rule {
    Rule::Compare {
        lhs_name: lhs_name.into(),
        lhs,
        cmp,
        rhs_name: rhs_name.into(),
        rhs,
    }
}

fn hyp(s: impl Into<String>) -> Rule {
    Rule::Hypothesis {
        statement: s.into(),
    }
}

fn ded(s: impl Into<String>) -> Rule {
    Rule::Deduction {
        statement: s.into(),
    }
}

/// `V ⊕ (V⊗γ₁)` a sub-bundle of the trivial bundle of rank `n+1`.
pub fn techn_case1(n: u64, r: u64) -> Result<ProofTrace> {
    if n < 1 {
        return Err(Error::precondition("n >= 1 required"));
    }
    let mut t = ProofTrace::new(format!(
        "V + V(x)gamma in trivial rank {} over RP^{n}, rank V = {r}",
        n + 1
    ));
    t.push(
        "hypothesis",
        hyp(format!(
            "V + V(x)gamma is a sub-bundle of the trivial bundle of rank {}",
            n + 1
        )),
    )?;
    if !t.push("rank-bound", cmp("2r", 2 * r, Cmp::Le, "n+1", n + 1))? {
        return Ok(t.finish(Verdict::Inapplicable(format!(
            "2r = {} exceeds n+1 = {}",
            2 * r,
            n + 1
        ))));
    }
    if r == 0 {
        return Ok(t.finish(Verdict::Consistent));
    }
    t.push("sw-tensor-relation", Rule::PowerOnePlusX { r, n })?;
    t.push("truncated-degree", Rule::DegreeOfPower { r, n })?;
    t.push("nonzero-rank", cmp("r", r, Cmp::Le, "n", n))?;
    let ok = t.push(
        "subbundle-degree-dichotomy",
        Rule::Dichotomy {
            exponents: exps(r, n),
            rank: 2 * r,
            n,
        },
    )?;
    debug_assert!(!ok);
    Ok(t.finish(if ok {
        Verdict::Inconclusive("dichotomy admits the class".into())
    } else {
        Verdict::Infeasible
    }))
}

/// `V ≅ V⊗γ₁` with a nowhere vanishing section, rank at most `rank_max`.
pub fn techn_case2(n: u64, r: u64, rank_max: u64) -> Result<ProofTrace> {
    if n < 1 {
        return Err(Error::precondition("n >= 1 required"));
    }
    if matches!(n, 1 | 3 | 7) {
        return Err(Error::Inapplicable(format!("n = {n} is one of 1, 3, 7")));
    }
    if r > rank_max {
        return Err(Error::precondition(format!(
            "r = {r} exceeds rank_max = {rank_max}"
        )));
    }
    let mut t = ProofTrace::new(format!(
        "V = V(x)gamma with a section over RP^{n}, rank {r} <= {rank_max}"
    ));
    t.push(
        "hypothesis",
        hyp(format!(
            "V = V(x)gamma, rank {r}, sub-bundle of a trivial bundle, rank at most {rank_max}"
        )),
    )?;
    if r == 0 {
        return Ok(t.finish(Verdict::Consistent));
    }
    t.push(
        "nonvanishing-section",
        ded(format!("w_{r}(V) = 0, so deg w(V) < {r}")),
    )?;
    if !t.push("rank-bound", cmp("r", r, Cmp::Le, "n+1", n + 1))? {
        return Ok(t.finish(Verdict::Inconclusive(format!(
            "r = {r} exceeds n+1; the degree dichotomy does not apply"
        ))));
    }
    t.push(
        "subbundle-degree-dichotomy",
        ded("deg w(V) is 0 or r, hence w(V) = 1 and w(V(x)gamma) = 1"),
    )?;
    t.push("sw-tensor-relation", Rule::PowerOnePlusX { r, n })?;
    if !t.push("sw-tensor-relation", Rule::TruncatedOne { r, n })? {
        return Ok(t.finish(Verdict::Infeasible));
    }
    let k = ceil_log2(n + 1);
    t.push(
        "binomial-parity",
        cmp("r mod 2^K", r % (1 << k), Cmp::Eq, "0", 0),
    )?;
    t.push("dyadic-window", cmp("2^K", 1 << k, Cmp::Ge, "n+1", n + 1))?;
    t.push("rank-bound", cmp("r", r, Cmp::Eq, "n+1", n + 1))?;
    t.push(
        "trivial-subbundle",
        ded(format!(
            "V has full rank {}, so V is trivial and (n+1){{gamma}} = 0",
            n + 1
        )),
    )?;
    t.push("ko-order", Rule::PhiBounds { n })?;
    let divides = t.push("ko-order", Rule::KoTorsion { n })?;
    Ok(t.finish(if divides {
        Verdict::Inconclusive("KO order divides n+1".into())
    } else {
        Verdict::Infeasible
    }))
}

/// Rank-`r` sub-bundle of the trivial rank `n+1` bundle whose restriction to
/// `RP^k` satisfies `V ≅ V⊗γ₁`.
pub fn techn_case3(n: u64, k: u64, r: u64) -> Result<ProofTrace> {
    if k < 10 {
        return Err(Error::precondition("k >= 10 fails"));
    }
    if 2 * k < n {
        return Err(Error::precondition("n/2 <= k fails"));
    }
    if k > n {
        return Err(Error::precondition("k <= n fails"));
    }
    if r > n + 1 {
        return Err(Error::precondition("r <= n+1 fails"));
    }
    let mut t = ProofTrace::new(format!(
        "rank {r} sub-bundle over RP^{n}, V = V(x)gamma on RP^{k}"
    ));
    t.push(
        "hypothesis",
        hyp(format!(
            "V of rank {r} in the trivial bundle of rank {}; V = V(x)gamma over RP^{k}",
            n + 1
        )),
    )?;
    if r == 0 {
        return Ok(t.finish(Verdict::Consistent));
    }
    let j = floor_log2(k);
    t.push("dyadic-window", cmp("2^j", 1 << j, Cmp::Le, "k", k))?;
    t.push(
        "dyadic-window",
        cmp("k", k, Cmp::Lt, "2^(j+1)", 1 << (j + 1)),
    )?;
    t.push(
        "dyadic-window",
        cmp("n", n, Cmp::Lt, "2^(j+2)", 1 << (j + 2)),
    )?;
    t.push("phi-bounds", Rule::PhiBounds { n: k })?;
    if !t.push("ko-halving", Rule::Halving { r, n: k })? {
        return Ok(t.finish(Verdict::Infeasible));
    }
    t.push(
        "ko-halving",
        ded(format!(
            "a = r/2 = {} mod 2^(j+2), since phi(k) - 1 >= j + 2",
            r / 2
        )),
    )?;
    t.push("dyadic-window", cmp("r/2", r / 2, Cmp::Le, "n", n))?;
    t.push("sw-tensor-relation", Rule::PowerOnePlusX { r: r / 2, n })?;
    let ok = t.push(
        "subbundle-degree-dichotomy",
        Rule::Dichotomy {
            exponents: exps(r / 2, n),
            rank: r,
            n,
        },
    )?;
    Ok(t.finish(if ok {
        Verdict::Inconclusive("dichotomy admits the class".into())
    } else {
        Verdict::Infeasible
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::trace::replay;

    #[test]
    fn case1_examples() {
        assert_eq!(techn_case1(10, 5).unwrap().verdict, Verdict::Infeasible);
        assert_eq!(techn_case1(10, 0).unwrap().verdict, Verdict::Consistent);
        assert!(matches!(
            techn_case1(4, 3).unwrap().verdict,
            Verdict::Inapplicable(_)
        ));
    }

    #[test]
    fn case2_examples() {
        let t = techn_case2(4, 2, 5).unwrap();
        assert_eq!(t.verdict, Verdict::Infeasible);
        assert!(replay(&t).unwrap().is_none());
        assert!(matches!(techn_case2(7, 2, 8), Err(Error::Inapplicable(_))));
        assert_eq!(techn_case2(4, 0, 5).unwrap().verdict, Verdict::Consistent);
        // r = n+1 a power of two reaches the KO step
        let t = techn_case2(15, 16, 16).unwrap();
        assert_eq!(t.verdict, Verdict::Infeasible);
        assert!(t.steps.iter().any(|s| s.lemma == "trivial-subbundle"));
    }

    #[test]
    fn case3_examples() {
        let t = techn_case3(12, 10, 4).unwrap();
        assert_eq!(t.verdict, Verdict::Infeasible);
        assert!(replay(&t).unwrap().is_none());
        let e = techn_case3(12, 9, 4).unwrap_err();
        assert!(e.to_string().contains("k >= 10 fails"));
        assert_eq!(techn_case3(12, 10, 0).unwrap().verdict, Verdict::Consistent);
        assert_eq!(techn_case3(12, 10, 3).unwrap().verdict, Verdict::Infeasible);
    }
}
