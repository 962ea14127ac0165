//! Which signatures force a constant-spectrum Szabó structure to be locally
//! symmetric.

use serde::Serialize;

use super::techn::{techn_case1, techn_case2, techn_case3};
use super::trace::{Cmp, ProofTrace, Rule, Verdict};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WolfVerdict {
    LocallySymmetric,
    Inconclusive,
}

fn cite(t: &mut ProofTrace, lemma: &str, s: &str) -> Result<()> {
    t.push(
        lemma,
        Rule::Deduction {
            statement: s.into(),
        },
    )?;
    Ok(())
}

fn excluded(sub: &ProofTrace) -> bool {
    matches!(sub.verdict, Verdict::Infeasible | Verdict::Consistent)
}

pub fn wolf_verdict(p: usize, q: usize) -> Result<(WolfVerdict, ProofTrace)> {
    let (p, q) = (p as u64, q as u64);
    let mut t = ProofTrace::new(format!("signature ({p},{q})"));
    if p == q {
        if matches!(p, 2 | 4 | 8) {
            cite(
                &mut t,
                "signature",
                &format!("p = q = {p} lies in the exceptional set 2, 4, 8"),
            )?;
            return Ok((
                WolfVerdict::Inconclusive,
                t.finish(Verdict::Inconclusive(
                    "exceptional balanced signature".into(),
                )),
            ));
        }
        if p <= 1 {
            cite(&mut t, "signature", &format!("p = q = {p}: the image bundle lives over RP^0 or less; its rank is forced to 0 directly"))?;
            cite(
                &mut t,
                "szabo-vanishing",
                "S vanishes identically, so the covariant derivative of curvature vanishes",
            )?;
            return Ok((
                WolfVerdict::LocallySymmetric,
                t.finish(Verdict::LocallySymmetric),
            ));
        }
        let n = p - 1;
        cite(
            &mut t,
            "image-bundle",
            &format!("Im S(v) over unit vectors gives V over RP^{n} with V = V(x)gamma"),
        )?;
        cite(
            &mut t,
            "image-bundle",
            &format!(
                "V has a nowhere vanishing section and sits in the trivial bundle of rank {p}"
            ),
        )?;
        for r in 1..=p {
            let sub = techn_case2(n, r, p)?;
            let ok = excluded(&sub);
            t.extend(sub);
            if !ok {
                return Ok((
                    WolfVerdict::Inconclusive,
                    t.finish(Verdict::Inconclusive(format!("rank {r} not excluded"))),
                ));
            }
        }
        for r in 1..=p / 2 {
            let sub = techn_case1(n, r)?;
            let ok = excluded(&sub);
            t.extend(sub);
            if !ok {
                return Ok((
                    WolfVerdict::Inconclusive,
                    t.finish(Verdict::Inconclusive(format!("rank {r} not excluded"))),
                ));
            }
        }
        cite(
            &mut t,
            "image-bundle",
            "every positive rank is excluded, so Im S(v) = 0 on unit vectors",
        )?;
        cite(
            &mut t,
            "szabo-vanishing",
            "S vanishes identically, so the covariant derivative of curvature vanishes",
        )?;
        return Ok((
            WolfVerdict::LocallySymmetric,
            t.finish(Verdict::LocallySymmetric),
        ));
    }
    let mx = p.max(q);
    if mx < 11 {
        cite(
            &mut t,
            "signature",
            &format!("p != q with max(p,q) = {mx} < 11"),
        )?;
        return Ok((
            WolfVerdict::Inconclusive,
            t.finish(Verdict::Inconclusive("max(p,q) < 11".into())),
        ));
    }
    let n = p + q - 1;
    let k = mx - 1;
    t.push(
        "signature",
        Rule::Compare {
            lhs_name: "k".into(),
            lhs: k,
            cmp: Cmp::Ge,
            rhs_name: "10".into(),
            rhs: 10,
        },
    )?;
    t.push(
        "signature",
        Rule::Compare {
            lhs_name: "2k".into(),
            lhs: 2 * k,
            cmp: Cmp::Ge,
            rhs_name: "n".into(),
            rhs: n,
        },
    )?;
    t.push(
        "signature",
        Rule::Compare {
            lhs_name: "k".into(),
            lhs: k,
            cmp: Cmp::Le,
            rhs_name: "n".into(),
            rhs: n,
        },
    )?;
    cite(
        &mut t,
        "image-bundle",
        &format!("the evaluation fibres glue to V over RP^{n} inside the trivial bundle of rank {}, with V = V(x)gamma over RP^{k}", n + 1),
    )?;
    for r in 1..=n + 1 {
        let sub = techn_case3(n, k, r)?;
        let ok = excluded(&sub);
        t.extend(sub);
        if !ok {
            return Ok((
                WolfVerdict::Inconclusive,
                t.finish(Verdict::Inconclusive(format!("rank {r} not excluded"))),
            ));
        }
    }
    cite(
        &mut t,
        "image-bundle",
        "the fibre rank is 0, so S vanishes off the nullcone and hence everywhere",
    )?;
    cite(
        &mut t,
        "szabo-vanishing",
        "S vanishes identically, so the covariant derivative of curvature vanishes",
    )?;
    Ok((
        WolfVerdict::LocallySymmetric,
        t.finish(Verdict::LocallySymmetric),
    ))
}
