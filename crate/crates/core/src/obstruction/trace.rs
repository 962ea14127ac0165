use serde::{Deserialize, Serialize};

use super::ko::{ko_order, lema5_solve, phi_bounds_check, subb_dichotomy};
use super::z2::{z2_pow_one_plus_x, Z2TruncPoly};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Cmp {
    fn holds(self, a: u64, b: u64) -> bool {
        match self {
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Eq => a == b,
            Cmp::Ge => a >= b,
            Cmp::Gt => a > b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Eq => "=",
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
        }
    }
}

/// A re-executable derivation; its conclusion is a function of the inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "inputs", rename_all = "kebab-case")]
pub enum Rule {
    Hypothesis {
        statement: String,
    },
    Deduction {
        statement: String,
    },
    Compare {
        lhs_name: String,
        lhs: u64,
        cmp: Cmp,
        rhs_name: String,
        rhs: u64,
    },
    PowerOnePlusX {
        r: u64,
        n: u64,
    },
    DegreeOfPower {
        r: u64,
        n: u64,
    },
    TruncatedOne {
        r: u64,
        n: u64,
    },
    Halving {
        r: u64,
        n: u64,
    },
    Dichotomy {
        exponents: Vec<usize>,
        rank: u64,
        n: u64,
    },
    PhiBounds {
        n: u64,
    },
    KoTorsion {
        n: u64,
    },
}

impl Rule {
    pub fn evaluate(&self) -> Result<String> {
        Ok(match self {
            Rule::Hypothesis { statement } | Rule::Deduction { statement } => statement.clone(),
            Rule::Compare {
                lhs_name,
                lhs,
                cmp,
                rhs_name,
                rhs,
            } => {
                format!(
                    "{lhs_name} = {lhs} {} {rhs} = {rhs_name}: {}",
                    cmp.symbol(),
                    cmp.holds(*lhs, *rhs)
                )
            }
            Rule::PowerOnePlusX { r, n } => format!(
                "(1+x)^{r} = {} mod x^{}",
                z2_pow_one_plus_x(*r, *n as usize),
                n + 1
            ),
            Rule::DegreeOfPower { r, n } => match z2_pow_one_plus_x(*r, *n as usize).degree() {
                Some(d) => format!("deg (1+x)^{r} = {d} mod x^{}", n + 1),
                None => "zero".into(),
            },
            Rule::TruncatedOne { r, n } => {
                format!(
                    "(1+x)^{r} = 1 mod x^{}: {}",
                    n + 1,
                    z2_pow_one_plus_x(*r, *n as usize).is_one()
                )
            }
            Rule::Halving { r, n } => {
                let sols = lema5_solve(*r, *n)?;
                let order = ko_order(*n)?;
                if sols.is_empty() {
                    format!("2a = {r} mod {order}: no solution")
                } else {
                    let s: Vec<String> = sols.iter().map(|a| a.to_string()).collect();
                    format!("2a = {r} mod {order}: a in {{{}}}", s.join(", "))
                }
            }
            Rule::Dichotomy { exponents, rank, n } => {
                let p = Z2TruncPoly::from_exponents(*n as usize, exponents);
                format!(
                    "w = {p}, rank {rank}: {}",
                    subb_dichotomy(&p, *rank, *n)?.label()
                )
            }
            Rule::PhiBounds { n } => {
                let b = phi_bounds_check(*n)?;
                format!(
                    "phi({n}) = {}, j = {}, phi >= j+3: {}, 2^phi > n+1: {}",
                    b.phi,
                    b.j,
                    b.log_bound.map_or("n/a".to_string(), |x| x.to_string()),
                    b.exceeds
                )
            }
            Rule::KoTorsion { n } => {
                let o = ko_order(*n)?;
                let divides =
                    (num_bigint::BigUint::from(n + 1) % &o) == num_bigint::BigUint::from(0u32);
                format!("(n+1){{gamma}} = 0 needs {o} | {}: {divides}", n + 1)
            }
        })
    }

    /// For comparison and predicate rules, whether the checked fact holds.
    pub fn holds(&self) -> Result<Option<bool>> {
        Ok(match self {
            Rule::Compare { lhs, cmp, rhs, .. } => Some(cmp.holds(*lhs, *rhs)),
            Rule::TruncatedOne { r, n } => Some(z2_pow_one_plus_x(*r, *n as usize).is_one()),
            Rule::Halving { r, n } => Some(!lema5_solve(*r, *n)?.is_empty()),
            Rule::Dichotomy { exponents, rank, n } => {
                let p = Z2TruncPoly::from_exponents(*n as usize, exponents);
                Some(!matches!(
                    subb_dichotomy(&p, *rank, *n)?,
                    super::ko::Dichotomy::Contradiction { .. }
                ))
            }
            Rule::KoTorsion { n } => {
                let o = ko_order(*n)?;
                Some((num_bigint::BigUint::from(n + 1) % &o) == num_bigint::BigUint::from(0u32))
            }
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// Named fact the step applies.
    pub lemma: String,
    #[serde(flatten)]
    pub derivation: Rule,
    pub conclusion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "kebab-case")]
pub enum Verdict {
    /// `r = 0`: nothing to refute.
    Consistent,
    /// The hypotheses lead to a contradiction.
    Infeasible,
    Inapplicable(String),
    Inconclusive(String),
    LocallySymmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub subject: String,
    pub steps: Vec<TraceStep>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl ProofTrace {
    pub fn new(subject: impl Into<String>) -> Self {
        ProofTrace {
            subject: subject.into(),
            steps: Vec::new(),
            verdict: Verdict::Inconclusive("open".into()),
        }
    }

    /// Append a step and return whether its checked fact holds (`true` for
    /// rules without a predicate).
    pub fn push(&mut self, lemma: &str, rule: Rule) -> Result<bool> {
        self.push_with(lemma, rule, None)
    }

    pub fn push_with(&mut self, lemma: &str, rule: Rule, witness: Option<String>) -> Result<bool> {
        let conclusion = rule.evaluate()?;
        let holds = rule.holds()?.unwrap_or(true);
        self.steps.push(TraceStep {
            lemma: lemma.into(),
            derivation: rule,
            conclusion,
            witness,
        });
        Ok(holds)
    }

    pub fn finish(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn extend(&mut self, other: ProofTrace) {
        self.steps.extend(other.steps);
    }

    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.subject);
        for (i, s) in self.steps.iter().enumerate() {
            out += &format!("  {:>3}. [{}] {}\n", i + 1, s.lemma, s.conclusion);
            if let Some(w) = &s.witness {
                out += &format!("       witness: {w}\n");
            }
        }
        out += &format!("  => {}\n", verdict_text(&self.verdict));
        out
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Consistent => "consistent".into(),
        Verdict::Infeasible => "infeasible: rank forced to 0".into(),
        Verdict::Inapplicable(r) => format!("inapplicable: {r}"),
        Verdict::Inconclusive(r) => format!("inconclusive: {r}"),
        Verdict::LocallySymmetric => "locally symmetric".into(),
    }
}

/// Index of the first step whose recorded conclusion differs from
/// re-evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayMismatch {
    pub step: usize,
    pub recorded: String,
    pub recomputed: String,
}

pub fn replay(trace: &ProofTrace) -> Result<Option<ReplayMismatch>> {
    for (i, s) in trace.steps.iter().enumerate() {
        let recomputed = s.derivation.evaluate()?;
        if recomputed != s.conclusion {
            return Ok(Some(ReplayMismatch {
                step: i,
                recorded: s.conclusion.clone(),
                recomputed,
            }));
        }
    }
    Ok(None)
}
