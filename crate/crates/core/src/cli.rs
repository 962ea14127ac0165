//! The `szabo` command line. Exit codes: 0 success or positive verdict,
//! 1 verified negative, 2 input error, 3 inapplicable hypothesis.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::curvature::{self, CovDerivTensor};
use crate::error::{Error, Result};
use crate::exactpoly::rational::{display, to_frac_string};
use crate::exactpoly::{MultiPoly, QuadForm, Signature};
use crate::fixtures;
use crate::json::{self, FamilyJson, OperatorJson, PolyJson, PolyMapJson, TensorJson};
use crate::obstruction::{self, trace::verdict_text, ProofTrace, Verdict, WolfVerdict};
use crate::polydep::{self, PolyMapFamily};
use crate::spectral;
use crate::szaboclass::{self, HomPolyMap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INAPPLICABLE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "szabo",
    version,
    about = "Exact checks for Szabó operators and the bundle obstruction calculus"
)]
pub struct Cli {
    /// Seed for every sampling step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Signature `p,q`; overrides the one in the input file.
    #[arg(long, global = true)]
    pub signature: Option<Signature>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the symmetries of a covariant-derivative tensor.
    CheckSymmetries { file: PathBuf },
    /// Szabó operator of a tensor at a vector, or as a polynomial map.
    Szabo {
        file: PathBuf,
        /// Comma-separated rational vector.
        #[arg(
            long,
            conflicts_with = "poly",
            required_unless_present = "poly",
            allow_hyphen_values = true
        )]
        at: Option<String>,
        #[arg(long)]
        poly: bool,
    },
    /// Membership of a polynomial map in the odd self-adjoint class.
    Pclass { file: PathBuf },
    /// Nilpotency of a polynomial map along the nullcone.
    Nilpotency { file: PathBuf },
    /// Dependence degree of a family of maps and its descent chain.
    Dependence { file: PathBuf },
    /// Spectral profile, annihilating identity and glued ranks.
    Spectral {
        file: PathBuf,
        /// Unit timelike source vector (default e1).
        #[arg(long, allow_hyphen_values = true)]
        source: Option<String>,
    },
    /// Rank constraints over real projective space.
    Obstruction {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        case: u8,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        r: u64,
        /// Rank bound for case 2 (default n+1).
        #[arg(long)]
        rank_max: Option<u64>,
    },
    /// Verdict for a signature (requires --signature).
    Wolf,
    /// Emit a fixture file: tensor, zero-tensor, szabo-poly, family-q,
    /// family-constants, family-equal, or an operator fixture name.
    GenFixture { kind: String },
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    seed: u64,
    #[serde(flatten)]
    body: T,
}

struct Ctx<'a> {
    seed: u64,
    format: Format,
    signature: Option<Signature>,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit<T: Serialize>(
        &mut self,
        command: &str,
        body: T,
        text: impl FnOnce() -> String,
    ) -> Result<()> {
        match self.format {
            Format::Json => {
                let s = serde_json::to_string_pretty(&Envelope {
                    command,
                    seed: self.seed,
                    body,
                })?;
                writeln!(self.out, "{s}")?;
            }
            Format::Text => {
                write!(self.out, "{}", text())?;
            }
        }
        Ok(())
    }

    fn override_sig(&self, sig: Signature) -> Result<Signature> {
        match self.signature {
            Some(s) if s.m() != sig.m() => Err(Error::DimensionMismatch {
                expected: sig.m(),
                got: s.m(),
            }),
            Some(s) => Ok(s),
            None => Ok(sig),
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_tensor(ctx: &Ctx, path: &PathBuf) -> Result<CovDerivTensor> {
    let mut j: TensorJson = serde_json::from_str(&read(path)?)?;
    j.signature = ctx.override_sig(j.signature)?;
    CovDerivTensor::try_from(j)
}

fn load_polymap(ctx: &Ctx, path: &PathBuf) -> Result<HomPolyMap> {
    let mut j: PolyMapJson = serde_json::from_str(&read(path)?)?;
    j.signature = ctx.override_sig(j.signature)?;
    HomPolyMap::try_from(j)
}

fn load_family(ctx: &Ctx, path: &PathBuf) -> Result<PolyMapFamily> {
    let mut j: FamilyJson = serde_json::from_str(&read(path)?)?;
    j.signature = ctx.override_sig(j.signature)?;
    PolyMapFamily::try_from(j)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InadmissibleSignature { .. } | Error::Inapplicable(_) | Error::Precondition(_) => {
            EXIT_INAPPLICABLE
        }
        Error::SymmetryViolation { .. } => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        seed: cli.seed,
        format: cli.format,
        signature: cli.signature,
        out,
    };
    match dispatch(&mut ctx, &cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(ctx: &mut Ctx, cmd: &Command) -> Result<i32> {
    match cmd {
        Command::CheckSymmetries { file } => check_symmetries(ctx, file),
        Command::Szabo { file, at, poly } => szabo(ctx, file, at.as_deref(), *poly),
        Command::Pclass { file } => pclass(ctx, file),
        Command::Nilpotency { file } => nilpotency(ctx, file),
        Command::Dependence { file } => dependence(ctx, file),
        Command::Spectral { file, source } => spectral_cmd(ctx, file, source.as_deref()),
        Command::Obstruction {
            case,
            n,
            k,
            r,
            rank_max,
        } => obstruction_cmd(ctx, *case, *n, *k, *r, *rank_max),
        Command::Wolf => wolf(ctx),
        Command::GenFixture { kind } => gen_fixture(ctx, kind),
    }
}

const MAX_WITNESSES: usize = 10;

fn check_symmetries(ctx: &mut Ctx, file: &PathBuf) -> Result<i32> {
    let t = load_tensor(ctx, file)?;
    let v = curvature::check_symmetries(&t);
    let shown: Vec<_> = v.iter().take(MAX_WITNESSES).cloned().collect();
    let body = json!({ "signature": t.signature(), "violations": v.len(), "witnesses": shown });
    ctx.emit("check-symmetries", body, || {
        let mut s = format!("signature {}: {} violation(s)\n", t.signature(), v.len());
        for w in &shown {
            s += &format!(
                "  {} at {:?}: residual {}\n",
                w.identity,
                w.index,
                display(&w.residual)
            );
        }
        s
    })?;
    Ok(if v.is_empty() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn polymap_text(s: &HomPolyMap) -> String {
    let mut out = format!("signature {}, degree {}\n", s.signature(), s.degree());
    for row in s.entries() {
        let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        out += &format!("  [{}]\n", cells.join(", "));
    }
    out
}

fn szabo(ctx: &mut Ctx, file: &PathBuf, at: Option<&str>, poly: bool) -> Result<i32> {
    let t = load_tensor(ctx, file)?;
    if poly {
        let s = curvature::szabo_polymap(&t)?;
        ctx.emit("szabo", PolyMapJson::from(&s), || polymap_text(&s))?;
    } else {
        let v = json::parse_vector(at.unwrap_or_default())?;
        let a = curvature::szabo_at(&t, &v)?;
        let body = OperatorJson::new(t.signature(), &a);
        ctx.emit("szabo", body, || format!("{a}\n"))?;
    }
    Ok(EXIT_OK)
}

fn pclass(ctx: &mut Ctx, file: &PathBuf) -> Result<i32> {
    let s = load_polymap(ctx, file)?;
    let r = szaboclass::pclass_check(&s);
    let member = r.is_member();
    ctx.emit("pclass", json!({ "member": member, "report": &r }), || {
        let mut out = match r.n {
            Some(n) if member => format!("member of P_{n}\n"),
            _ => "not a member\n".to_string(),
        };
        for f in &r.failures {
            out += &format!("  {f}\n");
        }
        out
    })?;
    Ok(if member { EXIT_OK } else { EXIT_NEGATIVE })
}

fn nilpotency(ctx: &mut Ctx, file: &PathBuf) -> Result<i32> {
    let s = load_polymap(ctx, file)?;
    let nil = szaboclass::pointwise_nilpotent_on_nullcone(&s)?;
    let ord = szaboclass::vanishing_order_on_nullcone(&s)?;
    let within = ord.order.is_some_and(|o| o <= 3);
    let body = json!({
        "nilpotent_on_nullcone": nil.nilpotent_on_nullcone,
        "witness_power": nil.witness_power,
        "vanishing_order": ord.order,
        "odd_below": ord.odd_below,
        "cube_vanishes": within,
    });
    ctx.emit("nilpotency", body, || {
        let mut out = format!(
            "nilpotent on the nullcone: {}\n",
            if nil.nilpotent_on_nullcone {
                "yes"
            } else {
                "no"
            }
        );
        if let Some(n) = nil.witness_power {
            out += &format!("  Tr S^{n} is not divisible by q\n");
        }
        match ord.order {
            Some(o) => out += &format!("vanishing order: {o}\nS^3 = 0 on the nullcone: {within}\n"),
            None => out += "vanishing order: none up to m\n",
        }
        out
    })?;
    Ok(if nil.nilpotent_on_nullcone {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn poly_vec(v: &[MultiPoly]) -> Vec<PolyJson> {
    v.iter().map(PolyJson::from).collect()
}

fn dependence(ctx: &mut Ctx, file: &PathBuf) -> Result<i32> {
    let f = load_family(ctx, file)?;
    let k = polydep::dependence_degree(&f)?;
    let Some(k0) = k else {
        ctx.emit(
            "dependence",
            json!({ "k": null, "zero_ideal": true, "chain": [] }),
            || "zero ideal: the maps are dependent everywhere\n".to_string(),
        )?;
        return Ok(EXIT_OK);
    };
    let chain = polydep::descend(&f, ctx.seed)?;
    let steps: Vec<Value> = chain
        .steps
        .iter()
        .map(|s| {
            json!({
                "before": s.before,
                "after": s.after,
                "unit_index": s.certificate.unit_index,
                "coeffs": poly_vec(&s.certificate.coeffs),
                "y": poly_vec(&s.certificate.y),
                "sample": json::frac_row(&s.certificate.sample),
                "rows": s.certificate.rows,
                "identity_verified": s.identity_verified,
            })
        })
        .collect();
    let sound = chain.is_sound();
    ctx.emit(
        "dependence",
        json!({ "k": k0, "zero_ideal": false, "sound": sound, "chain": steps }),
        || {
            let mut out = format!("dependence degree k = {k0}\n");
            for (i, s) in chain.steps.iter().enumerate() {
                let c = &s.certificate;
                out += &format!(
                    "  step {}: replace x{} by y = (sum c_i x_i)/q, k {} -> {}, identity {}\n",
                    i + 1,
                    c.unit_index + 1,
                    s.before.map_or("-".into(), |x| x.to_string()),
                    s.after.map_or("-".into(), |x| x.to_string()),
                    if s.identity_verified {
                        "verified"
                    } else {
                        "FAILED"
                    }
                );
                for (j, cj) in c.coeffs.iter().enumerate() {
                    out += &format!("    c{} = {}\n", j + 1, cj);
                }
            }
            out
        },
    )?;
    Ok(if sound { EXIT_OK } else { EXIT_NEGATIVE })
}

fn spectral_cmd(ctx: &mut Ctx, file: &PathBuf, source: Option<&str>) -> Result<i32> {
    let s = load_polymap(ctx, file)?;
    let v0 = match source {
        Some(t) => json::parse_vector(t)?,
        None => spectral::default_source(s.signature()),
    };
    let outcome = spectral::spec_profile(&s, &v0)?;
    let eq = spectral::eqny_identity_check(&s, &outcome)?;
    let glued = spectral::glued_rank_analysis(&s, ctx.seed)?;
    let profile = match &outcome {
        spectral::ProfileOutcome::Zero { .. } => json!({ "l": 0 }),
        spectral::ProfileOutcome::Profile(p) => json!({
            "l": p.l,
            "sigma": json::frac_row(&p.sigma),
            "mu_minus": p.mu_minus.to_string(),
        }),
        spectral::ProfileOutcome::Rejected {
            minimal_polynomial,
            diagnosis,
        } => json!({
            "rejected": diagnosis,
            "minimal_polynomial": minimal_polynomial.to_string(),
        }),
    };
    let body = json!({ "source": json::frac_row(&v0), "profile": profile, "identity": &eq, "ranks": &glued });
    ctx.emit("spectral", body, || {
        let mut out = match &outcome {
            spectral::ProfileOutcome::Zero { .. } => "profile: l = 0 (S(v0) = 0)\n".to_string(),
            spectral::ProfileOutcome::Profile(p) => format!(
                "profile: l = {}, sigma = [{}], mu = {}\n",
                p.l,
                p.sigma.iter().map(display).collect::<Vec<_>>().join(", "),
                p.mu_minus
            ),
            spectral::ProfileOutcome::Rejected {
                minimal_polynomial,
                diagnosis,
            } => {
                format!("profile rejected: {diagnosis} (mu = {minimal_polynomial})\n")
            }
        };
        out += &format!("S*A = 0: {}\n", eq.holds);
        if let Some(d) = &eq.diagnosis {
            out += &format!("  {d}\n");
        }
        out += &format!(
            "ranks: r+ = {}{}, r- = {}{}, r0 = {} (sampled {})\n",
            glued.r_plus.rank,
            if glued.r_plus.constant {
                ""
            } else {
                " (varies)"
            },
            glued.r_minus.rank,
            if glued.r_minus.constant {
                ""
            } else {
                " (varies)"
            },
            glued.r_zero,
            glued.r_zero_sampled
        );
        out += &format!(
            "r- = r+: {}, r0 < r+: {}\n",
            glued.r_minus_equals_r_plus, glued.r_zero_below_r_plus
        );
        out
    })?;
    Ok(if eq.holds { EXIT_OK } else { EXIT_NEGATIVE })
}

fn trace_exit(v: &Verdict) -> i32 {
    match v {
        Verdict::Consistent | Verdict::Infeasible | Verdict::LocallySymmetric => EXIT_OK,
        Verdict::Inapplicable(_) => EXIT_INAPPLICABLE,
        Verdict::Inconclusive(_) => EXIT_NEGATIVE,
    }
}

fn emit_trace(ctx: &mut Ctx, command: &str, headline: String, t: &ProofTrace) -> Result<()> {
    ctx.emit(command, json!({ "verdict": headline, "trace": t }), || {
        format!("{headline}\n{}", t.render())
    })
}

fn obstruction_cmd(
    ctx: &mut Ctx,
    case: u8,
    n: u64,
    k: Option<u64>,
    r: u64,
    rank_max: Option<u64>,
) -> Result<i32> {
    let t = match case {
        1 => obstruction::techn_case1(n, r)?,
        2 => obstruction::techn_case2(n, r, rank_max.unwrap_or(n + 1))?,
        _ => {
            let k = k.ok_or_else(|| Error::Parse("--k is required for case 3".into()))?;
            obstruction::techn_case3(n, k, r)?
        }
    };
    let headline = verdict_text(&t.verdict);
    emit_trace(ctx, "obstruction", headline, &t)?;
    Ok(trace_exit(&t.verdict))
}

fn wolf(ctx: &mut Ctx) -> Result<i32> {
    let sig = ctx
        .signature
        .ok_or_else(|| Error::Parse("--signature p,q is required".into()))?;
    let (v, t) = obstruction::wolf_verdict(sig.p, sig.q)?;
    let headline = match v {
        WolfVerdict::LocallySymmetric => "locally symmetric".to_string(),
        WolfVerdict::Inconclusive => "inconclusive".to_string(),
    };
    emit_trace(ctx, "wolf", headline, &t)?;
    Ok(if v == WolfVerdict::LocallySymmetric {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn gen_fixture(ctx: &mut Ctx, kind: &str) -> Result<i32> {
    let sig = ctx.signature.unwrap_or(Signature { p: 1, q: 2 });
    let m = sig.m();
    let seed = ctx.seed;
    let mut emit_json = |v: Value| -> Result<()> {
        let mut obj = v;
        obj["seed"] = json!(seed);
        writeln!(ctx.out, "{}", serde_json::to_string_pretty(&obj)?)?;
        Ok(())
    };
    match kind {
        "tensor" => emit_json(serde_json::to_value(TensorJson::from(&curvature::random_symmetric_tensor(sig, seed)?))?)?,
        "zero-tensor" => emit_json(serde_json::to_value(TensorJson::from(&CovDerivTensor::zero(sig)))?)?,
        "szabo-poly" => {
            let t = curvature::random_symmetric_tensor(sig, seed)?;
            emit_json(serde_json::to_value(PolyMapJson::from(&curvature::szabo_polymap(&t)?))?)?
        }
        "family-q" | "family-constants" | "family-equal" => {
            let q = QuadForm::new(sig);
            let z = MultiPoly::zero(m);
            let one = MultiPoly::one(m);
            let f = match kind {
                "family-q" => PolyMapFamily::new(sig, 2, vec![vec![q.poly().clone(), z.clone()], vec![z, one]])?,
                "family-constants" => polydep::standard_family(sig, 2, 2)?,
                _ => {
                    let x = vec![MultiPoly::var(m, 0), one];
                    PolyMapFamily::new(sig, 2, vec![x.clone(), x])?
                }
            };
            emit_json(serde_json::to_value(FamilyJson::from(&f))?)?
        }
        name => match fixtures::by_name(name) {
            Some(s) => emit_json(serde_json::to_value(PolyMapJson::from(&s))?)?,
            None => {
                return Err(Error::Parse(format!(
                    "unknown fixture {name:?}; expected tensor, zero-tensor, szabo-poly, family-q, family-constants, family-equal, {}",
                    fixtures::NAMES.join(", ")
                )))
            }
        },
    }
    Ok(EXIT_OK)
}

/// Rendered rational vector, for callers building text reports.
pub fn render_vector(v: &[crate::Rational]) -> String {
    v.iter().map(to_frac_string).collect::<Vec<_>>().join(",")
}
