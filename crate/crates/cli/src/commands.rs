use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use monideal::two_exponent::{generators_f_with_budget, verify_all};
use monideal::{
    closure_with_limit, dependence_witness, is_integrally_closed, is_normal, np_member, pure_power_normality,
    quasinormality_check, ExponentVector, MonomialIdeal, NormalityOptions, NormalityReport, Quasinormality,
    TwoExponentSpec,
};
use serde_json::{json, Value};

use crate::parse::{format_ideal, parse_ideal, parse_vector, ParseError};
use crate::report::{Check, RunReport};
use crate::repro::{self, ReproPart};

#[derive(Debug, Parser)]
#[command(
    name = "monideal",
    version,
    about = "Integral closure and normality of monomial ideals"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Abort when an output ideal would have more minimal generators than this.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_gens: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal generators of the integral closure.
    Closure {
        #[arg(short = 'i', long = "ideal")]
        ideal: String,
    },
    /// Whether x^v is integral over the ideal, with a certificate.
    Member {
        #[arg(short = 'i', long = "ideal")]
        ideal: String,
        #[arg(short = 'v', long = "vector")]
        vector: String,
    },
    /// k-th power of the ideal.
    Power {
        #[arg(short = 'i', long = "ideal")]
        ideal: String,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Colon by a monomial or by the maximal ideal.
    Colon {
        #[arg(short = 'i', long = "ideal")]
        ideal: String,
        #[arg(
            short = 'f',
            long = "monomial",
            required_unless_present = "maximal",
            conflicts_with = "maximal"
        )]
        monomial: Option<String>,
        #[arg(long)]
        maximal: bool,
    },
    /// Intersection of two ideals.
    Intersect {
        #[arg(short = 'i', long = "ideal")]
        ideal: String,
        #[arg(short = 'j', long = "other")]
        other: String,
    },
    /// Whether the ideal equals its integral closure.
    IsClosed {
        #[arg(short = 'i', long = "ideal")]
        ideal: String,
    },
    /// Normality of an ideal, or of I(alpha), the closure of the pure powers.
    IsNormal {
        #[arg(
            short = 'i',
            long = "ideal",
            required_unless_present = "alpha",
            conflicts_with = "alpha"
        )]
        ideal: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        /// Skip the shortcut theorems and check powers directly.
        #[arg(long)]
        no_shortcuts: bool,
    },
    /// Bounded search for a failure of quasinormality of alpha.
    Quasinormal {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// Ideals built from two distinct exponents.
    TwoExp {
        #[command(subcommand)]
        action: TwoExpAction,
    },
    /// Re-run the reference computations.
    Repro {
        #[arg(value_enum, default_value_t = ReproPart::All)]
        part: ReproPart,
    },
}

#[derive(Debug, Subcommand)]
pub enum TwoExpAction {
    /// List the generating set F_k.
    Gens(SpecArgs),
    /// Run the five instance checks.
    Verify(SpecArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SpecArgs {
    #[arg(short = 'm')]
    pub m: u32,
    #[arg(short = 'n')]
    pub n: u32,
    #[arg(short = 's')]
    pub s: u32,
    #[arg(short = 'l')]
    pub l: u32,
    #[arg(short = 'k', default_value_t = 1)]
    pub k: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] monideal::Error),
}

/// Exit status for a finished report: 1 when the verdict is negative.
pub fn exit_code(report: &RunReport) -> i32 {
    match report.outcome() {
        "outside" | "not_closed" | "not_normal" | "counterexample_found" | "fail" => 1,
        _ => 0,
    }
}

pub fn execute(cli: &Cli) -> Result<RunReport, CommandError> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Closure { ideal } => closure(ideal, cli.max_gens)?,
        Command::Member { ideal, vector } => member(ideal, vector)?,
        Command::Power { ideal, k } => {
            let i = parse_ideal(ideal)?;
            let p = i.power(*k);
            RunReport::new(
                "power",
                json!({ "ideal": format_ideal(&i), "k": k }),
                json!({ "outcome": "computed", "generators": p.generators() }),
            )
        }
        Command::Colon {
            ideal,
            monomial,
            maximal,
        } => {
            let i = parse_ideal(ideal)?;
            let (inputs, result) = match monomial {
                Some(f) if !maximal => {
                    let f = parse_vector(f)?;
                    let c = i.colon_by_monomial(&f)?;
                    (json!({ "ideal": format_ideal(&i), "monomial": f }), c)
                }
                _ => (
                    json!({ "ideal": format_ideal(&i), "maximal": true }),
                    i.colon_by_maximal(),
                ),
            };
            RunReport::new(
                "colon",
                inputs,
                json!({ "outcome": "computed", "generators": result.generators() }),
            )
        }
        Command::Intersect { ideal, other } => {
            let a = parse_ideal(ideal)?;
            let b = parse_ideal(other)?;
            let c = a.intersect(&b)?;
            RunReport::new(
                "intersect",
                json!({ "ideal": format_ideal(&a), "other": format_ideal(&b) }),
                json!({ "outcome": "computed", "generators": c.generators() }),
            )
        }
        Command::IsClosed { ideal } => is_closed(ideal)?,
        Command::IsNormal {
            ideal,
            alpha,
            no_shortcuts,
        } => normality(ideal.as_deref(), alpha.as_deref(), *no_shortcuts)?,
        Command::Quasinormal { alpha, bound } => quasinormal(alpha, *bound)?,
        Command::TwoExp { action } => match action {
            TwoExpAction::Gens(args) => two_exp_gens(args, cli.max_gens)?,
            TwoExpAction::Verify(args) => two_exp_verify(args)?,
        },
        Command::Repro { part } => repro::run(*part)?,
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// `{"vector", "membership", "ideal"?}`: enough to re-check membership of
/// `vector` without recomputing anything.
pub fn certificate(ideal: &MonomialIdeal, v: &ExponentVector, with_ideal: bool) -> Result<Value, CommandError> {
    let verdict = np_member(ideal, v)?;
    let mut cert = json!({ "vector": v, "membership": verdict });
    if with_ideal {
        cert["ideal"] = json!(ideal.generators());
    }
    Ok(cert)
}

fn closure(text: &str, max_gens: usize) -> Result<RunReport, CommandError> {
    let i = parse_ideal(text)?;
    let c = closure_with_limit(&i, Some(max_gens))?;
    let mut report = RunReport::new(
        "closure",
        json!({ "ideal": format_ideal(&i) }),
        json!({ "outcome": "computed", "generators": c.generators() }),
    );
    for g in c.generators() {
        report.certificates.push(certificate(&i, g, false)?);
    }
    Ok(report)
}

fn member(text: &str, vector: &str) -> Result<RunReport, CommandError> {
    let i = parse_ideal(text)?;
    let v = parse_vector(vector)?;
    let verdict = np_member(&i, &v)?;
    let outcome = if verdict.is_inside() { "inside" } else { "outside" };
    let mut report = RunReport::new(
        "member",
        json!({ "ideal": format_ideal(&i), "vector": v }),
        json!({ "outcome": outcome }),
    );
    report.certificates.push(json!({ "vector": v, "membership": verdict }));
    if verdict.is_inside() {
        report
            .witnesses
            .push(json!({ "dependence": dependence_witness(&i, &v)? }));
    }
    Ok(report)
}

fn is_closed(text: &str) -> Result<RunReport, CommandError> {
    let i = parse_ideal(text)?;
    let (closed, gap) = is_integrally_closed(&i)?;
    let outcome = if closed { "closed" } else { "not_closed" };
    let mut report = RunReport::new(
        "is-closed",
        json!({ "ideal": format_ideal(&i) }),
        json!({ "outcome": outcome }),
    );
    if let Some(g) = gap {
        report.certificates.push(certificate(&i, &g, false)?);
        report.witnesses.push(json!({ "vector": g }));
    }
    Ok(report)
}

fn normality(ideal: Option<&str>, alpha: Option<&str>, no_shortcuts: bool) -> Result<RunReport, CommandError> {
    let options = if no_shortcuts {
        NormalityOptions::direct_only()
    } else {
        NormalityOptions::default()
    };
    let (inputs, base, nr) = match (ideal, alpha) {
        (Some(text), _) => {
            let i = parse_ideal(text)?;
            let nr = is_normal(&i)?;
            (json!({ "ideal": format_ideal(&i) }), Some(i), nr)
        }
        (None, Some(text)) => {
            let a = parse_vector(text)?;
            let nr = pure_power_normality(&a, options)?;
            (json!({ "alpha": a, "shortcuts_enabled": !no_shortcuts }), None, nr)
        }
        (None, None) => unreachable!("clap requires one of --ideal, --alpha"),
    };
    let mut report = RunReport::new("is-normal", inputs, normality_verdict(&nr));
    if let (Some(k), Some(w)) = (nr.failing_power(), &nr.failing_witness) {
        let base = match base {
            Some(i) => i,
            None => {
                let at = nr.decided_on.clone().unwrap_or_else(|| match &nr.subject {
                    monideal::Subject::Alpha(a) => a.clone(),
                    monideal::Subject::Ideal(_) => unreachable!("alpha subject"),
                });
                monideal::closure(&MonomialIdeal::pure_powers(&at))?
            }
        };
        let power = base.power(k);
        report.certificates.push(certificate(&power, w, true)?);
        report
            .witnesses
            .push(json!({ "vector": w, "power": k, "in_power": power.contains_monomial(w)? }));
    }
    Ok(report)
}

fn normality_verdict(nr: &NormalityReport) -> Value {
    let outcome = if nr.is_normal() { "normal" } else { "not_normal" };
    json!({
        "outcome": outcome,
        "failing_power": nr.failing_power(),
        "checked_powers": nr.checked_powers,
        "shortcuts": nr.shortcuts,
        "decided_on": nr.decided_on,
    })
}

fn quasinormal(alpha: &str, bound: u64) -> Result<RunReport, CommandError> {
    let a = parse_vector(alpha)?;
    let q = quasinormality_check(&a, bound)?;
    let outcome = match q.verdict {
        Quasinormality::QuasinormalUpToBound => "quasinormal_up_to_bound",
        Quasinormality::CounterexampleFound => "counterexample_found",
    };
    let mut report = RunReport::new(
        "quasinormal",
        json!({ "alpha": a, "bound": bound }),
        json!({ "outcome": outcome }),
    );
    if let Some(w) = &q.witness {
        report.witnesses.push(json!(w));
        report.checks.push(Check::new(
            "witness_revalidated",
            q.validate(),
            "exhaustive decomposition search at the witness scale",
        ));
    }
    Ok(report)
}

fn spec_of(args: &SpecArgs) -> Result<(TwoExponentSpec, Value), CommandError> {
    let (spec, swapped) = TwoExponentSpec::normalized(args.m, args.n, args.s, args.l, args.k)?;
    let inputs = json!({
        "m": spec.m, "n": spec.n, "s": spec.s, "l": spec.l, "k": spec.k, "swapped": swapped,
    });
    Ok((spec, inputs))
}

fn two_exp_gens(args: &SpecArgs, max_gens: usize) -> Result<RunReport, CommandError> {
    let (spec, inputs) = spec_of(args)?;
    let mut gens = generators_f_with_budget(&spec, max_gens as u64)?;
    gens.sort();
    Ok(RunReport::new(
        "two-exp gens",
        inputs,
        json!({ "outcome": "computed", "generators": gens }),
    ))
}

fn two_exp_verify(args: &SpecArgs) -> Result<RunReport, CommandError> {
    let (spec, inputs) = spec_of(args)?;
    let vr = verify_all(&spec)?;
    let outcome = if vr.all_passed() { "pass" } else { "fail" };
    let mut report = RunReport::new("two-exp verify", inputs, json!({ "outcome": outcome }));
    for c in &vr.checks {
        report.checks.push(Check::new(c.name, c.passed, c.detail.clone()));
        if let Some(v) = &c.offending {
            report.witnesses.push(json!({ "check": c.name, "vector": v }));
        }
    }
    Ok(report)
}
