use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use oddsig::descent::{
    family_invariants, family_isomorphic, family_moduli_field, family_rational_descent, family_real_definability,
    weil_descent_order2, Extension,
};
use oddsig::exactnum::lcm;
use oddsig::matgroup::{closure_in, ProjGroup, DEFAULT_BOUND};
use oddsig::plane::{is_automorphism, is_smooth};
use oddsig::ramify::{odd_indices, odd_signature_verdict, signature_report};
use oddsig::superell::{
    build_family, family_signature, genus_qgonal, qgonal_real_descent, table1_signature, Shape,
};
use oddsig::tables::lookup_quartic;
use oddsig::{GroupDoc, OddVerdict, PlaneCurve, ProjMap, QGonalCurve, Signature, SparsePoly};

use crate::input::{load_curve, load_galois, load_group, load_map, load_qgonal_curve, load_triple, CliError};
use crate::report::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "oddsig", version, about = "Automorphism signatures and descent checks for curves over cyclotomic fields")]
pub struct Cli {
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the structured report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BoundArg {
    /// Maximum group order explored by the closure.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test whether a projective map preserves a plane curve.
    AutCheck {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Enumerate the group generated by a set of maps.
    GroupClosure {
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Signature of X -> X/G.
    Signature {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Odd-signature verdict for a given signature or for a curve and group.
    OddSignature {
        #[arg(long, conflicts_with_all = ["curve", "group"], required_unless_present_all = ["curve", "group"])]
        signature: Option<String>,
        #[arg(long, requires = "group")]
        curve: Option<PathBuf>,
        #[arg(long, requires = "curve")]
        group: Option<PathBuf>,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Weil descent for complex conjugation given one isomorphism X -> conj(X).
    DescendReal {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        aut: PathBuf,
        #[command(flatten)]
        bound: BoundArg,
    },
    /// Cyclic q-gonal curves y^q = f(x).
    Qgonal {
        #[command(subcommand)]
        command: QgonalCommand,
    },
    /// The quartic family x^4 + y^4 + z^4 + a x^2y^2 + b x^2z^2 + c y^2z^2.
    QuarticFamily {
        #[command(subcommand)]
        command: FamilyCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum QgonalCommand {
    /// Genus of y^q = f(x).
    Genus {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Signature for reduced group C_n of the given shape (N0, N1 or N2).
    Signature {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        shape: String,
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Build the family y^q = prod (x^n - a_i)(x^n + 1/conj(a_i)).
    Family {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Real descent for the family.
    Descend {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// The invariants j1, ..., j5.
    Invariants {
        #[arg(long)]
        triple: PathBuf,
    },
    /// Search for g in G with g(a, b, c) = (a', b', c').
    Isomorphic {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        other: PathBuf,
        /// Restrict to the sign-free subgroup (field without i).
        #[arg(long)]
        without_i: bool,
    },
    /// Field of moduli relative to F/K, with Gal(F/K) given by generators.
    Moduli {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        galois: Vec<PathBuf>,
        #[arg(long)]
        without_i: bool,
    },
    /// Real descent with Aut(X) = <iota_1, iota_2>.
    Descend {
        #[arg(long)]
        triple: PathBuf,
    },
    /// Descent over K for Gal(F/K) given by generators.
    RationalDescend {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long, required = true)]
        galois: Vec<PathBuf>,
    },
}

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn lift_inputs(curve: &PlaneCurve, maps: &[ProjMap], extra: u32) -> Result<(u32, PlaneCurve, Vec<ProjMap>), CliError> {
    let n = maps.iter().fold(lcm(curve.order(), extra), |n, m| lcm(n, m.order()));
    let maps = maps.iter().map(|m| m.lift_to(n)).collect::<oddsig::Result<Vec<_>>>()?;
    Ok((n, curve.lift_to(n)?, maps))
}

fn sorted_elements(g: &ProjGroup) -> Vec<Value> {
    let mut els: Vec<(String, Value)> = g
        .elements()
        .iter()
        .map(|e| {
            let v = value(e);
            (v.to_string(), v)
        })
        .collect();
    els.sort_by(|a, b| a.0.cmp(&b.0));
    els.into_iter().map(|e| e.1).collect()
}

const IOTA_NOTE: &str = "Aut(X) = <iota_1, iota_2> for the given triple";

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::AutCheck { curve, map } => {
            let x = load_curve(curve)?;
            let a = load_map(map)?;
            let (_, x, a) = lift_inputs(&x, &[a], 1)?;
            let lambda = is_automorphism(&x, &a[0])?;
            let text = match &lambda {
                Some(l) => vec![format!("{} is an automorphism, F(A v) = ({l}) F(v)", a[0])],
                None => vec![format!("{} is not an automorphism", a[0])],
            };
            Ok(Outcome {
                result: json!({
                    "automorphism": lambda.is_some(),
                    "scalar": lambda.as_ref().map(value),
                    "map": value(&a[0]),
                }),
                text,
                ..Outcome::default()
            })
        }
        Command::GroupClosure { group, bound } => {
            let doc = load_group(group)?;
            let n = doc.generators.iter().fold(1, |n, m| lcm(n, m.order()));
            let g = closure_in(&doc.generators, n, bound.bound)?;
            let stats = g.stats();
            Ok(Outcome {
                text: vec![
                    format!("order {}", stats.order),
                    format!("abelian {}", stats.abelian),
                    format!("exponent {}", stats.exponent),
                    format!("center size {}", stats.center_size),
                ],
                result: json!({
                    "stats": value(&stats),
                    "field_order": g.field_order(),
                    "generators": value(&g.to_doc()),
                    "elements": sorted_elements(&g),
                }),
                ..Outcome::default()
            })
        }
        Command::Signature { curve, group, bound } => {
            let (x, g) = curve_and_group(curve, group, bound.bound)?;
            let report = signature_report(&x, &g)?;
            let sig = &report.signature;
            let row = lookup_quartic(g.order(), sig);
            let mut text = vec![
                format!("group order {}", g.order()),
                format!("signature {sig}"),
                format!(
                    "ledger: sum |Fix(g)| = {}, sum (|G|/c)(c-1) = {}, source genus {}",
                    report.ledger.fixed_point_total, report.ledger.ramification_total, report.ledger.source_genus
                ),
            ];
            if let Some(label) = row {
                text.push(format!("matches quartic table row {label}"));
            }
            Ok(Outcome {
                result: json!({
                    "signature_text": sig.to_string(),
                    "report": value(&report),
                    "table_row": row,
                }),
                text,
                assumptions: vec!["smoothness of X is checked; the group is taken as given".into()],
                citations: vec!["Riemann-Hurwitz formula with fixed points counted per cyclic subgroup".into()],
            })
        }
        Command::OddSignature {
            signature,
            curve,
            group,
            bound,
        } => {
            let sig: Signature = match (signature, curve, group) {
                (Some(s), _, _) => s.parse().map_err(|e: oddsig::Error| CliError::Argument(e.to_string()))?,
                (None, Some(c), Some(g)) => {
                    let (x, g) = curve_and_group(c, g, bound.bound)?;
                    signature_report(&x, &g)?.signature
                }
                _ => return Err(CliError::Argument("give --signature or both --curve and --group".into())),
            };
            let verdict = odd_signature_verdict(&sig);
            let odd = odd_indices(&sig);
            let text = vec![format!("signature {sig}: {verdict}")];
            let citation = match verdict {
                OddVerdict::Odd => "an odd signature curve is definable over its field of moduli",
                OddVerdict::Inconclusive => "odd-signature criterion does not apply",
            };
            Ok(Outcome {
                result: json!({
                    "signature_text": sig.to_string(),
                    "signature": value(&sig),
                    "verdict": value(&verdict),
                    "odd_indices": odd,
                }),
                text,
                citations: vec![citation.into()],
                ..Outcome::default()
            })
        }
        Command::DescendReal { curve, mu, aut, bound } => {
            let x = load_curve(curve)?;
            let mu = load_map(mu)?;
            let doc = load_group(aut)?;
            let mut maps = doc.generators.clone();
            maps.push(mu);
            let (n, x, mut maps) = lift_inputs(&x, &maps, 4)?;
            let mu = maps.pop().unwrap();
            let g = closure_in(&maps, n, bound.bound)?;
            let v = weil_descent_order2(&x, &mu, &g)?;
            let mut text = vec![format!("{}", v.status)];
            if let Some(w) = &v.witness {
                text.push(format!("witness {w} with conj(f) f = id"));
            }
            for d in &v.defects {
                text.push(format!("conj(f) f = {} for f = {}", d.defect, d.candidate));
            }
            Ok(Outcome {
                result: value(&v),
                text,
                assumptions: v.assumptions.clone(),
                citations: vec![v.citation.clone()],
            })
        }
        Command::Qgonal { command } => qgonal(command),
        Command::QuarticFamily { command } => family(command),
    }
}

fn curve_and_group(curve: &Path, group: &Path, bound: usize) -> Result<(PlaneCurve, ProjGroup), CliError> {
    let x = load_curve(curve)?;
    let GroupDoc { generators } = load_group(group)?;
    let (n, x, gens) = lift_inputs(&x, &generators, 1)?;
    if !is_smooth(&x) {
        return Err(CliError::Schema {
            source_name: curve.display().to_string(),
            message: "curve is singular".into(),
        });
    }
    for a in &gens {
        if is_automorphism(&x, a)?.is_none() {
            return Err(CliError::Compute(oddsig::Error::NotAnAutomorphism));
        }
    }
    Ok((x, closure_in(&gens, n, bound)?))
}

fn qgonal(cmd: &QgonalCommand) -> Result<Outcome, CliError> {
    match cmd {
        QgonalCommand::Genus { curve } => {
            let c = load_qgonal_curve(curve)?;
            let g = genus_qgonal(c.q(), &SparsePoly::from_uni(c.f()))?;
            Ok(Outcome {
                result: json!({ "q": c.q(), "degree": c.f().degree(), "genus": g }),
                text: vec![format!("genus {g}")],
                ..Outcome::default()
            })
        }
        QgonalCommand::Signature { q, n, shape, genus, t } => {
            let shape: Shape = shape.parse()?;
            let sig = table1_signature(*q, *n, shape, *genus, *t)?;
            let verdict = odd_signature_verdict(&sig);
            Ok(Outcome {
                result: json!({
                    "signature_text": sig.to_string(),
                    "signature": value(&sig),
                    "verdict": value(&verdict),
                }),
                text: vec![format!("signature {sig}: {verdict}")],
                citations: vec!["signatures of normal cyclic q-gonal curves with reduced group C_n".into()],
                ..Outcome::default()
            })
        }
        QgonalCommand::Family { q, m, n } => {
            let fam = build_family(*m, *n)?;
            let curve = QGonalCurve::new(*q, fam.f.clone())?;
            let genus = genus_qgonal(*q, &SparsePoly::from_uni(&fam.f))?;
            let sig = family_signature(*q, *m, *n, genus)?;
            Ok(Outcome {
                result: json!({
                    "curve": value(&curve),
                    "roots": value(&fam.roots),
                    "genus": genus,
                    "signature_text": sig.to_string(),
                    "signature": value(&sig),
                }),
                text: vec![
                    format!("y^{q} = {}", fam.f),
                    format!("genus {genus}"),
                    format!("signature {sig}"),
                ],
                ..Outcome::default()
            })
        }
        QgonalCommand::Descend { q, m, n } => {
            let d = qgonal_real_descent(*q, *m, *n)?;
            let mut text = vec![
                format!("{}", d.status),
                format!("genus {}, signature {}", d.genus, d.signature),
            ];
            if let Some((j, k)) = d.witness {
                text.push(format!("witness mu iota^{j} nu^{k}"));
            }
            if !d.defects.is_empty() {
                let all = d.defects.iter().all(|r| r.matches_closed_form);
                text.push(format!(
                    "{} defects computed, closed form (tau')^(2k+1) nu^(2k+1) {}",
                    d.defects.len(),
                    if all { "matches" } else { "does not match" }
                ));
            }
            let citation = match d.status {
                oddsig::superell::QGonalStatus::DefinableByOddSignature => {
                    "q does not divide 2mn: odd signature, definable over the field of moduli"
                }
                _ => "Weil's descent criterion for C/R over candidates mu iota^j nu^k",
            };
            Ok(Outcome {
                result: value(&d),
                text,
                assumptions: vec!["Aut(X) = <iota, nu>".into()],
                citations: vec![citation.into()],
            })
        }
    }
}

fn family(cmd: &FamilyCommand) -> Result<Outcome, CliError> {
    match cmd {
        FamilyCommand::Invariants { triple } => {
            let t = load_triple(triple)?;
            t.validate()?;
            let j = family_invariants(&t);
            let names = ["j1", "j2", "j3", "j4", "j5"];
            Ok(Outcome {
                result: json!({ "triple": value(&t), "invariants": value(&j.to_vec()), "names": names }),
                text: names.iter().zip(&j).map(|(n, v)| format!("{n} = {v}")).collect(),
                ..Outcome::default()
            })
        }
        FamilyCommand::Isomorphic { triple, other, without_i } => {
            let (t, t2) = (load_triple(triple)?, load_triple(other)?);
            let g = family_isomorphic(&t, &t2, !without_i)?;
            let text = match &g {
                Some(g) => vec![format!("isomorphic via {g}, realized by {}", g.realizing_map(lcm(t.order(), 4))?)],
                None => vec!["not isomorphic".into()],
            };
            let map = match &g {
                Some(g) => Some(value(&g.realizing_map(lcm(lcm(t.order(), t2.order()), 4))?)),
                None => None,
            };
            Ok(Outcome {
                result: json!({ "isomorphic": g.is_some(), "transform": value(&g), "map": map }),
                text,
                ..Outcome::default()
            })
        }
        FamilyCommand::Moduli { triple, galois, without_i } => {
            let t = load_triple(triple)?;
            let field_i = !without_i;
            let base = if field_i { lcm(t.order(), 4) } else { t.order() };
            let ext = if galois.is_empty() {
                Extension::full(base)
            } else {
                let gens = galois.iter().map(|p| load_galois(p)).collect::<Result<Vec<_>, _>>()?;
                let n = gens.iter().fold(base, |n, g| lcm(n, g.order()));
                Extension { order: n, generators: gens }
            };
            let mf = family_moduli_field(&t, &ext, field_i)?;
            let mut text = vec![mf.description.clone()];
            for (n, v) in mf.generator_names.iter().zip(&mf.generators) {
                text.push(format!("{n} = {v}"));
            }
            Ok(Outcome {
                result: value(&mf),
                text,
                citations: vec!["field of moduli generated by the j-invariants of the family".into()],
                ..Outcome::default()
            })
        }
        FamilyCommand::Descend { triple } => {
            let t = load_triple(triple)?;
            let r = family_real_definability(&t)?;
            let mut text = vec![format!("{}", r.verdict.status)];
            if let Some(g) = &r.matched {
                text.push(format!("conjugation acts on (a, b, c) as {g}"));
            }
            if let Some(w) = &r.verdict.witness {
                text.push(format!("witness {w}"));
            }
            Ok(Outcome {
                result: value(&r),
                text,
                assumptions: vec![IOTA_NOTE.into()],
                citations: vec![r.verdict.citation.clone()],
            })
        }
        FamilyCommand::RationalDescend { triple, galois } => {
            let t = load_triple(triple)?;
            let gens = galois.iter().map(|p| load_galois(p)).collect::<Result<Vec<_>, _>>()?;
            let r = family_rational_descent(&t, &gens)?;
            let mut text = vec![format!("{} over {}", r.status, r.field)];
            for a in &r.assignments {
                text.push(format!("f at sigma_{} = {} ({})", a.sigma.exponent(), a.map, a.action));
            }
            text.push(format!("{} cocycle pairs checked", r.checked_pairs));
            Ok(Outcome {
                result: value(&r),
                text,
                assumptions: vec![IOTA_NOTE.into()],
                citations: vec![r.citation.clone()],
            })
        }
    }
}
