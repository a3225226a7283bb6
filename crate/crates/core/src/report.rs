//! Command dispatch over documents, with text and JSON renderings.
//!
//! JSON reports are objects tagged by `"command"`. Scalars are strings in the
//! document scalar syntax, sets are sorted arrays, and maps have sorted keys,
//! so identical input gives byte-identical output. Fields that a command
//! cannot establish for the given input are `null`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::autgraph::{
    check_condition_star, fv_shape, hugeness_verdict, jon_shift_action, torus_action, torus_characters,
    AutGraphError, Character, Determinacy, FeatherProfile, FvShape, Hugeness,
};
use crate::document::{DocumentKind, SurfaceDocument};
use crate::dot::{dext_dot, fv_dot};
use crate::extdiv::{dual_exceptional, exceptional_components, reverse_extdiv, ExtDivError, ExtendedDivisor};
use crate::field::{cyc_parse, CycNumber};
use crate::homogeneity::{nonhomogeneity_criterion, orbit_decomposition, HomogeneityError, InvariantSet, Verdict};
use crate::invariants::{config_invariant, is_symmetric, orbit_count, symmetry_group, Ambient, InvariantsError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Reverse,
    Orbits,
    Autgraph,
    /// De Jonquières shift by `a` at level `t`.
    Shift { a: String, level: usize },
    /// Torus element `(a, b)`.
    Torus { a: String, b: String },
    Dot,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Reverse => "reverse",
            Command::Orbits => "orbits",
            Command::Autgraph => "autgraph",
            Command::Shift { .. } => "shift",
            Command::Torus { .. } => "torus",
            Command::Dot => "dot",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error("{command} needs a {expected} document, got a {found} document")]
    KindMismatch {
        command: &'static str,
        expected: DocumentKind,
        found: DocumentKind,
    },
    #[error("argument {name}: {message}")]
    Argument { name: &'static str, message: String },
    #[error(transparent)]
    ExtDiv(#[from] ExtDivError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Homogeneity(#[from] HomogeneityError),
    #[error(transparent)]
    AutGraph(#[from] AutGraphError),
}

impl CommandError {
    /// 1 for usage errors, 2 for violated invariants, 3 when the input does
    /// not meet the hypotheses of the requested computation.
    pub fn exit_code(&self) -> i32 {
        use AutGraphError as A;
        match self {
            CommandError::KindMismatch { .. } | CommandError::Argument { .. } => 1,
            CommandError::AutGraph(A::InvalidLevel { .. } | A::ZeroScalar) => 1,
            CommandError::AutGraph(A::ConditionFails | A::TooManyOuter(_)) => 3,
            CommandError::ExtDiv(ExtDivError::NotMinusOne)
            | CommandError::Invariants(InvariantsError::NotMinusOne)
            | CommandError::Homogeneity(HomogeneityError::NotMinusOne)
            | CommandError::AutGraph(A::ExtDiv(ExtDivError::NotMinusOne)) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeatherEntry {
    pub label: String,
    pub attach: usize,
    pub base: CycNumber,
    #[serde(rename = "self")]
    pub self_intersection: i64,
    pub mother: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigurationEntry {
    pub index: usize,
    #[serde(rename = "type")]
    pub component_type: String,
    pub points: Vec<CycNumber>,
    /// `|G(A)|` for inner components; `null` for outer ones.
    pub symmetry_order: Option<u32>,
    pub orbit_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub kind: DocumentKind,
    pub conductor: u32,
    pub weights: Vec<i64>,
    /// `"+"` or `"*"` for C_2, ..., C_n.
    pub types: Vec<String>,
    pub outer: Vec<usize>,
    pub exceptional: Vec<usize>,
    pub dual_exceptional: Option<Vec<usize>>,
    pub minus_one: bool,
    pub up_to_scalar: bool,
    pub symmetric: Option<bool>,
    pub feathers: Vec<FeatherEntry>,
    pub configuration: Vec<ConfigurationEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitsReport {
    pub weights: Vec<i64>,
    pub outer: Vec<usize>,
    pub exceptional: Vec<usize>,
    pub dual_exceptional: Vec<usize>,
    pub symmetric: bool,
    /// The least inner, non-exceptional component carrying a feather.
    pub criterion_witness: Option<usize>,
    pub invariant_sets: Vec<InvariantSet>,
    pub o0: String,
    pub big_orbit_feathers: Vec<String>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutgraphReport {
    pub weights: Vec<i64>,
    pub outer: Vec<usize>,
    pub condition_star: bool,
    pub profile: Option<FeatherProfile>,
    pub fv: Option<FvShape>,
    pub hugeness: Option<Hugeness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReverseReport {
    pub weights: Vec<i64>,
    pub document: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedLevelEntry {
    pub index: usize,
    /// `null` for C_2, `"?"` when the shift leaves it undetermined.
    pub c: Option<String>,
    /// `null` when undetermined.
    #[serde(rename = "M")]
    pub base_points: Option<Vec<CycNumber>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub level: usize,
    pub a: CycNumber,
    pub exact: bool,
    pub levels: Vec<ShiftedLevelEntry>,
    /// The rewritten presentation, when every value is determined.
    pub document: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusReport {
    pub a: CycNumber,
    pub b: CycNumber,
    /// Weight `(p, q)` of the coordinate of each `M_i`.
    pub characters: BTreeMap<usize, Character>,
    /// Weight of the coordinate of each birth point `c_{k_s}`.
    pub birth_characters: BTreeMap<usize, Character>,
    pub document: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DotReport {
    /// File name and contents, in name order.
    pub files: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Analyze(AnalyzeReport),
    Reverse(ReverseReport),
    Orbits(OrbitsReport),
    Autgraph(AutgraphReport),
    Shift(ShiftReport),
    Torus(TorusReport),
    Dot(DotReport),
}

fn set(s: impl IntoIterator<Item = usize>) -> Vec<usize> {
    s.into_iter().collect()
}

fn scalar(name: &'static str, text: &str, conductor: u32) -> Result<CycNumber, CommandError> {
    cyc_parse(text, conductor).map_err(|e| CommandError::Argument {
        name,
        message: e.to_string(),
    })
}

fn require_presentation<'a>(
    command: &Command,
    doc: &'a SurfaceDocument,
) -> Result<&'a crate::extdiv::Presentation, CommandError> {
    doc.presentation().ok_or(CommandError::KindMismatch {
        command: command.name(),
        expected: DocumentKind::Presentation,
        found: doc.kind(),
    })
}

pub fn run_command(cmd: &Command, doc: &SurfaceDocument) -> Result<Report, CommandError> {
    match cmd {
        Command::Analyze => Ok(Report::Analyze(analyze(doc)?)),
        Command::Reverse => {
            let r = reverse_extdiv(&doc.divisor()?)?;
            Ok(Report::Reverse(ReverseReport {
                weights: r.weights().to_vec(),
                document: SurfaceDocument::from_divisor(r).to_string(),
            }))
        }
        Command::Orbits => Ok(Report::Orbits(orbits(&doc.divisor()?)?)),
        Command::Autgraph => Ok(Report::Autgraph(autgraph(&doc.divisor()?)?)),
        Command::Shift { a, level } => {
            let p = require_presentation(cmd, doc)?;
            let a = scalar("--a", a, p.conductor())?;
            let shifted = jon_shift_action(p, &a, *level)?;
            let levels = shifted
                .levels
                .iter()
                .map(|l| ShiftedLevelEntry {
                    index: l.index,
                    c: l.birth.as_ref().map(|c| match c {
                        Determinacy::Exact(c) => c.to_string(),
                        Determinacy::Indeterminate => "?".to_string(),
                    }),
                    base_points: l.base_points.exact().cloned(),
                })
                .collect();
            let document = match shifted.to_presentation() {
                Some(p) => Some(SurfaceDocument::from_presentation(p?).to_string()),
                None => None,
            };
            Ok(Report::Shift(ShiftReport {
                level: *level,
                a,
                exact: shifted.is_exact(),
                levels,
                document,
            }))
        }
        Command::Torus { a, b } => {
            let p = require_presentation(cmd, doc)?;
            let a = scalar("--a", a, p.conductor())?;
            let b = scalar("--b", b, p.conductor())?;
            let moved = torus_action(p, &a, &b)?;
            let chars = torus_characters(p);
            Ok(Report::Torus(TorusReport {
                a,
                b,
                characters: chars.components,
                birth_characters: chars.births,
                document: SurfaceDocument::from_presentation(moved).to_string(),
            }))
        }
        Command::Dot => {
            let e = doc.divisor()?;
            let mut files = BTreeMap::new();
            files.insert("dext.dot".to_string(), dext_dot(&e));
            if check_condition_star(&e)?.is_some() {
                files.insert("fv.dot".to_string(), fv_dot(&fv_shape(&e)?));
            }
            Ok(Report::Dot(DotReport { files }))
        }
    }
}

fn analyze(doc: &SurfaceDocument) -> Result<AnalyzeReport, CommandError> {
    let e = doc.divisor()?;
    let minus_one = e.is_minus_one();
    let q = config_invariant(&e)?;
    let mut configuration = Vec::new();
    for entry in &q.entries {
        let (symmetry_order, orbits) = match entry.points.ambient() {
            Ambient::Star => (
                symmetry_group(&entry.points)?.order(),
                Some(orbit_count(&entry.points)?),
            ),
            Ambient::Plus => (None, None),
        };
        configuration.push(ConfigurationEntry {
            index: entry.index,
            component_type: entry.component_type.to_string(),
            points: entry.points.points().to_vec(),
            symmetry_order,
            orbit_count: orbits,
        });
    }
    Ok(AnalyzeReport {
        kind: doc.kind(),
        conductor: e.conductor(),
        weights: e.weights().to_vec(),
        types: e.types().iter().map(ToString::to_string).collect(),
        outer: e.outer_indices(),
        exceptional: set(exceptional_components(&e)?),
        dual_exceptional: if minus_one { Some(set(dual_exceptional(&e)?)) } else { None },
        minus_one,
        up_to_scalar: e.is_up_to_scalar(),
        symmetric: if minus_one { Some(is_symmetric(&e)?.symmetric) } else { None },
        feathers: e
            .feathers()
            .iter()
            .map(|f| FeatherEntry {
                label: f.label.to_string(),
                attach: f.attach,
                base: f.base.clone(),
                self_intersection: f.self_intersection,
                mother: f.mother,
            })
            .collect(),
        configuration,
    })
}

fn orbits(e: &ExtendedDivisor) -> Result<OrbitsReport, CommandError> {
    let report = orbit_decomposition(e)?;
    Ok(OrbitsReport {
        weights: e.weights().to_vec(),
        outer: e.outer_indices(),
        exceptional: set(exceptional_components(e)?),
        dual_exceptional: set(dual_exceptional(e)?),
        symmetric: is_symmetric(e)?.symmetric,
        criterion_witness: nonhomogeneity_criterion(e)?,
        invariant_sets: report.invariant_sets,
        o0: report.o0_description,
        big_orbit_feathers: report.big_orbit_feathers.iter().map(ToString::to_string).collect(),
        verdict: report.verdict,
    })
}

/// When condition (*) fails the shape fields are `null`.
fn autgraph(e: &ExtendedDivisor) -> Result<AutgraphReport, CommandError> {
    let profile = check_condition_star(e)?;
    let (fv, hugeness) = if profile.is_some() {
        (Some(fv_shape(e)?), Some(hugeness_verdict(e)?))
    } else {
        (None, None)
    };
    Ok(AutgraphReport {
        weights: e.weights().to_vec(),
        outer: e.outer_indices(),
        condition_star: profile.is_some(),
        profile,
        fv,
        hugeness,
    })
}

fn braces(items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(items: &[CycNumber]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn points(items: &[CycNumber]) -> String {
    format!("{{{}}}", join(items))
}

impl Report {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let o = &mut out;
        match self {
            Report::Analyze(r) => {
                let weights: Vec<String> = r.weights.iter().map(ToString::to_string).collect();
                writeln!(o, "weights: [[{}]]", weights.join(", ")).unwrap();
                let types: Vec<String> =
                    r.types.iter().enumerate().map(|(k, t)| format!("C_{}{t}", k + 2)).collect();
                writeln!(o, "types: {}", types.join(" ")).unwrap();
                writeln!(o, "outer: {}", braces(&r.outer)).unwrap();
                writeln!(o, "exceptional: {}", braces(&r.exceptional)).unwrap();
                match &r.dual_exceptional {
                    Some(d) => writeln!(o, "dual exceptional: {}", braces(d)).unwrap(),
                    None => writeln!(o, "dual exceptional: n/a (not a (-1)-completion)").unwrap(),
                }
                writeln!(o, "(-1)-completion: {}", yes_no(r.minus_one)).unwrap();
                match r.symmetric {
                    Some(s) => writeln!(o, "symmetric: {}", yes_no(s)).unwrap(),
                    None => writeln!(o, "symmetric: n/a").unwrap(),
                }
                if r.up_to_scalar {
                    writeln!(o, "base points are defined up to a common scalar per component").unwrap();
                }
                writeln!(o, "configuration:").unwrap();
                for c in &r.configuration {
                    write!(o, "  Q_{} ({}) = {}", c.index, c.component_type, points(&c.points)).unwrap();
                    if let (Some(g), Some(m)) = (c.symmetry_order, c.orbit_count) {
                        write!(o, "  |G| = {g}, orbits = {m}").unwrap();
                    }
                    writeln!(o).unwrap();
                }
            }
            Report::Reverse(r) => {
                writeln!(o, "{}", r.document).unwrap();
            }
            Report::Orbits(r) => {
                writeln!(o, "exceptional: {}", braces(&r.exceptional)).unwrap();
                writeln!(o, "dual exceptional: {}", braces(&r.dual_exceptional)).unwrap();
                writeln!(o, "symmetric: {}", yes_no(r.symmetric)).unwrap();
                writeln!(o, "invariant sets:").unwrap();
                if r.invariant_sets.is_empty() {
                    writeln!(o, "  none").unwrap();
                }
                for s in &r.invariant_sets {
                    let members: Vec<String> = s.members.iter().map(ToString::to_string).collect();
                    writeln!(o, "  O_{{{},{}}} = {{{}}}", s.index, s.orbit, members.join(", ")).unwrap();
                }
                writeln!(o, "{}", r.o0).unwrap();
                if !r.big_orbit_feathers.is_empty() {
                    writeln!(o, "feathers meeting the big orbit: {}", r.big_orbit_feathers.join(", ")).unwrap();
                }
                writeln!(o, "verdict: {}", r.verdict).unwrap();
            }
            Report::Autgraph(r) => {
                writeln!(o, "condition (*): {}", if r.condition_star { "holds" } else { "fails" }).unwrap();
                if let Some(p) = &r.profile {
                    let st = match (p.s, p.t) {
                        (Some(s), Some(t)) => format!("s = {s}, t = {t}"),
                        _ => "no feathers".to_string(),
                    };
                    writeln!(o, "  {st}, r = {}", p.r).unwrap();
                }
                if let Some(fv) = &r.fv {
                    writeln!(o, "fibration graph: {} vertices, {}", fv.vertex_count, fv.arrow_class).unwrap();
                }
                if let Some(h) = &r.hugeness {
                    writeln!(o, "not countably generated: {}", yes_no(h.not_countably_generated)).unwrap();
                    writeln!(o, "contains an uncountable free subgroup: {}", yes_no(h.contains_uncountable_free))
                        .unwrap();
                }
            }
            Report::Shift(r) => match &r.document {
                Some(d) => writeln!(o, "{d}").unwrap(),
                None => {
                    writeln!(o, "shift by {} at level {} (? = not determined):", r.a, r.level).unwrap();
                    for l in &r.levels {
                        write!(o, "  C_{}:", l.index).unwrap();
                        if let Some(c) = &l.c {
                            write!(o, " c = {c}").unwrap();
                        }
                        match &l.base_points {
                            Some(m) => writeln!(o, " M = [{}]", join(m)).unwrap(),
                            None => writeln!(o, " M = ?").unwrap(),
                        }
                    }
                }
            },
            Report::Torus(r) => {
                writeln!(o, "{}", r.document).unwrap();
            }
            Report::Dot(r) => {
                for name in r.files.keys() {
                    writeln!(o, "{name}").unwrap();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_document;

    const FIRST: &str = "surface {
  weights = [0, 0, -3, -2, -3, -2, -3]
  feather { at = 3, base = 1 }
  feather { at = 5, base = 1 }
}";

    const FINAL: &str = "presentation {
  outer k=2 { }
  gap { word = \"R RN RNF\", feathers = [4: [1]] }
  outer k=6 { c = 0 }
  gap { word = \"R RN RNF\", feathers = [8: [1]] }
  outer k=10 { c = 0 }
}";

    fn run(cmd: Command, text: &str) -> Result<Report, CommandError> {
        run_command(&cmd, &parse_document(text).unwrap())
    }

    #[test]
    fn analyze_first_example() {
        let Report::Analyze(r) = run(Command::Analyze, FIRST).unwrap() else { panic!() };
        assert_eq!(r.exceptional, vec![4, 5]);
        assert_eq!(r.outer, vec![2, 6]);
        assert!(r.minus_one);
    }

    #[test]
    fn orbits_on_the_final_example() {
        let Report::Orbits(r) = run(Command::Orbits, FINAL).unwrap() else { panic!() };
        assert_eq!(r.invariant_sets.len(), 2);
        assert!(r.invariant_sets.iter().all(|s| s.members.len() == 1));
        assert_eq!(r.verdict, Verdict::NonHomogeneous(4));
        let json = Report::Orbits(r).to_json();
        assert!(json.contains("\"kind\": \"non-homogeneous\""), "{json}");
    }

    #[test]
    fn autgraph_without_condition_star() {
        let text = "surface { weights = [0, 0, -3]\n feather { at = 2, base = 1 } feather { at = 2, base = 2 } feather { at = 2, base = 3 } }";
        let Report::Autgraph(r) = run(Command::Autgraph, text).unwrap() else { panic!() };
        assert!(!r.condition_star);
        assert!(r.fv.is_none());
        assert!(Report::Autgraph(r).to_json().contains("\"hugeness\": null"));
    }

    #[test]
    fn kind_mismatch_and_exit_codes() {
        let err = run(Command::Shift { a: "1".into(), level: 2 }, FIRST).unwrap_err();
        assert!(matches!(err, CommandError::KindMismatch { .. }));
        assert_eq!(err.exit_code(), 1);
        let not_minus_one = "surface { weights = [0, 0, -2, -2]\n feather { at = 3, base = 0, self = -2, mother = 2 }\n feather { at = 3, base = 1 } }";
        let err = run(Command::Orbits, not_minus_one).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let err = run(Command::Shift { a: "1/0".into(), level: 2 }, FINAL).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        let err = run(Command::Shift { a: "1".into(), level: 9 }, FINAL).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn shift_and_torus_rewrite_presentations() {
        let Report::Shift(r) = run(Command::Shift { a: "0".into(), level: 2 }, FINAL).unwrap() else { panic!() };
        assert!(r.exact);
        assert_eq!(parse_document(r.document.as_ref().unwrap()).unwrap(), parse_document(FINAL).unwrap());
        let Report::Shift(r) = run(Command::Shift { a: "1".into(), level: 2 }, FINAL).unwrap() else { panic!() };
        assert!(!r.exact && r.document.is_none());
        assert!(Report::Shift(r).to_text().contains('?'));
        let Report::Torus(r) = run(Command::Torus { a: "1".into(), b: "1".into() }, FINAL).unwrap() else { panic!() };
        assert_eq!(parse_document(&r.document).unwrap(), parse_document(FINAL).unwrap());
    }

    #[test]
    fn reverse_and_dot() {
        let Report::Reverse(r) = run(Command::Reverse, FIRST).unwrap() else { panic!() };
        assert_eq!(r.weights, vec![0, 0, -3, -2, -3, -2, -3]);
        let doc = parse_document(&r.document).unwrap();
        assert!(doc.divisor().unwrap().is_up_to_scalar());
        let Report::Dot(d) = run(Command::Dot, FINAL).unwrap() else { panic!() };
        assert_eq!(d.files.keys().collect::<Vec<_>>(), vec!["dext.dot", "fv.dot"]);
    }
}
