//! The input language: `surface { ... }` blocks describing an extended
//! divisor directly, and `presentation { ... }` blocks describing a blow-up
//! history.
//!
//! ```text
//! surface {
//!   conductor = 4
//!   weights = [0, 0, -3, -2, -3, -2, -3]
//!   outer = [2, 6]
//!   feather { at = 3, base = 1 }
//!   feather { at = 5, base = z }
//! }
//!
//! presentation {
//!   outer k=2 { M = [1, 2] }
//!   gap { word = "R RN RNF", feathers = [4: [1]] }
//!   outer k=6 { c = 0 }
//! }
//! ```
//!
//! Commas between entries are optional, `#` starts a comment, and gaps
//! between adjacent outer components may be left out.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::extdiv::{
    build_from_presentation, ExtDivError, ExtendedDivisor, FeatherSpec, Gap, GapWord, OuterLevel, Presentation,
};
use crate::field::{parse_scalar, CycNumber};
use crate::lexer::{tokenize, Cursor, Location, SyntaxError, Tok};
use crate::zigzag::Zigzag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{location}: {error}")]
    Invalid { location: Location, error: ExtDivError },
}

impl DocumentError {
    pub fn location(&self) -> Location {
        match self {
            DocumentError::Syntax(e) => e.location,
            DocumentError::Invalid { location, .. } => *location,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DocumentKind {
    Divisor,
    Presentation,
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DocumentKind::Divisor => "divisor",
            DocumentKind::Presentation => "presentation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Divisor {
        divisor: ExtendedDivisor,
        /// The advisory `outer = [...]` list, when given.
        outer: Option<Vec<usize>>,
    },
    Presentation(Presentation),
}

/// What a located clause describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clause {
    Conductor,
    Weights,
    Outer,
    UpToScalar,
    Feather { attach: usize, mother: usize, base: CycNumber },
    Level(usize),
    /// A gap clause, or the outer clause closing an omitted gap.
    Gap { start: usize, end: usize },
}

/// Where each clause of a document starts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SourceMap {
    pub block: Location,
    pub clauses: Vec<(Clause, Location)>,
}

impl SourceMap {
    fn find(&self, pred: impl Fn(&Clause) -> bool) -> Option<Location> {
        self.clauses.iter().find(|(c, _)| pred(c)).map(|(_, l)| *l)
    }

    fn rfind(&self, pred: impl Fn(&Clause) -> bool) -> Option<Location> {
        self.clauses.iter().rev().find(|(c, _)| pred(c)).map(|(_, l)| *l)
    }

    /// The clause that mentions component `i`.
    fn component(&self, i: usize) -> Option<Location> {
        self.find(|c| match c {
            Clause::Level(k) => *k == i,
            Clause::Feather { attach, mother, .. } => *attach == i || *mother == i,
            Clause::Gap { start, end } => *start < i && i < *end,
            _ => false,
        })
    }

    /// Best location for a validation error.
    pub fn locate(&self, error: &ExtDivError) -> Location {
        let found = match error {
            ExtDivError::Zigzag(_)
            | ExtDivError::NotStandard(_)
            | ExtDivError::NoFiberComponent
            | ExtDivError::NotRealizable => self.find(|c| *c == Clause::Weights),
            ExtDivError::OuterMismatch { .. } => self.find(|c| *c == Clause::Outer),
            ExtDivError::AttachOutOfRange { attach, .. } | ExtDivError::BadMother { attach, .. } => {
                self.find(|c| matches!(c, Clause::Feather { attach: a, .. } if a == attach))
            }
            ExtDivError::BadSelfIntersection(_) => self.find(|c| matches!(c, Clause::Feather { .. })),
            ExtDivError::DuplicateBasePoint { index, base } => self
                .rfind(|c| matches!(c, Clause::Feather { attach, base: b, .. } if attach == index && b.to_string() == *base))
                .or_else(|| self.component(*index)),
            ExtDivError::ZeroInnerBase { index } => self
                .find(|c| matches!(c, Clause::Feather { mother, base, .. } if mother == index && base.is_zero()))
                .or_else(|| self.component(*index)),
            ExtDivError::NonSmoothFeather { index } => self.component(*index),
            _ => None,
        };
        found.unwrap_or(self.block)
    }
}

/// A parsed and validated input document.
#[derive(Debug, Clone)]
pub struct SurfaceDocument {
    body: Body,
    source: SourceMap,
}

/// Documents compare by content; source locations are ignored.
impl PartialEq for SurfaceDocument {
    fn eq(&self, other: &Self) -> bool {
        self.body == other.body
    }
}

impl Eq for SurfaceDocument {}

impl SurfaceDocument {
    pub fn from_divisor(divisor: ExtendedDivisor) -> Self {
        SurfaceDocument {
            body: Body::Divisor { divisor, outer: None },
            source: SourceMap::default(),
        }
    }

    pub fn from_presentation(p: Presentation) -> Self {
        SurfaceDocument {
            body: Body::Presentation(p),
            source: SourceMap::default(),
        }
    }

    pub fn kind(&self) -> DocumentKind {
        match self.body {
            Body::Divisor { .. } => DocumentKind::Divisor,
            Body::Presentation(_) => DocumentKind::Presentation,
        }
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn source(&self) -> &SourceMap {
        &self.source
    }

    pub fn conductor(&self) -> u32 {
        match &self.body {
            Body::Divisor { divisor, .. } => divisor.conductor(),
            Body::Presentation(p) => p.conductor(),
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match &self.body {
            Body::Presentation(p) => Some(p),
            Body::Divisor { .. } => None,
        }
    }

    /// The extended divisor, built from the history for presentations.
    pub fn divisor(&self) -> Result<ExtendedDivisor, ExtDivError> {
        match &self.body {
            Body::Divisor { divisor, .. } => Ok(divisor.clone()),
            Body::Presentation(p) => build_from_presentation(p),
        }
    }
}

pub fn parse_document(text: &str) -> Result<SurfaceDocument, DocumentError> {
    let tokens = tokenize(text)?;
    let conductor = declared_conductor(&tokens)?;
    let mut p = Parser {
        cur: Cursor::new(tokens),
        conductor,
        source: SourceMap::default(),
    };
    let head = p.cur.advance();
    p.source.block = head.location;
    let doc = match &head.tok {
        Tok::Ident(name) if name == "surface" => p.surface()?,
        Tok::Ident(name) if name == "presentation" => p.presentation()?,
        other => {
            return Err(SyntaxError::syntax(
                head.location,
                format!("expected 'surface' or 'presentation', found {other}"),
            )
            .into())
        }
    };
    if !p.cur.is_eof() {
        let t = p.cur.peek();
        return Err(SyntaxError::syntax(t.location, format!("unexpected {} after the block", t.tok)).into());
    }
    Ok(doc)
}

/// Scalars need the conductor, which may be declared anywhere in the block.
fn declared_conductor(tokens: &[crate::lexer::Token]) -> Result<u32, SyntaxError> {
    for w in tokens.windows(3) {
        if w[0].tok == Tok::Ident("conductor".into()) && w[1].tok == Tok::Equals {
            if let Tok::Int(v) = &w[2].tok {
                return match u32::try_from(v) {
                    Ok(n) if n > 0 => Ok(n),
                    _ => Err(SyntaxError::syntax(w[2].location, "conductor must be a positive 32-bit integer")),
                };
            }
        }
    }
    Ok(1)
}

struct Parser {
    cur: Cursor,
    conductor: u32,
    source: SourceMap,
}

impl Parser {
    fn ident(&mut self) -> Result<(String, Location), SyntaxError> {
        let t = self.cur.advance();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.location)),
            other => Err(SyntaxError::syntax(t.location, format!("expected a key, found {other}"))),
        }
    }

    fn int(&mut self) -> Result<BigInt, SyntaxError> {
        let neg = self.cur.eat(&Tok::Minus);
        let t = self.cur.advance();
        match t.tok {
            Tok::Int(v) => Ok(if neg { -v } else { v }),
            other => Err(SyntaxError::syntax(t.location, format!("expected an integer, found {other}"))),
        }
    }

    fn small<T: TryFrom<BigInt>>(&mut self) -> Result<T, SyntaxError> {
        let at = self.cur.location();
        T::try_from(self.int()?).map_err(|_| SyntaxError::syntax(at, "integer out of range"))
    }

    fn scalar(&mut self) -> Result<CycNumber, SyntaxError> {
        parse_scalar(&mut self.cur, self.conductor)
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, SyntaxError>) -> Result<Vec<T>, SyntaxError> {
        self.cur.expect(&Tok::LBracket)?;
        let mut out = Vec::new();
        while !self.cur.eat(&Tok::RBracket) {
            if self.cur.is_eof() {
                return Err(SyntaxError::syntax(self.cur.location(), "unterminated list"));
            }
            out.push(item(self)?);
            self.cur.eat(&Tok::Comma);
        }
        Ok(out)
    }

    fn boolean(&mut self) -> Result<bool, SyntaxError> {
        let (word, at) = self.ident()?;
        match word.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(SyntaxError::syntax(at, format!("expected true or false, found '{word}'"))),
        }
    }

    fn string(&mut self) -> Result<String, SyntaxError> {
        let t = self.cur.advance();
        match t.tok {
            Tok::Str(s) => Ok(s),
            other => Err(SyntaxError::syntax(t.location, format!("expected a string, found {other}"))),
        }
    }

    /// Runs `entry` on each `key` up to the closing brace.
    fn entries(
        &mut self,
        mut entry: impl FnMut(&mut Self, &str, Location) -> Result<(), SyntaxError>,
    ) -> Result<(), SyntaxError> {
        self.cur.expect(&Tok::LBrace)?;
        while !self.cur.eat(&Tok::RBrace) {
            if self.cur.is_eof() {
                return Err(SyntaxError::syntax(self.cur.location(), "expected '}'"));
            }
            let (key, at) = self.ident()?;
            entry(self, &key, at)?;
            self.cur.eat(&Tok::Comma);
        }
        Ok(())
    }

    fn assign<T>(
        &mut self,
        slot: &mut Option<T>,
        key: &str,
        at: Location,
        value: impl FnOnce(&mut Self) -> Result<T, SyntaxError>,
    ) -> Result<(), SyntaxError> {
        if slot.is_some() {
            return Err(SyntaxError::syntax(at, format!("duplicate key '{key}'")));
        }
        self.cur.expect(&Tok::Equals)?;
        *slot = Some(value(self)?);
        Ok(())
    }

    fn invalid(&self, error: ExtDivError) -> DocumentError {
        DocumentError::Invalid {
            location: self.source.locate(&error),
            error,
        }
    }

    fn surface(&mut self) -> Result<SurfaceDocument, DocumentError> {
        let mut conductor: Option<u32> = None;
        let mut weights: Option<Vec<i64>> = None;
        let mut outer: Option<Vec<usize>> = None;
        let mut up_to_scalar: Option<bool> = None;
        let mut feathers = Vec::new();
        self.entries(|p, key, at| match key {
            "conductor" => {
                p.source.clauses.push((Clause::Conductor, at));
                p.assign(&mut conductor, key, at, Self::small)
            }
            "weights" => {
                p.source.clauses.push((Clause::Weights, at));
                p.assign(&mut weights, key, at, |p| p.list(Self::small))
            }
            "outer" => {
                p.source.clauses.push((Clause::Outer, at));
                p.assign(&mut outer, key, at, |p| p.list(Self::small))
            }
            "up_to_scalar" => {
                p.source.clauses.push((Clause::UpToScalar, at));
                p.assign(&mut up_to_scalar, key, at, Self::boolean)
            }
            "feather" => {
                let spec = p.feather(at)?;
                p.source.clauses.push((
                    Clause::Feather {
                        attach: spec.attach,
                        mother: spec.mother,
                        base: spec.base.clone(),
                    },
                    at,
                ));
                feathers.push(spec);
                Ok(())
            }
            other => Err(SyntaxError::syntax(at, format!("unknown key '{other}' in surface block"))),
        })?;
        let Some(weights) = weights else {
            return Err(SyntaxError::syntax(self.source.block, "surface block needs 'weights'").into());
        };
        let conductor = conductor.unwrap_or(1);
        let zigzag = Zigzag::new(weights).map_err(|e| self.invalid(e.into()))?;
        let mut divisor = ExtendedDivisor::new(zigzag, feathers, conductor).map_err(|e| self.invalid(e))?;
        divisor.set_up_to_scalar(up_to_scalar.unwrap_or(false));
        if let Some(declared) = &outer {
            let computed = divisor.outer_indices();
            if *declared != computed {
                return Err(self.invalid(ExtDivError::OuterMismatch {
                    declared: declared.clone(),
                    computed,
                }));
            }
        }
        Ok(SurfaceDocument {
            body: Body::Divisor { divisor, outer },
            source: std::mem::take(&mut self.source),
        })
    }

    fn feather(&mut self, at: Location) -> Result<FeatherSpec, SyntaxError> {
        let mut attach: Option<usize> = None;
        let mut base: Option<CycNumber> = None;
        let mut self_intersection: Option<i64> = None;
        let mut mother: Option<usize> = None;
        self.entries(|p, key, at| match key {
            "at" => p.assign(&mut attach, key, at, Self::small),
            "base" => p.assign(&mut base, key, at, Self::scalar),
            "self" => p.assign(&mut self_intersection, key, at, Self::small),
            "mother" => p.assign(&mut mother, key, at, Self::small),
            other => Err(SyntaxError::syntax(at, format!("unknown key '{other}' in feather"))),
        })?;
        let (Some(attach), Some(base)) = (attach, base) else {
            return Err(SyntaxError::syntax(at, "a feather needs 'at' and 'base'"));
        };
        Ok(FeatherSpec {
            attach,
            base,
            self_intersection: self_intersection.unwrap_or(-1),
            mother: mother.unwrap_or(attach),
        })
    }

    fn presentation(&mut self) -> Result<SurfaceDocument, DocumentError> {
        let mut conductor: Option<u32> = None;
        let mut levels: Vec<OuterLevel> = Vec::new();
        let mut gaps: Vec<Gap> = Vec::new();
        // A gap clause waiting for the outer component that closes it.
        let mut pending: Option<(Gap, Location)> = None;
        self.entries(|p, key, at| match key {
            "conductor" => {
                p.source.clauses.push((Clause::Conductor, at));
                p.assign(&mut conductor, key, at, Self::small)
            }
            "outer" => {
                let level = p.level()?;
                let Some(prev) = levels.last() else {
                    if let Some((_, gap_at)) = pending.take() {
                        return Err(SyntaxError::syntax(gap_at, "a gap must follow an outer component"));
                    }
                    p.source.clauses.push((Clause::Level(level.index), at));
                    levels.push(level);
                    return Ok(());
                };
                let (start, end) = (prev.index, level.index);
                let (gap, gap_at) = pending.take().unwrap_or((Gap::default(), at));
                if end <= start {
                    return Err(SyntaxError::syntax(at, format!("outer indices must increase: {start} then {end}")));
                }
                if gap.word.len() != end - start - 1 {
                    return Err(SyntaxError::syntax(
                        gap_at,
                        format!(
                            "gap between C_{start} and C_{end} needs a word of length {}, got {}",
                            end - start - 1,
                            gap.word.len()
                        ),
                    ));
                }
                p.source.clauses.push((Clause::Gap { start, end }, gap_at));
                p.source.clauses.push((Clause::Level(end), at));
                gaps.push(gap);
                levels.push(level);
                Ok(())
            }
            "gap" => {
                if pending.is_some() || levels.is_empty() {
                    return Err(SyntaxError::syntax(at, "a gap must sit between two outer components"));
                }
                pending = Some((p.gap()?, at));
                Ok(())
            }
            other => Err(SyntaxError::syntax(at, format!("unknown key '{other}' in presentation block"))),
        })?;
        if let Some((_, at)) = pending {
            return Err(SyntaxError::syntax(at, "a gap must be closed by an outer component").into());
        }
        let presentation =
            Presentation::new(conductor.unwrap_or(1), levels, gaps).map_err(|e| self.invalid(e))?;
        build_from_presentation(&presentation).map_err(|e| self.invalid(e))?;
        Ok(SurfaceDocument {
            body: Body::Presentation(presentation),
            source: std::mem::take(&mut self.source),
        })
    }

    /// `k=K { c = expr, M = [...] }`
    fn level(&mut self) -> Result<OuterLevel, SyntaxError> {
        let (key, at) = self.ident()?;
        if key != "k" {
            return Err(SyntaxError::syntax(at, format!("expected 'k=' after 'outer', found '{key}'")));
        }
        self.cur.expect(&Tok::Equals)?;
        let index: usize = self.small()?;
        let mut birth: Option<CycNumber> = None;
        let mut base_points: Option<Vec<CycNumber>> = None;
        self.entries(|p, key, at| match key {
            "c" => p.assign(&mut birth, key, at, Self::scalar),
            "M" => p.assign(&mut base_points, key, at, |p| p.list(Self::scalar)),
            other => Err(SyntaxError::syntax(at, format!("unknown key '{other}' in outer component"))),
        })?;
        Ok(OuterLevel {
            index,
            birth,
            base_points: base_points.unwrap_or_default(),
        })
    }

    /// `{ word = "...", feathers = [i: [...], ...] }`
    fn gap(&mut self) -> Result<Gap, SyntaxError> {
        let mut word: Option<GapWord> = None;
        let mut feathers: Option<BTreeMap<usize, Vec<CycNumber>>> = None;
        self.entries(|p, key, at| match key {
            "word" => p.assign(&mut word, key, at, |p| {
                let at = p.cur.location();
                let text = p.string()?;
                GapWord::parse(&text).map_err(|e| SyntaxError::syntax(at, e.to_string()))
            }),
            "feathers" => p.assign(&mut feathers, key, at, |p| {
                let mut map = BTreeMap::new();
                for (i, at, points) in p.list(|p| {
                    let at = p.cur.location();
                    let i: usize = p.small()?;
                    p.cur.expect(&Tok::Colon)?;
                    Ok((i, at, p.list(Self::scalar)?))
                })? {
                    if map.insert(i, points).is_some() {
                        return Err(SyntaxError::syntax(at, format!("C_{i} listed twice")));
                    }
                }
                Ok(map)
            }),
            other => Err(SyntaxError::syntax(at, format!("unknown key '{other}' in gap"))),
        })?;
        Ok(Gap {
            word: word.unwrap_or_default(),
            feathers: feathers.unwrap_or_default(),
        })
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Canonical text: defaults are left out and sets are in canonical order.
impl fmt::Display for SurfaceDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Divisor { divisor, outer } => {
                writeln!(f, "surface {{")?;
                if divisor.conductor() != 1 {
                    writeln!(f, "  conductor = {}", divisor.conductor())?;
                }
                writeln!(f, "  weights = [{}]", join(divisor.weights()))?;
                if let Some(outer) = outer {
                    writeln!(f, "  outer = [{}]", join(outer))?;
                }
                for feather in divisor.feathers() {
                    write!(f, "  feather {{ at = {}, base = {}", feather.attach, feather.base)?;
                    if feather.self_intersection != -1 {
                        write!(f, ", self = {}", feather.self_intersection)?;
                    }
                    if feather.mother != feather.attach {
                        write!(f, ", mother = {}", feather.mother)?;
                    }
                    writeln!(f, " }}")?;
                }
                if divisor.is_up_to_scalar() {
                    writeln!(f, "  up_to_scalar = true")?;
                }
                write!(f, "}}")
            }
            Body::Presentation(p) => {
                writeln!(f, "presentation {{")?;
                if p.conductor() != 1 {
                    writeln!(f, "  conductor = {}", p.conductor())?;
                }
                for (s, level) in p.levels().iter().enumerate() {
                    if s > 0 {
                        let gap = &p.gaps()[s - 1];
                        if !gap.word.is_empty() || !gap.feathers.is_empty() {
                            write!(f, "  gap {{ word = \"{}\"", gap.word)?;
                            if !gap.feathers.is_empty() {
                                let parts: Vec<String> = gap
                                    .feathers
                                    .iter()
                                    .map(|(i, pts)| format!("{i}: [{}]", join(pts)))
                                    .collect();
                                write!(f, ", feathers = [{}]", parts.join(", "))?;
                            }
                            writeln!(f, " }}")?;
                        }
                    }
                    let mut fields = Vec::new();
                    if let Some(c) = &level.birth {
                        fields.push(format!("c = {c}"));
                    }
                    if !level.base_points.is_empty() {
                        fields.push(format!("M = [{}]", join(&level.base_points)));
                    }
                    if fields.is_empty() {
                        writeln!(f, "  outer k={} {{ }}", level.index)?;
                    } else {
                        writeln!(f, "  outer k={} {{ {} }}", level.index, fields.join(", "))?;
                    }
                }
                write!(f, "}}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIRST: &str = "surface {
  weights = [0, 0, -3, -2, -3, -2, -3]
  feather { at = 3, base = 1 }
  feather { at = 5, base = 1 }
}";

    const FINAL: &str = "# two feathers, three outer components
surface {
  weights = [0, 0, -3, -2, -2, -3, -5, -2, -2, -3, -2]
  outer = [2, 6, 10]
  feather { at = 4, base = 1 }
  feather { at = 8, base = 1 }
}";

    const HISTORY: &str = "presentation {
  conductor = 4
  outer k=2 { M = [z, 1] }
  gap { word = \"R RN RNF\", feathers = [4: [1]] }
  outer k=6 { c = 0 }
  outer k=7 { c = -1, M = [2] }
}";

    #[test]
    fn parses_the_final_example() {
        let doc = parse_document(FINAL).unwrap();
        assert_eq!(doc.kind(), DocumentKind::Divisor);
        let e = doc.divisor().unwrap();
        assert_eq!(e.weights().len(), 11);
        assert_eq!(e.outer_indices(), vec![2, 6, 10]);
    }

    #[test]
    fn print_then_parse_is_identity() {
        for text in [FIRST, FINAL, HISTORY] {
            let doc = parse_document(text).unwrap();
            let printed = doc.to_string();
            let again = parse_document(&printed).unwrap();
            assert_eq!(again, doc);
            assert_eq!(again.to_string(), printed);
        }
        assert_eq!(parse_document(FIRST).unwrap().to_string(), FIRST);
        assert_eq!(parse_document(HISTORY).unwrap().to_string(), HISTORY);
    }

    #[test]
    fn omitted_gaps_and_loose_commas() {
        let doc = parse_document("presentation { outer k=2 { M = [1 2 3] }, }").unwrap();
        assert_eq!(doc.divisor().unwrap().weights(), &[0, 0, -3]);
        let doc = parse_document(HISTORY).unwrap();
        let p = doc.presentation().unwrap();
        assert_eq!(p.gaps().len(), 2);
        assert!(p.gaps()[1].word.is_empty());
    }

    #[test]
    fn zero_inner_base_point() {
        let text = "surface {\n  weights = [0, 0, -3, -2, -3, -2, -3]\n  feather { at = 3, base = 0 }\n  feather { at = 5, base = 1 }\n}";
        let err = parse_document(text).unwrap_err();
        assert!(err.to_string().contains("inner base point must be nonzero"), "{err}");
        assert_eq!(err.location(), Location { line: 3, column: 3 });
    }

    #[test]
    fn gap_word_length_is_checked() {
        let text = "presentation {\n  outer k=2 { }\n  gap { word = \"R RN\" }\n  outer k=6 { c = 0 }\n}";
        let err = parse_document(text).unwrap_err();
        assert_eq!(err.location(), Location { line: 3, column: 3 });
        assert!(err.to_string().contains("length 3"), "{err}");
        let err = parse_document("presentation {\n  outer k=2 { }\n  outer k=4 { c = 0 }\n}").unwrap_err();
        assert_eq!(err.location().line, 3);
    }

    #[test]
    fn errors_carry_locations() {
        let cases = [
            ("surface { weights = [0, 0, -3], colour = 1 }", (1, 33)),
            ("surface { weights = [0, 0, -3] ", (1, 32)),
            ("surface { weights = [0, 0, -3]\n  feather { at = 2, base = 1/0 } }", (2, 29)),
            ("surface {\n weights = [0, 0, 0]\n outer = [2, 3]\n}", (3, 2)),
            ("surface {\n weights = [0, 0, -1] }", (2, 2)),
            ("surface { weights = [0, 0, -3]\n feather { at = 2, base = 1 }\n feather { at = 2, base = 1 } }", (3, 2)),
            ("presentation {\n outer k=2 { c = 1 } }", (1, 1)),
            ("shape { }", (1, 1)),
            ("surface { weights = [0, 0, 0] } extra", (1, 33)),
        ];
        for (text, (line, column)) in cases {
            let err = parse_document(text).unwrap_err();
            assert_eq!(err.location(), Location { line, column }, "{text}: {err}");
        }
    }

    #[test]
    fn scalars_use_the_declared_conductor() {
        let doc = parse_document(
            "surface { feather { at = 2, base = z }, feather { at = 2, base = z^3 }, weights = [0, 0, -2], conductor = 4 }",
        )
        .unwrap();
        let e = doc.divisor().unwrap();
        assert_eq!(e.conductor(), 4);
        assert_eq!(e.feathers()[0].base.conductor(), 4);
    }

    #[test]
    fn extra_feather_fields() {
        let doc = parse_document(
            "surface { weights = [0, 0, -2, -2]\n feather { at = 3, base = 0, self = -2, mother = 2 }\n feather { at = 3, base = 1 } }",
        )
        .unwrap();
        let e = doc.divisor().unwrap();
        assert!(!e.is_minus_one());
        assert_eq!(parse_document(&doc.to_string()).unwrap(), doc);
        assert!(doc.to_string().contains("self = -2, mother = 2"));
    }
}
