//! Words in reversions and fibered modifications, and their reduction.

use std::fmt;

use crate::field::CycNumber;

/// A fibered modification, kept as a freely reduced word in named generators.
/// Each factor is `(name, inverted)`, listed in order of application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fibered {
    factors: Vec<(String, bool)>,
}

impl Fibered {
    pub fn named(name: impl Into<String>) -> Self {
        Fibered {
            factors: vec![(name.into(), false)],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Fibered {
            factors: self.factors.iter().rev().map(|(n, inv)| (n.clone(), !inv)).collect(),
        }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Fibered) -> Self {
        let mut factors = self.factors.clone();
        for f in &then.factors {
            match factors.last() {
                Some((n, inv)) if n == &f.0 && *inv != f.1 => {
                    factors.pop();
                }
                _ => factors.push(f.clone()),
            }
        }
        Fibered { factors }
    }
}

impl fmt::Display for Fibered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .rev()
            .map(|(n, inv)| if *inv { format!("{n}⁻¹") } else { n.clone() })
            .collect();
        f.write_str(&parts.join("∘"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// The reversion centred at `center`, or the inverse of such a reversion.
    Reversion { center: CycNumber, inverted: bool },
    Fibered(Fibered),
}

impl Move {
    pub fn reversion(center: CycNumber) -> Self {
        Move::Reversion {
            center,
            inverted: false,
        }
    }

    pub fn fibered(name: impl Into<String>) -> Self {
        Move::Fibered(Fibered::named(name))
    }

    pub fn inverse(&self) -> Self {
        match self {
            Move::Reversion { center, inverted } => Move::Reversion {
                center: center.clone(),
                inverted: !inverted,
            },
            Move::Fibered(h) => Move::Fibered(h.inverse()),
        }
    }

    pub fn is_reversion(&self) -> bool {
        matches!(self, Move::Reversion { .. })
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Reversion { center, inverted: false } => write!(f, "R({center})"),
            Move::Reversion { center, inverted: true } => write!(f, "R({center})⁻¹"),
            Move::Fibered(h) => write!(f, "F({h})"),
        }
    }
}

/// `φ_m ∘ ... ∘ φ_1`, stored as `[φ_1, ..., φ_m]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveWord(pub Vec<Move>);

impl MoveWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        MoveWord(self.0.iter().rev().map(Move::inverse).collect())
    }

    /// No two neighbours are of the same kind.
    pub fn alternates(&self) -> bool {
        self.0.windows(2).all(|w| w[0].is_reversion() != w[1].is_reversion())
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.0.iter().rev().map(ToString::to_string).collect();
        f.write_str(&parts.join(" ∘ "))
    }
}

/// Cancels a reversion followed by its inverse, composes neighbouring fibered
/// modifications and drops those that compose to the identity.
pub fn reduce_word(w: &MoveWord) -> MoveWord {
    let mut out: Vec<Move> = Vec::with_capacity(w.len());
    for m in &w.0 {
        match (out.last(), m) {
            (Some(Move::Fibered(prev)), Move::Fibered(next)) => {
                let merged = prev.then(next);
                out.pop();
                if !merged.is_identity() {
                    out.push(Move::Fibered(merged));
                }
            }
            (Some(prev @ Move::Reversion { .. }), Move::Reversion { .. }) if prev.inverse() == *m => {
                out.pop();
            }
            (_, Move::Fibered(h)) if h.is_identity() => {}
            _ => out.push(m.clone()),
        }
    }
    MoveWord(out)
}
