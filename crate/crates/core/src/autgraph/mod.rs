//! The graph of 𝔸¹-fibration classes and hugeness of the automorphism group
//! for surfaces whose feathers sit on at most two inner components.

mod actions;
mod word;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::extdiv::{ComponentType, ExtDivError, ExtendedDivisor};
use crate::field::FieldError;
use crate::invariants::{config_equal, config_invariant, InvariantsError};

pub use actions::{
    jon_shift_action, torus_action, torus_characters, Character, Characters, Determinacy, ShiftedLevel,
    ShiftedPresentation,
};
pub use word::{reduce_word, Fibered, Move, MoveWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutGraphError {
    #[error("condition (*) fails: feathers on outer components or on more than two components")]
    ConditionFails,
    #[error("condition (*) holds with {0} outer components, but it allows at most three")]
    TooManyOuter(usize),
    #[error("level {t} outside 2..={r}")]
    InvalidLevel { t: usize, r: usize },
    #[error("torus scalars must be nonzero")]
    ZeroScalar,
    #[error(transparent)]
    ExtDiv(#[from] ExtDivError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Feather support under condition (*).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeatherProfile {
    /// Components with at least one feather.
    pub support: Vec<usize>,
    /// `s ≤ t`; equal when a single component carries feathers.
    pub s: Option<usize>,
    pub t: Option<usize>,
    /// The `r` of the outer indices `k_2 < ... < k_r`.
    pub r: usize,
}

/// No feather on an outer component and feathers on at most two components.
pub fn check_condition_star(e: &ExtendedDivisor) -> Result<Option<FeatherProfile>, AutGraphError> {
    let support: Vec<usize> = (2..=e.n()).filter(|&i| e.feather_count(i) > 0).collect();
    if support.len() > 2 || support.iter().any(|&i| e.component_type(i) == ComponentType::Plus) {
        return Ok(None);
    }
    let outer = e.outer_indices().len();
    if outer > 3 {
        return Err(AutGraphError::TooManyOuter(outer));
    }
    Ok(Some(FeatherProfile {
        s: support.first().copied(),
        t: support.last().copied(),
        support,
        r: outer + 1,
    }))
}

fn require_star(e: &ExtendedDivisor) -> Result<FeatherProfile, AutGraphError> {
    check_condition_star(e)?.ok_or(AutGraphError::ConditionFails)
}

/// Whether the surface and its reversion carry isomorphic 𝔸¹-fibrations.
fn unique_class(e: &ExtendedDivisor, profile: &FeatherProfile) -> Result<bool, AutGraphError> {
    if !e.zigzag().is_palindromic() {
        return Ok(false);
    }
    let (Some(s), Some(t)) = (profile.s, profile.t) else {
        return Ok(true);
    };
    if e.mirror(s) != t || e.feather_count(s) != e.feather_count(t) {
        return Ok(false);
    }
    let q = config_invariant(e)?;
    Ok(config_equal(&q.get(s).points, &q.get(t).points)?.is_some())
}

/// Number of conjugacy classes of 𝔸¹-fibrations: 1 or 2.
pub fn fibration_classes(e: &ExtendedDivisor) -> Result<u8, AutGraphError> {
    let profile = require_star(e)?;
    Ok(if unique_class(e, &profile)? { 1 } else { 2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowClass {
    /// Two vertices joined by one arrow and its inverse.
    SingleArrowPair,
    /// One vertex with a loop.
    Loop,
    /// Uncountably many arrows.
    UncountableFamily,
}

impl fmt::Display for ArrowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrowClass::SingleArrowPair => "single arrow pair",
            ArrowClass::Loop => "loop",
            ArrowClass::UncountableFamily => "uncountable family",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FvShape {
    pub vertex_count: u8,
    pub arrow_class: ArrowClass,
}

fn has_middle_outer(e: &ExtendedDivisor) -> bool {
    e.outer_indices().iter().any(|&i| i >= 3 && i < e.n())
}

pub fn fv_shape(e: &ExtendedDivisor) -> Result<FvShape, AutGraphError> {
    let vertex_count = fibration_classes(e)?;
    let arrow_class = match (has_middle_outer(e), vertex_count) {
        (true, _) => ArrowClass::UncountableFamily,
        (false, 1) => ArrowClass::Loop,
        (false, _) => ArrowClass::SingleArrowPair,
    };
    Ok(FvShape {
        vertex_count,
        arrow_class,
    })
}

/// Flags established by the criteria; `false` means "not established".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hugeness {
    pub not_countably_generated: bool,
    pub contains_uncountable_free: bool,
}

pub fn hugeness_verdict(e: &ExtendedDivisor) -> Result<Hugeness, AutGraphError> {
    let profile = require_star(e)?;
    let shape = fv_shape(e)?;
    let not_countably_generated = shape.arrow_class == ArrowClass::UncountableFamily;
    Ok(Hugeness {
        not_countably_generated,
        contains_uncountable_free: not_countably_generated && profile.r == 4 && shape.vertex_count == 2,
    })
}
