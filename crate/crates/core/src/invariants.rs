//! Configuration data of feather base points: symmetry groups of finite
//! subsets of ℂ*, their orbits, and equality up to `ℂ*` or `Aut(𝔸¹)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::extdiv::{ComponentType, ExtendedDivisor};
use crate::field::{CycNumber, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("0 is not a point of ℂ*")]
    ZeroInStar,
    #[error("point {0} listed twice")]
    DuplicatePoint(String),
    #[error("multiplicative symmetry is undefined for points of 𝔸¹")]
    PlusAmbient,
    #[error("cannot compare point sets of different ambients")]
    AmbientMismatch,
    #[error("a (-1)-completion is required")]
    NotMinusOne,
    #[error("the symmetry group of {0} is not cyclic")]
    NotCyclic(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Where the points live: `ℂ*` for inner components, `𝔸¹` for outer ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Star,
    Plus,
}

impl From<ComponentType> for Ambient {
    fn from(t: ComponentType) -> Self {
        match t {
            ComponentType::Star => Ambient::Star,
            ComponentType::Plus => Ambient::Plus,
        }
    }
}

/// A finite set of distinct points, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<CycNumber>,
    ambient: Ambient,
}

impl PointSet {
    pub fn new(mut points: Vec<CycNumber>, ambient: Ambient) -> Result<Self, InvariantsError> {
        if ambient == Ambient::Star && points.iter().any(CycNumber::is_zero) {
            return Err(InvariantsError::ZeroInStar);
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(InvariantsError::DuplicatePoint(w[0].to_string()));
        }
        Ok(PointSet { points, ambient })
    }

    pub fn empty(ambient: Ambient) -> Self {
        PointSet {
            points: Vec::new(),
            ambient,
        }
    }

    pub fn points(&self) -> &[CycNumber] {
        &self.points
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &CycNumber) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// `α·A + β`, re-sorted.
    pub fn affine_image(&self, alpha: &CycNumber, beta: &CycNumber) -> Vec<CycNumber> {
        let mut v: Vec<CycNumber> = self.points.iter().map(|p| alpha * p + beta).collect();
        v.sort();
        v
    }

    /// `α·A`, re-sorted.
    pub fn scaled(&self, alpha: &CycNumber) -> Vec<CycNumber> {
        let mut v: Vec<CycNumber> = self.points.iter().map(|p| alpha * p).collect();
        v.sort();
        v
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.points.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// `G(A) = {α ∈ ℂ* | αA = A}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryGroup {
    /// `G(∅) = ℂ*`.
    Full,
    /// The cyclic group of `order`-th roots of unity.
    Cyclic { order: u32, generator: CycNumber },
}

impl SymmetryGroup {
    pub fn order(&self) -> Option<u32> {
        match self {
            SymmetryGroup::Full => None,
            SymmetryGroup::Cyclic { order, .. } => Some(*order),
        }
    }
}

/// Brute force over the ratios `b/a` for a fixed `a ∈ A`.
pub fn symmetry_group(a: &PointSet) -> Result<SymmetryGroup, InvariantsError> {
    if a.ambient == Ambient::Plus {
        return Err(InvariantsError::PlusAmbient);
    }
    let Some(first) = a.points.first() else {
        return Ok(SymmetryGroup::Full);
    };
    let mut elements = Vec::new();
    for b in &a.points {
        let alpha = b.checked_div(first)?;
        if a.scaled(&alpha) == a.points {
            elements.push(alpha);
        }
    }
    let order = elements.len() as u32;
    let mut generators = Vec::new();
    for g in elements {
        if g.root_of_unity_order()? == Some(order) {
            generators.push(g);
        }
    }
    let generator = generators
        .into_iter()
        .min()
        .ok_or_else(|| InvariantsError::NotCyclic(a.to_string()))?;
    Ok(SymmetryGroup::Cyclic { order, generator })
}

/// The `G(A)`-orbits of `A`, each sorted, listed by their least point.
pub fn orbit_partition(a: &PointSet) -> Result<Vec<Vec<CycNumber>>, InvariantsError> {
    let generator = match symmetry_group(a)? {
        SymmetryGroup::Full => return Ok(Vec::new()),
        SymmetryGroup::Cyclic { generator, .. } => generator,
    };
    let mut taken = vec![false; a.len()];
    let mut orbits = Vec::new();
    for start in 0..a.len() {
        if taken[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut p = a.points[start].clone();
        loop {
            let k = a.points.binary_search(&p).expect("orbit stays in A");
            if taken[k] {
                break;
            }
            taken[k] = true;
            orbit.push(p.clone());
            p = &p * &generator;
        }
        orbit.sort();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// `m(A)`, the number of `G(A)`-orbits; `m(∅) = 0`.
pub fn orbit_count(a: &PointSet) -> Result<usize, InvariantsError> {
    Ok(orbit_partition(a)?.len())
}

/// Why two configurations agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigWitness {
    /// `B = α·A`.
    Scalar(CycNumber),
    /// `B = α·A + β`.
    Affine { alpha: CycNumber, beta: CycNumber },
}

/// Equality in `𝔐*` (up to `ℂ*`) or `𝔐⁺` (up to `Aut(𝔸¹)`), with a witness.
pub fn config_equal(a: &PointSet, b: &PointSet) -> Result<Option<ConfigWitness>, InvariantsError> {
    if a.ambient != b.ambient {
        return Err(InvariantsError::AmbientMismatch);
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let conductor = a.points.iter().chain(&b.points).map(CycNumber::conductor).max().unwrap_or(1);
    let one = CycNumber::one(conductor);
    let zero = CycNumber::zero(conductor);
    match a.ambient {
        Ambient::Star => {
            let Some(first) = a.points.first() else {
                return Ok(Some(ConfigWitness::Scalar(one)));
            };
            for q in &b.points {
                let alpha = q.checked_div(first)?;
                if a.scaled(&alpha) == b.points {
                    return Ok(Some(ConfigWitness::Scalar(alpha)));
                }
            }
            Ok(None)
        }
        Ambient::Plus => match a.points.as_slice() {
            [] => Ok(Some(ConfigWitness::Affine { alpha: one, beta: zero })),
            [p] => Ok(Some(ConfigWitness::Affine {
                alpha: one,
                beta: &b.points[0] - p,
            })),
            [p0, p1, ..] => {
                let d = p1 - p0;
                for q0 in &b.points {
                    for q1 in b.points.iter().filter(|q| *q != q0) {
                        let alpha = (q1 - q0).checked_div(&d)?;
                        let beta = q0 - &alpha * p0;
                        if a.affine_image(&alpha, &beta) == b.points {
                            return Ok(Some(ConfigWitness::Affine { alpha, beta }));
                        }
                    }
                }
                Ok(None)
            }
        },
    }
}

/// `Q_i` for one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub index: usize,
    pub component_type: ComponentType,
    pub points: PointSet,
}

/// `Q(X, D) = (Q_2, ..., Q_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigInvariant {
    pub entries: Vec<ConfigEntry>,
}

impl ConfigInvariant {
    pub fn get(&self, i: usize) -> &ConfigEntry {
        &self.entries[i - 2]
    }

    /// Componentwise equality of configuration classes.
    pub fn equivalent(&self, other: &ConfigInvariant) -> Result<bool, InvariantsError> {
        if self.entries.len() != other.entries.len() {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if a.component_type != b.component_type || config_equal(&a.points, &b.points)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Q_i` is the set of base points of the feathers born on `C_i`. A feather
/// born on an outer component and carried to the next one by the blow-up of
/// `c_{i+1}` keeps that point as its base, so the collection already contains
/// `c_{i+1}` whenever it is required.
pub fn config_invariant(e: &ExtendedDivisor) -> Result<ConfigInvariant, InvariantsError> {
    let entries = (2..=e.n())
        .map(|i| {
            let t = e.component_type(i);
            let points = e.feathers_with_mother(i).map(|f| f.base.clone()).collect();
            Ok(ConfigEntry {
                index: i,
                component_type: t,
                points: PointSet::new(points, t.into())?,
            })
        })
        .collect::<Result<_, InvariantsError>>()?;
    Ok(ConfigInvariant { entries })
}

/// Outcome of the symmetry test for a (-1)-completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    /// Weights palindromic, `r_i = r_{i^∨}` and `Q_i = Q_{i^∨}` for all `i`.
    pub symmetric: bool,
    /// Only `Q_i = Q_{i^∨}` for all `i`.
    pub literal: bool,
    /// `α_i` with `A_{i^∨} = α_i·A_i`, for inner `i` with feathers, when symmetric.
    pub alphas: BTreeMap<usize, CycNumber>,
}

pub fn is_symmetric(e: &ExtendedDivisor) -> Result<Symmetry, InvariantsError> {
    if !e.is_minus_one() {
        return Err(InvariantsError::NotMinusOne);
    }
    let q = config_invariant(e)?;
    let mut literal = true;
    let mut alphas = BTreeMap::new();
    for i in 2..=e.n() {
        let (a, b) = (q.get(i), q.get(e.mirror(i)));
        let witness = if a.points.ambient() == b.points.ambient() {
            config_equal(&a.points, &b.points)?
        } else {
            None
        };
        match witness {
            None => literal = false,
            Some(ConfigWitness::Scalar(alpha)) if !a.points.is_empty() => {
                alphas.insert(i, alpha);
            }
            Some(_) => {}
        }
    }
    let n = e.n();
    let symmetric = literal
        && e.zigzag().is_palindromic()
        && (2..=n).all(|i| e.feather_count(i) == e.feather_count(e.mirror(i)));
    if !symmetric {
        alphas.clear();
    }
    Ok(Symmetry {
        symmetric,
        literal,
        alphas,
    })
}
