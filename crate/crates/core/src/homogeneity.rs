//! Aut(V)-invariant subsets spanned by feather intersection points, and the
//! resulting homogeneity verdict.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::extdiv::{
    dual_exceptional, exceptional_components, ComponentType, ExtDivError, ExtendedDivisor, FeatherLabel,
};
use crate::field::CycNumber;
use crate::invariants::{is_symmetric, orbit_partition, Ambient, InvariantsError, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomogeneityError {
    #[error("a (-1)-completion is required")]
    NotMinusOne,
    #[error(transparent)]
    ExtDiv(#[from] ExtDivError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
}

/// The point `F_{i,l} ∩ F^∨_{i,l}`, named by its feather.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntersectionPoint(pub FeatherLabel);

impl fmt::Display for IntersectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let FeatherLabel { index, j } = self.0;
        write!(f, "F_{{{index},{j}}} ∩ F^∨_{{{index},{j}}}")
    }
}

impl Serialize for IntersectionPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `O_{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantSet {
    pub index: usize,
    pub orbit: usize,
    pub members: Vec<IntersectionPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "witness", rename_all = "kebab-case")]
pub enum Verdict {
    /// Some inner, non-exceptional component carries a feather.
    NonHomogeneous(usize),
    /// Non-homogeneous, and the invariant sets with `O_0` are exactly the orbits.
    ExactDecomposition,
    Homogeneous,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NonHomogeneous(i) => write!(f, "not homogeneous (feather on C_{i})"),
            Verdict::ExactDecomposition => f.write_str("not homogeneous; orbit decomposition is exact"),
            Verdict::Homogeneous => f.write_str("homogeneous"),
            Verdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

pub const O0_DESCRIPTION: &str = "O_0 = V minus the union of the sets O_{i,j}; contains the big orbit";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub invariant_sets: Vec<InvariantSet>,
    pub o0_description: String,
    pub verdict: Verdict,
    pub big_orbit_feathers: Vec<FeatherLabel>,
}

fn require_minus_one(e: &ExtendedDivisor) -> Result<(), HomogeneityError> {
    if e.is_minus_one() {
        Ok(())
    } else {
        Err(HomogeneityError::NotMinusOne)
    }
}

/// `𝔈_D ∪ 𝔈^∨_{D^∨}`.
pub fn exceptional_union(e: &ExtendedDivisor) -> Result<BTreeSet<usize>, HomogeneityError> {
    let mut s = exceptional_components(e)?;
    s.extend(dual_exceptional(e)?);
    Ok(s)
}

/// Inner components outside the exceptional sets, which carry feathers.
fn witnesses(e: &ExtendedDivisor, exceptional: &BTreeSet<usize>) -> Vec<usize> {
    (2..=e.n())
        .filter(|&i| {
            e.component_type(i) == ComponentType::Star && !exceptional.contains(&i) && e.feather_count(i) > 0
        })
        .collect()
}

/// Feathers whose affine part lies in the big orbit.
pub fn big_orbit_feathers(e: &ExtendedDivisor) -> Result<Vec<FeatherLabel>, HomogeneityError> {
    require_minus_one(e)?;
    let exceptional = exceptional_union(e)?;
    Ok(e.feathers()
        .iter()
        .filter(|f| e.component_type(f.attach) == ComponentType::Plus || exceptional.contains(&f.attach))
        .map(|f| f.label)
        .collect())
}

/// The sufficient condition for non-homogeneity, with the least witness.
pub fn nonhomogeneity_criterion(e: &ExtendedDivisor) -> Result<Option<usize>, HomogeneityError> {
    require_minus_one(e)?;
    let exceptional = exceptional_union(e)?;
    Ok(witnesses(e, &exceptional).first().copied())
}

fn label_of(e: &ExtendedDivisor, i: usize, point: &CycNumber) -> IntersectionPoint {
    let f = e
        .feathers_on(i)
        .find(|f| &f.base == point)
        .expect("orbit point is a base point");
    IntersectionPoint(f.label)
}

pub fn orbit_decomposition(e: &ExtendedDivisor) -> Result<OrbitReport, HomogeneityError> {
    require_minus_one(e)?;
    let n = e.n();
    let exceptional = exceptional_union(e)?;
    let symmetry = is_symmetric(e)?;
    let mut invariant_sets = Vec::new();

    for i in witnesses(e, &exceptional) {
        if symmetry.symmetric && i > n / 2 + 1 {
            continue;
        }
        let a = PointSet::new(e.feathers_on(i).map(|f| f.base.clone()).collect(), Ambient::Star)?;
        for (j, orbit) in orbit_partition(&a)?.iter().enumerate() {
            let mut members: Vec<IntersectionPoint> = orbit.iter().map(|p| label_of(e, i, p)).collect();
            let mirror = e.mirror(i);
            if symmetry.symmetric && mirror != i {
                let alpha = &symmetry.alphas[&i];
                members.extend(orbit.iter().map(|p| label_of(e, mirror, &(alpha * p))));
            }
            members.sort();
            invariant_sets.push(InvariantSet {
                index: i,
                orbit: j + 1,
                members,
            });
        }
    }

    let feathered = (2..=n).filter(|&i| e.feather_count(i) > 0).count();
    let verdict = match witnesses(e, &exceptional).first() {
        Some(_) if feathered == 1 => Verdict::ExactDecomposition,
        Some(&w) => Verdict::NonHomogeneous(w),
        None if n <= 3 || feathered == 1 => Verdict::Homogeneous,
        None => Verdict::Inconclusive,
    };

    Ok(OrbitReport {
        invariant_sets,
        o0_description: O0_DESCRIPTION.to_string(),
        verdict,
        big_orbit_feathers: big_orbit_feathers(e)?,
    })
}
