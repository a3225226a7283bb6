//! Extended divisors: the boundary zigzag together with the feathers of the
//! degenerate fiber, their classification and the exceptional components.

mod exceptional;
pub mod presentation;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::CycNumber;
use crate::zigzag::{reverse_zigzag, WeightedTree, Zigzag, ZigzagError};

pub use exceptional::{dual_exceptional, exceptional_components};
pub use presentation::{
    build_from_presentation, chart_matrices, gap_charts, ChartMatrix, Gap, GapCharts, GapWord,
    OuterLevel, Presentation, Side,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtDivError {
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
    #[error("boundary {0} is not in standard form")]
    NotStandard(Zigzag),
    #[error("an extended divisor needs at least the component C_2")]
    NoFiberComponent,
    #[error("feather attached at {attach} outside 2..={n}")]
    AttachOutOfRange { attach: usize, n: usize },
    #[error("feather attached at {attach} has mother {mother}; need 2 <= mother <= attach")]
    BadMother { attach: usize, mother: usize },
    #[error("feather self-intersection {0} must be <= -1")]
    BadSelfIntersection(i64),
    #[error("two feathers on C_{index} share the base point {base}")]
    DuplicateBasePoint { index: usize, base: String },
    #[error("inner base point must be nonzero (component C_{index})")]
    ZeroInnerBase { index: usize },
    #[error("the fiber C_2..C_n plus feathers does not contract to a single 0-curve")]
    NotRealizable,
    #[error("a (-1)-completion is required")]
    NotMinusOne,
    #[error("no feather labelled {0}")]
    UnknownLabel(FeatherLabel),
    #[error("gap C_{start}..C_{end} has several maximal exceptional chains")]
    AmbiguousExceptional { start: usize, end: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid gap word {word:?}: {reason}")]
    InvalidGapWord { word: String, reason: String },
    #[error("blow-up history yields {0}, which is not standard")]
    InvalidHistory(Zigzag),
    #[error("a base point of M_{index} lies on a transported feather; the feather would not be smooth")]
    NonSmoothFeather { index: usize },
    #[error("declared outer components {declared:?} but the classification gives {computed:?}")]
    OuterMismatch {
        declared: Vec<usize>,
        computed: Vec<usize>,
    },
}

/// Inner (`*`) or outer (`+`) boundary component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentType {
    Star,
    Plus,
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentType::Star => "*",
            ComponentType::Plus => "+",
        })
    }
}

impl Serialize for ComponentType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `F_{i,j}`: the j-th feather attached to C_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatherLabel {
    pub index: usize,
    pub j: usize,
}

impl FeatherLabel {
    pub fn new(index: usize, j: usize) -> Self {
        FeatherLabel { index, j }
    }
}

impl fmt::Display for FeatherLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{},{}}}", self.index, self.j)
    }
}

impl Serialize for FeatherLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Input data for one feather, before labels are assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatherSpec {
    pub attach: usize,
    /// The point of the mother component blown up to create the feather.
    pub base: CycNumber,
    pub self_intersection: i64,
    pub mother: usize,
}

impl FeatherSpec {
    /// A (-1)-feather born on the component it is attached to.
    pub fn minus_one(attach: usize, base: CycNumber) -> Self {
        FeatherSpec {
            attach,
            base,
            self_intersection: -1,
            mother: attach,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feather {
    pub attach: usize,
    pub base: CycNumber,
    pub self_intersection: i64,
    pub mother: usize,
    pub label: FeatherLabel,
}

impl Feather {
    pub fn is_minus_one(&self) -> bool {
        self.self_intersection == -1 && self.mother == self.attach
    }

    pub fn spec(&self) -> FeatherSpec {
        FeatherSpec {
            attach: self.attach,
            base: self.base.clone(),
            self_intersection: self.self_intersection,
            mother: self.mother,
        }
    }
}

/// Vertex labels for trees built from an extended divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Component(usize),
    Feather(FeatherLabel),
}

/// A standard zigzag with the feathers of its degenerate fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedDivisor {
    zigzag: Zigzag,
    feathers: Vec<Feather>,
    conductor: u32,
    types: Vec<ComponentType>,
    up_to_scalar: bool,
}

impl ExtendedDivisor {
    /// Validates the data and fixes feather labels: within each component,
    /// feathers are numbered in canonical base-point order.
    pub fn new(
        zigzag: Zigzag,
        feathers: Vec<FeatherSpec>,
        conductor: u32,
    ) -> Result<Self, ExtDivError> {
        if !zigzag.is_standard() {
            return Err(ExtDivError::NotStandard(zigzag));
        }
        let n = zigzag.n();
        if n < 2 {
            return Err(ExtDivError::NoFiberComponent);
        }
        let mut specs = feathers;
        for f in &specs {
            if !(2..=n).contains(&f.attach) {
                return Err(ExtDivError::AttachOutOfRange { attach: f.attach, n });
            }
            if f.mother < 2 || f.mother > f.attach {
                return Err(ExtDivError::BadMother {
                    attach: f.attach,
                    mother: f.mother,
                });
            }
            if f.self_intersection > -1 {
                return Err(ExtDivError::BadSelfIntersection(f.self_intersection));
            }
        }
        specs.sort_by(|a, b| {
            (a.attach, a.mother, &a.base).cmp(&(b.attach, b.mother, &b.base))
        });
        for w in specs.windows(2) {
            if (w[0].attach, w[0].mother) == (w[1].attach, w[1].mother) && w[0].base == w[1].base {
                return Err(ExtDivError::DuplicateBasePoint {
                    index: w[0].attach,
                    base: w[0].base.to_string(),
                });
            }
        }
        let mut out = Vec::with_capacity(specs.len());
        let mut j = 0;
        for (k, s) in specs.into_iter().enumerate() {
            j = if k > 0 && out.last().is_some_and(|p: &Feather| p.attach == s.attach) {
                j + 1
            } else {
                1
            };
            out.push(Feather {
                label: FeatherLabel::new(s.attach, j),
                attach: s.attach,
                base: s.base,
                self_intersection: s.self_intersection,
                mother: s.mother,
            });
        }
        let mut e = ExtendedDivisor {
            zigzag,
            feathers: out,
            conductor,
            types: Vec::new(),
            up_to_scalar: false,
        };
        if !e.is_realizable() {
            return Err(ExtDivError::NotRealizable);
        }
        e.types = e.compute_types();
        for f in &e.feathers {
            if e.component_type(f.mother) == ComponentType::Star && f.base.is_zero() {
                return Err(ExtDivError::ZeroInnerBase { index: f.mother });
            }
        }
        Ok(e)
    }

    pub fn zigzag(&self) -> &Zigzag {
        &self.zigzag
    }

    pub fn weights(&self) -> &[i64] {
        self.zigzag.weights()
    }

    pub fn n(&self) -> usize {
        self.zigzag.n()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn feathers(&self) -> &[Feather] {
        &self.feathers
    }

    /// True when base points are only meaningful up to a common scalar per
    /// component (divisors obtained by reversion).
    pub fn is_up_to_scalar(&self) -> bool {
        self.up_to_scalar
    }

    pub fn set_up_to_scalar(&mut self, flag: bool) {
        self.up_to_scalar = flag;
    }

    pub fn feather(&self, label: FeatherLabel) -> Option<&Feather> {
        self.feathers.iter().find(|f| f.label == label)
    }

    pub fn feathers_on(&self, i: usize) -> impl Iterator<Item = &Feather> {
        self.feathers.iter().filter(move |f| f.attach == i)
    }

    pub fn feathers_with_mother(&self, i: usize) -> impl Iterator<Item = &Feather> {
        self.feathers.iter().filter(move |f| f.mother == i)
    }

    /// r_i: the number of feathers attached to C_i.
    pub fn feather_count(&self, i: usize) -> usize {
        self.feathers_on(i).count()
    }

    pub fn component_type(&self, i: usize) -> ComponentType {
        self.types[i - 2]
    }

    /// Types of C_2..C_n.
    pub fn types(&self) -> &[ComponentType] {
        &self.types
    }

    pub fn outer_indices(&self) -> Vec<usize> {
        (2..=self.n())
            .filter(|&i| self.component_type(i) == ComponentType::Plus)
            .collect()
    }

    pub fn inner_indices(&self) -> Vec<usize> {
        (2..=self.n())
            .filter(|&i| self.component_type(i) == ComponentType::Star)
            .collect()
    }

    /// `i^∨ = n + 2 - i`.
    pub fn mirror(&self, i: usize) -> usize {
        self.n() + 2 - i
    }

    /// All feathers are (-1)-curves attached to their mothers.
    pub fn is_minus_one(&self) -> bool {
        self.feathers.iter().all(Feather::is_minus_one)
    }

    /// C_i..C_n together with every feather attached to one of them.
    pub fn subdivisor_from(&self, i: usize) -> WeightedTree<Node> {
        let n = self.n();
        let mut t = WeightedTree::chain(
            (i..=n).map(|k| (Node::Component(k), self.zigzag.weight(k))),
        );
        for f in self.feathers.iter().filter(|f| f.attach >= i) {
            let v = Node::Feather(f.label);
            t.add_vertex(v, f.self_intersection);
            t.add_edge(&Node::Component(f.attach), &v);
        }
        t
    }

    /// The full degenerate fiber: C_2..C_n and all feathers.
    pub fn fiber_tree(&self) -> WeightedTree<Node> {
        self.subdivisor_from(2)
    }

    /// The fiber contracts to a single curve of self-intersection 0.
    pub fn is_realizable(&self) -> bool {
        contracts_to_fiber(&self.fiber_tree())
    }

    fn compute_types(&self) -> Vec<ComponentType> {
        let n = self.n();
        (2..=n)
            .map(|i| {
                if i == 2 || i == n {
                    return ComponentType::Plus;
                }
                let tail = self.subdivisor_from(i + 1);
                if tail.is_contractible() {
                    return ComponentType::Plus;
                }
                let early_feathers = self.feathers.iter().filter(|f| f.attach > i && f.mother < i);
                for f in early_feathers {
                    let mut t = tail.clone();
                    t.remove_vertex(&Node::Feather(f.label));
                    if t.is_contractible() {
                        return ComponentType::Plus;
                    }
                }
                ComponentType::Star
            })
            .collect()
    }
}

/// Whether a tree contracts to a single vertex of weight 0.
pub fn contracts_to_fiber<L: Ord + Clone>(tree: &WeightedTree<L>) -> bool {
    let (rest, _) = tree.contract_tree();
    rest.len() == 1 && rest.vertices().all(|(_, w)| w == 0)
}

/// The fiber test on raw data: weights of C_2..C_n and `(attach, self)` for
/// each feather.
pub fn fiber_is_realizable(fiber_weights: &[i64], feathers: &[(usize, i64)]) -> bool {
    let mut t = WeightedTree::chain(
        fiber_weights
            .iter()
            .enumerate()
            .map(|(k, &w)| (Node::Component(k + 2), w)),
    );
    for (j, &(attach, w)) in feathers.iter().enumerate() {
        let v = Node::Feather(FeatherLabel::new(attach, j + 1));
        t.add_vertex(v, w);
        t.add_edge(&Node::Component(attach), &v);
    }
    contracts_to_fiber(&t)
}

/// Star/Plus for C_2..C_n.
pub fn classify_components(e: &ExtendedDivisor) -> Vec<ComponentType> {
    e.types.clone()
}

pub fn is_minus_one_completion(e: &ExtendedDivisor) -> bool {
    e.is_minus_one()
}

/// The divisor of the reversed completion: weights reversed and each feather
/// of C_i carried to C_{i^∨}. Base points are kept as representatives of
/// their configuration class, so the result is flagged as defined only up to
/// a common scalar per component.
pub fn reverse_extdiv(e: &ExtendedDivisor) -> Result<ExtendedDivisor, ExtDivError> {
    if !e.is_minus_one() {
        return Err(ExtDivError::NotMinusOne);
    }
    let zigzag = reverse_zigzag(&e.zigzag)?;
    let feathers = e
        .feathers
        .iter()
        .map(|f| FeatherSpec::minus_one(e.mirror(f.attach), f.base.clone()))
        .collect();
    let mut r = ExtendedDivisor::new(zigzag, feathers, e.conductor)?;
    r.up_to_scalar = true;
    Ok(r)
}

/// The label of the matching feather on the reversed side.
pub fn matching(e: &ExtendedDivisor, label: FeatherLabel) -> Result<FeatherLabel, ExtDivError> {
    if !e.is_minus_one() {
        return Err(ExtDivError::NotMinusOne);
    }
    if e.feather(label).is_none() {
        return Err(ExtDivError::UnknownLabel(label));
    }
    Ok(FeatherLabel::new(e.mirror(label.index), label.j))
}
