//! Weight lists of boundary chains and blow-down bookkeeping on weighted trees.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZigzagError {
    #[error("a zigzag needs at least the two components C_0 and C_1")]
    TooShort,
    #[error("elementary move not applicable to {0}")]
    MoveNotApplicable(Zigzag),
    #[error("target {target} outside 2..={max}")]
    TargetOutOfRange { target: usize, max: usize },
    #[error("{0} is neither standard nor semi-standard")]
    NotSemiStandard(Zigzag),
    #[error("{0} is not standard")]
    NotStandard(Zigzag),
}

/// A chain C_0 - C_1 - ... - C_n given by its self-intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Zigzag {
    weights: Vec<i64>,
}

impl Zigzag {
    pub fn new(weights: Vec<i64>) -> Result<Self, ZigzagError> {
        if weights.len() < 2 {
            return Err(ZigzagError::TooShort);
        }
        Ok(Zigzag { weights })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// The index of the last component.
    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    /// `[[0,0,w_2,...,w_n]]` with every `w_i <= -2`, or all zeros when n <= 3.
    ///
    /// The all-zero short forms are the boundaries of quadric-like surfaces
    /// with no blow-ups performed (e.g. `[[0,0,0]]`).
    pub fn is_standard(&self) -> bool {
        let w = &self.weights;
        if w[0] != 0 || w[1] != 0 {
            return false;
        }
        w[2..].iter().all(|&x| x <= -2) || (self.n() <= 3 && w.iter().all(|&x| x == 0))
    }

    /// `[[0,-m,w_2,...,w_n]]` with every `w_i <= -2`.
    pub fn is_m_standard(&self, m: i64) -> bool {
        let w = &self.weights;
        w[0] == 0 && w[1] == -m && w[2..].iter().all(|&x| x <= -2)
    }

    /// The m for which the zigzag is m-standard.
    fn semistandard_m(&self) -> Option<i64> {
        let m = -self.weights[1];
        self.is_m_standard(m).then_some(m)
    }

    /// Whether `w_i = w_{n+2-i}` for all 2 <= i <= n.
    pub fn is_palindromic(&self) -> bool {
        let tail = &self.weights[2..];
        tail.iter().eq(tail.iter().rev())
    }
}

impl fmt::Display for Zigzag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[[")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("]]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// One elementary transformation, recorded in move traces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroMove {
    pub position: usize,
    pub direction: Direction,
    pub result: Zigzag,
}

/// Blows up the point where the zero-weight curve at `q` meets its neighbour
/// on the side away from `direction` and contracts the old curve:
/// `(a, 0, b) -> (a-1, 0, b+1)` to the right, `(a+1, 0, b-1)` to the left.
///
/// Requires `w_q = 0` and a weight `<= -1` in the moved-toward position.
pub fn elementary_zero_move_at(
    z: &Zigzag,
    direction: Direction,
    q: usize,
) -> Result<Zigzag, ZigzagError> {
    let w = &z.weights;
    let not_applicable = || ZigzagError::MoveNotApplicable(z.clone());
    if q == 0 || q >= z.n() || w[q] != 0 {
        return Err(not_applicable());
    }
    let mut out = w.clone();
    match direction {
        Direction::Right => {
            if w[q + 1] > -1 {
                return Err(not_applicable());
            }
            out[q - 1] -= 1;
            out[q + 1] += 1;
        }
        Direction::Left => {
            if w[q - 1] > -1 {
                return Err(not_applicable());
            }
            out[q - 1] += 1;
            out[q + 1] -= 1;
        }
    }
    Ok(Zigzag { weights: out })
}

/// The elementary move at the position the weights dictate: the first zero
/// with a negative right neighbour (moving right) or the last zero with a
/// negative left neighbour (moving left).
pub fn elementary_zero_move(z: &Zigzag, direction: Direction) -> Result<Zigzag, ZigzagError> {
    let q = find_move_position(z, direction).ok_or_else(|| ZigzagError::MoveNotApplicable(z.clone()))?;
    elementary_zero_move_at(z, direction, q)
}

fn find_move_position(z: &Zigzag, direction: Direction) -> Option<usize> {
    let w = &z.weights;
    let ok = |q: usize| match direction {
        Direction::Right => w[q] == 0 && w[q + 1] <= -1,
        Direction::Left => w[q] == 0 && w[q - 1] <= -1,
    };
    let mut range = 1..z.n();
    match direction {
        Direction::Right => range.find(|&q| ok(q)),
        Direction::Left => range.rev().find(|&q| ok(q)),
    }
}

/// Moves the zero pair of a standard zigzag so it sits right after `w_{t-1}`:
/// `[[w_2,...,w_{t-1},0,0,w_t,...,w_n]]`. Returns the result and every
/// elementary move performed.
pub fn zero_pair_shift(z: &Zigzag, t: usize) -> Result<(Zigzag, Vec<ZeroMove>), ZigzagError> {
    if !z.is_standard() {
        return Err(ZigzagError::NotStandard(z.clone()));
    }
    shift_unchecked(z, t)
}

fn shift_unchecked(z: &Zigzag, t: usize) -> Result<(Zigzag, Vec<ZeroMove>), ZigzagError> {
    let max = z.n() + 1;
    if !(2..=max).contains(&t) {
        return Err(ZigzagError::TargetOutOfRange { target: t, max });
    }
    let mut cur = z.clone();
    let mut trace = Vec::new();
    for p in 2..t {
        // The pair occupies positions p-2, p-1; the curve at p-1 absorbs w_p.
        let steps = -z.weights[p];
        for _ in 0..steps {
            cur = elementary_zero_move_at(&cur, Direction::Right, p - 1)?;
            trace.push(ZeroMove {
                position: p - 1,
                direction: Direction::Right,
                result: cur.clone(),
            });
        }
    }
    Ok((cur, trace))
}

/// `[[0,-m,w_2..w_n]] -> [[0,0,w_2..w_n]]`.
pub fn semistandard_to_standard(z: &Zigzag) -> Result<Zigzag, ZigzagError> {
    if z.semistandard_m().is_none() {
        return Err(ZigzagError::NotSemiStandard(z.clone()));
    }
    let mut w = z.weights.clone();
    w[1] = 0;
    Ok(Zigzag { weights: w })
}

/// `[[w_0,w_1,w_2..w_n]] -> [[w_0,w_1,w_n..w_2]]` for standard or
/// semi-standard input. Computed twice, by the closed formula and by moving
/// the zero pair all the way to the right end, and the two are compared.
pub fn reverse_zigzag(z: &Zigzag) -> Result<Zigzag, ZigzagError> {
    let standard_input = z.is_standard();
    if !standard_input && z.semistandard_m().is_none() {
        return Err(ZigzagError::NotSemiStandard(z.clone()));
    }
    let direct = reverse_direct(z);

    let standard = semistandard_to_standard(z).unwrap_or_else(|_| z.clone());
    let (shifted, _) = shift_unchecked(&standard, standard.n() + 1)?;
    let mut via_shift: Vec<i64> = shifted.weights.iter().rev().copied().collect();
    via_shift[1] = z.weights[1];
    assert_eq!(
        direct.weights, via_shift,
        "closed-form and move-sequence reversals disagree"
    );
    Ok(direct)
}

fn reverse_direct(z: &Zigzag) -> Zigzag {
    let mut w = z.weights[..2].to_vec();
    w.extend(z.weights[2..].iter().rev());
    Zigzag { weights: w }
}

/// A finite weighted graph on labelled vertices, used for trees of rational
/// curves. Anchored vertices are never contracted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree<L: Ord + Clone> {
    weights: BTreeMap<L, i64>,
    adjacency: BTreeMap<L, BTreeSet<L>>,
    anchors: BTreeSet<L>,
}

impl<L: Ord + Clone> Default for WeightedTree<L> {
    fn default() -> Self {
        WeightedTree {
            weights: BTreeMap::new(),
            adjacency: BTreeMap::new(),
            anchors: BTreeSet::new(),
        }
    }
}

/// One blow-down: the removed vertex and the neighbours it had.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep<L> {
    pub removed: L,
    pub neighbors: Vec<L>,
}

impl<L: Ord + Clone> WeightedTree<L> {
    pub fn new() -> Self {
        Self::default()
    }

    /// A path with the given weights, labelled by `labels` in order.
    pub fn chain(items: impl IntoIterator<Item = (L, i64)>) -> Self {
        let mut t = Self::new();
        let mut prev: Option<L> = None;
        for (label, w) in items {
            t.add_vertex(label.clone(), w);
            if let Some(p) = prev {
                t.add_edge(&p, &label);
            }
            prev = Some(label);
        }
        t
    }

    pub fn add_vertex(&mut self, label: L, weight: i64) {
        self.adjacency.entry(label.clone()).or_default();
        self.weights.insert(label, weight);
    }

    pub fn add_edge(&mut self, a: &L, b: &L) {
        assert!(self.weights.contains_key(a) && self.weights.contains_key(b));
        self.adjacency.get_mut(a).unwrap().insert(b.clone());
        self.adjacency.get_mut(b).unwrap().insert(a.clone());
    }

    pub fn anchor(&mut self, label: &L) {
        assert!(self.weights.contains_key(label));
        self.anchors.insert(label.clone());
    }

    pub fn remove_vertex(&mut self, label: &L) {
        if let Some(nbrs) = self.adjacency.remove(label) {
            for n in nbrs {
                self.adjacency.get_mut(&n).unwrap().remove(label);
            }
        }
        self.weights.remove(label);
        self.anchors.remove(label);
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, label: &L) -> bool {
        self.weights.contains_key(label)
    }

    pub fn weight(&self, label: &L) -> Option<i64> {
        self.weights.get(label).copied()
    }

    pub fn neighbors(&self, label: &L) -> impl Iterator<Item = &L> {
        self.adjacency.get(label).into_iter().flatten()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&L, i64)> {
        self.weights.iter().map(|(l, &w)| (l, w))
    }

    pub fn edges(&self) -> Vec<(L, L)> {
        let mut out = Vec::new();
        for (a, nbrs) in &self.adjacency {
            for b in nbrs {
                if a < b {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let edge_count: usize = self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2;
        if edge_count + 1 != self.len() {
            return false;
        }
        let start = self.weights.keys().next().unwrap().clone();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for n in self.neighbors(&v) {
                if seen.insert(n.clone()) {
                    stack.push(n.clone());
                }
            }
        }
        seen.len() == self.len()
    }

    /// Vertices that can be blown down right now: weight -1, not anchored,
    /// at most two neighbours.
    pub fn contractible_vertices(&self) -> Vec<L> {
        self.weights
            .iter()
            .filter(|(l, &w)| w == -1 && !self.anchors.contains(*l) && self.adjacency[*l].len() <= 2)
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// Blows down `label`: each neighbour gains +1 and two neighbours become
    /// adjacent. Panics if the vertex is not currently contractible.
    pub fn contract_vertex(&mut self, label: &L) -> ContractionStep<L> {
        assert_eq!(self.weights.get(label), Some(&-1), "only (-1)-curves contract");
        assert!(!self.anchors.contains(label), "anchored vertex");
        let nbrs: Vec<L> = self.adjacency[label].iter().cloned().collect();
        assert!(nbrs.len() <= 2, "a (-1)-curve with three neighbours is not contractible");
        self.remove_vertex(label);
        for n in &nbrs {
            *self.weights.get_mut(n).unwrap() += 1;
        }
        if let [a, b] = nbrs.as_slice() {
            self.add_edge(a, b);
        }
        ContractionStep {
            removed: label.clone(),
            neighbors: nbrs,
        }
    }

    /// Contracts (-1)-vertices, lowest label first, until none is left.
    pub fn contract_tree(&self) -> (Self, Vec<ContractionStep<L>>) {
        let mut t = self.clone();
        let mut trace = Vec::new();
        while let Some(v) = t.contractible_vertices().into_iter().next() {
            trace.push(t.contract_vertex(&v));
        }
        (t, trace)
    }

    pub fn is_contractible(&self) -> bool {
        self.contract_tree().0.is_empty()
    }
}
