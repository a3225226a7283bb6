//! Blow-up presentations of the quadric and the divisors they produce.
//!
//! A presentation lists the outer components `k_2 = 2 < k_3 < ... < k_r = n`,
//! the birth points `c_{k_s}` and base-point sets `M_i`, and for every gap
//! between consecutive outer components a word fixing the order of the
//! inner blow-ups.
//!
//! Gap words are whitespace-separated Stern-Brocot addresses, one per inner
//! blow-up. `R` is the first blow-up, at `C_{k_s} ∩ C_{k_{s+1}}`. Appending
//! `N` or `F` names the blow-up of the intersection of a curve with its
//! neighbour on the near (`C_{k_s}`) or far (`C_{k_{s+1}}`) side: `RF` is the
//! point where `R` meets `C_{k_{s+1}}`, `RFN` the point where `RF` meets `R`.
//! Each address must appear after its parent.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::field::CycNumber;
use crate::zigzag::Zigzag;

use super::{ComponentType, ExtDivError, ExtendedDivisor, FeatherSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Toward the outer component that opens the gap.
    Near,
    /// Toward the outer component that closes the gap.
    Far,
}

/// The inner blow-up order of one gap.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GapWord {
    addresses: Vec<Vec<Side>>,
}

impl GapWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, ExtDivError> {
        let bad = |reason: String| ExtDivError::InvalidGapWord {
            word: text.to_string(),
            reason,
        };
        let mut addresses = Vec::new();
        for token in text.split_whitespace() {
            let mut chars = token.chars();
            if chars.next() != Some('R') {
                return Err(bad(format!("address {token:?} must start with R")));
            }
            let path = chars
                .map(|c| match c {
                    'N' => Ok(Side::Near),
                    'F' => Ok(Side::Far),
                    other => Err(bad(format!("unknown side marker {other:?} in {token:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            addresses.push(path);
        }
        let word = GapWord { addresses };
        word.layout().map_err(bad)?;
        Ok(word)
    }

    /// Number of inner blow-ups.
    pub fn len(&self) -> usize {
        self.addresses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.addresses.is_empty()
    }

    /// Replays the word: final chain order, weight changes and edge charts.
    fn layout(&self) -> Result<GapLayout, String> {
        GapLayout::build(&self.addresses)
    }
}

impl fmt::Display for GapWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.addresses.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str("R")?;
            for s in a {
                f.write_str(match s {
                    Side::Near => "N",
                    Side::Far => "F",
                })?;
            }
        }
        Ok(())
    }
}

/// Position in a gap chain: the two bounding outer components or the
/// curve created by the k-th address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Slot {
    Start,
    Inner(usize),
    End,
}

/// Stern-Brocot fraction; Start is 0/1, End is 1/0.
type Frac = (u64, u64);

fn frac_less(a: Frac, b: Frac) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

#[derive(Debug, Clone)]
struct GapLayout {
    /// Slots in chain order, Start and End included.
    order: Vec<Slot>,
    /// Weight change of each slot caused by the inner blow-ups.
    delta: HashMap<Slot, i64>,
    /// Chart of each edge (left, right), relative to the Start-End chart.
    edge_chart: HashMap<(Slot, Slot), ChartMatrix>,
}

impl GapLayout {
    fn build(addresses: &[Vec<Side>]) -> Result<Self, String> {
        let mut fracs: HashMap<Slot, Frac> = HashMap::from([(Slot::Start, (0, 1)), (Slot::End, (1, 0))]);
        let mut by_path: HashMap<&[Side], usize> = HashMap::new();
        let mut order = vec![Slot::Start, Slot::End];
        let mut delta: HashMap<Slot, i64> = HashMap::new();
        let mut edge_chart = HashMap::from([((Slot::Start, Slot::End), ChartMatrix::IDENTITY)]);

        for (k, path) in addresses.iter().enumerate() {
            let render = || GapWord { addresses: vec![path.clone()] }.to_string();
            if by_path.contains_key(path.as_slice()) {
                return Err(format!("address {} repeated", render()));
            }
            if !path.is_empty() && !by_path.contains_key(&path[..path.len() - 1]) {
                return Err(format!("address {} appears before its parent", render()));
            }
            let (mut lo, mut hi): (Frac, Frac) = ((0, 1), (1, 0));
            let mut node = (1, 1);
            for s in path {
                match s {
                    Side::Near => hi = node,
                    Side::Far => lo = node,
                }
                node = (lo.0 + hi.0, lo.1 + hi.1);
            }
            let pos = order.partition_point(|s| frac_less(fracs[s], node));
            let (left, right) = (order[pos - 1], order[pos]);
            debug_assert_eq!((fracs[&left], fracs[&right]), (lo, hi));
            let slot = Slot::Inner(k);
            let base = edge_chart
                .remove(&(left, right))
                .expect("neighbouring slots share an edge");
            edge_chart.insert((left, slot), ChartMatrix::SECOND.compose(&base));
            edge_chart.insert((slot, right), ChartMatrix::FIRST.compose(&base));
            *delta.entry(left).or_default() -= 1;
            *delta.entry(right).or_default() -= 1;
            delta.insert(slot, -1);
            order.insert(pos, slot);
            fracs.insert(slot, node);
            by_path.insert(path, k);
        }
        Ok(GapLayout {
            order,
            delta,
            edge_chart,
        })
    }
}

/// Exponent matrix of a monomial chart change
/// `(w', z') = (w^k z^l, w^p z^q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ChartMatrix {
    pub k: i64,
    pub l: i64,
    pub p: i64,
    pub q: i64,
}

impl ChartMatrix {
    pub const IDENTITY: ChartMatrix = ChartMatrix { k: 1, l: 0, p: 0, q: 1 };
    /// `(w/z, z)`: the new curve meets the far neighbour.
    pub const FIRST: ChartMatrix = ChartMatrix { k: 1, l: -1, p: 0, q: 1 };
    /// `(w, z/w)`: the near neighbour meets the new curve.
    pub const SECOND: ChartMatrix = ChartMatrix { k: 1, l: 0, p: -1, q: 1 };
    /// `(1/z, wz)`: the chart of the outer component closing a gap.
    pub const OUTER: ChartMatrix = ChartMatrix { k: 0, l: -1, p: 1, q: 1 };

    pub fn det(&self) -> i64 {
        self.k * self.q - self.l * self.p
    }

    /// `self ∘ other`: first change coordinates by `other`, then by `self`.
    pub fn compose(&self, other: &ChartMatrix) -> ChartMatrix {
        ChartMatrix {
            k: self.k * other.k + self.l * other.p,
            l: self.k * other.l + self.l * other.q,
            p: self.p * other.k + self.q * other.p,
            q: self.p * other.l + self.q * other.q,
        }
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> ChartMatrix {
        let d = self.det();
        assert!(d == 1 || d == -1, "not unimodular");
        ChartMatrix {
            k: d * self.q,
            l: -d * self.l,
            p: -d * self.p,
            q: d * self.k,
        }
    }

    /// `T_{ij} = M_j M_i^{-1}` for charts `M_i`, `M_j` over a common base.
    pub fn transition(from: &ChartMatrix, to: &ChartMatrix) -> ChartMatrix {
        to.compose(&from.inverse())
    }

    /// Applies the matrix to a pair of row vectors (characters).
    pub fn apply(&self, rows: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        let [w, z] = rows;
        [
            [self.k * w[0] + self.l * z[0], self.k * w[1] + self.l * z[1]],
            [self.p * w[0] + self.q * z[0], self.p * w[1] + self.q * z[1]],
        ]
    }
}

/// Data of one outer component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterLevel {
    pub index: usize,
    /// `c_{k_s}` on the previous outer component; absent for C_2.
    pub birth: Option<CycNumber>,
    /// `M_{k_s}`, kept in canonical order.
    pub base_points: Vec<CycNumber>,
}

/// Inner blow-ups between two consecutive outer components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gap {
    pub word: GapWord,
    /// `M_i` for the inner components of the gap, in canonical order.
    pub feathers: BTreeMap<usize, Vec<CycNumber>>,
}

/// `X(M_2, ..., c_{k_3}, M_{k_3}, ..., c_n, M_n)` with explicit gap words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    conductor: u32,
    levels: Vec<OuterLevel>,
    gaps: Vec<Gap>,
}

impl Presentation {
    /// Checks indices, word lengths and base-point sets; sorts every set.
    pub fn new(conductor: u32, mut levels: Vec<OuterLevel>, mut gaps: Vec<Gap>) -> Result<Self, ExtDivError> {
        let invalid = |m: String| ExtDivError::InvalidPresentation(m);
        if conductor == 0 {
            return Err(invalid("conductor must be positive".into()));
        }
        let Some(first) = levels.first() else {
            return Err(invalid("at least the outer component C_2 is required".into()));
        };
        if first.index != 2 {
            return Err(invalid(format!("the first outer component must be C_2, got C_{}", first.index)));
        }
        if gaps.len() + 1 != levels.len() {
            return Err(invalid(format!(
                "{} outer components need {} gaps, got {}",
                levels.len(),
                levels.len() - 1,
                gaps.len()
            )));
        }
        for (s, level) in levels.iter_mut().enumerate() {
            if s == 0 && level.birth.is_some() {
                return Err(invalid("C_2 has no birth point".into()));
            }
            if s > 0 && level.birth.is_none() {
                return Err(invalid(format!("C_{} needs a birth point c", level.index)));
            }
            sort_distinct(&mut level.base_points, level.index)?;
        }
        for s in 0..gaps.len() {
            let (a, b) = (levels[s].index, levels[s + 1].index);
            if b <= a {
                return Err(invalid(format!("outer indices must increase: {a} then {b}")));
            }
            let gap = &mut gaps[s];
            if gap.word.len() != b - a - 1 {
                return Err(ExtDivError::InvalidGapWord {
                    word: gap.word.to_string(),
                    reason: format!(
                        "gap between C_{a} and C_{b} needs {} blow-ups, the word has {}",
                        b - a - 1,
                        gap.word.len()
                    ),
                });
            }
            for (&i, points) in gap.feathers.iter_mut() {
                if i <= a || i >= b {
                    return Err(invalid(format!("C_{i} is not an inner component of the gap C_{a}..C_{b}")));
                }
                if points.iter().any(CycNumber::is_zero) {
                    return Err(ExtDivError::ZeroInnerBase { index: i });
                }
                sort_distinct(points, i)?;
            }
        }
        Ok(Presentation {
            conductor,
            levels,
            gaps,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn levels(&self) -> &[OuterLevel] {
        &self.levels
    }

    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    pub fn n(&self) -> usize {
        self.levels.last().expect("nonempty").index
    }

    pub fn outer_indices(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.index).collect()
    }

    /// `M_i` for any component index.
    pub fn base_points(&self, i: usize) -> &[CycNumber] {
        if let Some(level) = self.levels.iter().find(|l| l.index == i) {
            return &level.base_points;
        }
        self.gaps
            .iter()
            .find_map(|g| g.feathers.get(&i))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// No birth point lands on a base point of the previous outer component.
    pub fn is_minus_one(&self) -> bool {
        self.levels
            .windows(2)
            .all(|w| !w[0].base_points.contains(w[1].birth.as_ref().expect("validated")))
    }

    /// Rebuilds with new level data; used by actions on presentations.
    pub(crate) fn with_levels(&self, levels: Vec<OuterLevel>, gaps: Vec<Gap>) -> Result<Self, ExtDivError> {
        Presentation::new(self.conductor, levels, gaps)
    }
}

fn sort_distinct(points: &mut [CycNumber], index: usize) -> Result<(), ExtDivError> {
    points.sort();
    if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
        return Err(ExtDivError::DuplicateBasePoint {
            index,
            base: w[0].to_string(),
        });
    }
    Ok(())
}

/// Inner components of one gap in chain order, with their blow-up order.
fn gap_components(p: &Presentation, s: usize) -> (GapLayout, Vec<(Slot, usize)>) {
    let layout = p.gaps[s].word.layout().expect("validated word");
    let start = p.levels[s].index;
    let end = p.levels[s + 1].index;
    let comps = layout
        .order
        .iter()
        .enumerate()
        .map(|(pos, &slot)| {
            let idx = match slot {
                Slot::Start => start,
                Slot::End => end,
                Slot::Inner(_) => start + pos,
            };
            (slot, idx)
        })
        .collect();
    (layout, comps)
}

/// Simulates the blow-ups on the dual graph of the quadric.
pub fn build_from_presentation(p: &Presentation) -> Result<ExtendedDivisor, ExtDivError> {
    let n = p.n();
    let mut weights = vec![0i64; n + 1];
    let mut feathers: Vec<FeatherSpec> = Vec::new();
    // The feather, if any, lying at coordinate 0 of the current outer component.
    let mut carried: Option<usize> = None;

    for (s, level) in p.levels.iter().enumerate() {
        let k = level.index;
        for b in &level.base_points {
            if b.is_zero() && carried.is_some() {
                return Err(ExtDivError::NonSmoothFeather { index: k });
            }
            weights[k] -= 1;
            feathers.push(FeatherSpec::minus_one(k, b.clone()));
        }
        let Some(next) = p.levels.get(s + 1) else { break };
        let c = next.birth.as_ref().expect("validated");
        // Blow up c on C_k; a feather through c moves to the new component.
        let own = feathers
            .iter()
            .position(|f| f.attach == k && f.mother == k && &f.base == c);
        let through_c = own.or(carried.filter(|_| c.is_zero()));
        carried = through_c;
        if let Some(idx) = through_c {
            feathers[idx].attach = next.index;
            feathers[idx].self_intersection -= 1;
        }
        weights[k] -= 1;
        weights[next.index] = -1;

        let (layout, comps) = gap_components(p, s);
        for &(slot, idx) in &comps {
            weights[idx] += layout.delta.get(&slot).copied().unwrap_or(0);
        }
        for (&i, points) in &p.gaps[s].feathers {
            for b in points {
                weights[i] -= 1;
                feathers.push(FeatherSpec::minus_one(i, b.clone()));
            }
        }
    }

    let zigzag = Zigzag::new(weights)?;
    if !zigzag.is_standard() {
        return Err(ExtDivError::InvalidHistory(zigzag));
    }
    let e = ExtendedDivisor::new(zigzag, feathers, p.conductor)?;
    let computed = e.outer_indices();
    let declared = p.outer_indices();
    if computed != declared {
        return Err(ExtDivError::OuterMismatch { declared, computed });
    }
    debug_assert!((2..=n).all(|i| (e.component_type(i) == ComponentType::Plus) == declared.contains(&i)));
    Ok(e)
}

/// Charts of one gap relative to its base chart `(w, z)`, in which the
/// opening outer component is `{z = 0}` and the closing one `{w = 0}`
/// before any inner blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCharts {
    pub start: usize,
    pub end: usize,
    /// For `i = start..end-1`: the chart in which `C_i = {z = 0}` and
    /// `C_{i+1} = {w = 0}`.
    pub components: BTreeMap<usize, ChartMatrix>,
    /// The chart of the closing outer component, fixed at its birth.
    pub outer: ChartMatrix,
}

impl GapCharts {
    /// Chart of any component of the gap, the closing one included.
    pub fn chart(&self, i: usize) -> ChartMatrix {
        if i == self.end {
            self.outer
        } else {
            self.components[&i]
        }
    }
}

pub fn gap_charts(p: &Presentation) -> Vec<GapCharts> {
    (0..p.gaps.len())
        .map(|s| {
            let (layout, comps) = gap_components(p, s);
            let components = comps
                .windows(2)
                .map(|w| (w[0].1, layout.edge_chart[&(w[0].0, w[1].0)]))
                .collect();
            GapCharts {
                start: p.levels[s].index,
                end: p.levels[s + 1].index,
                components,
                outer: ChartMatrix::OUTER,
            }
        })
        .collect()
}

/// For every component, its chart relative to the base chart of the gap it
/// opens or lies in. The last component is its own base: identity.
pub fn chart_matrices(p: &Presentation) -> BTreeMap<usize, ChartMatrix> {
    let mut out: BTreeMap<usize, ChartMatrix> = gap_charts(p)
        .into_iter()
        .flat_map(|g| g.components.into_iter())
        .collect();
    out.insert(p.n(), ChartMatrix::IDENTITY);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn num(v: i64) -> CycNumber {
        CycNumber::from_integer(v, 1)
    }

    fn level(index: usize, birth: Option<i64>, points: &[i64]) -> OuterLevel {
        OuterLevel {
            index,
            birth: birth.map(num),
            base_points: points.iter().map(|&v| num(v)).collect(),
        }
    }

    fn gap(word: &str, feathers: &[(usize, &[i64])]) -> Gap {
        Gap {
            word: GapWord::parse(word).unwrap(),
            feathers: feathers
                .iter()
                .map(|(i, pts)| (*i, pts.iter().map(|&v| num(v)).collect()))
                .collect(),
        }
    }

    #[test]
    fn first_example_history() {
        let p = Presentation::new(
            1,
            vec![level(2, None, &[]), level(6, Some(0), &[])],
            vec![gap("R RF RN", &[(3, &[1]), (5, &[1])])],
        )
        .unwrap();
        let e = build_from_presentation(&p).unwrap();
        assert_eq!(e.weights(), &[0, 0, -3, -2, -3, -2, -3]);
        let at: Vec<usize> = e.feathers().iter().map(|f| f.attach).collect();
        assert_eq!(at, vec![3, 5]);
        assert!(e.is_minus_one());
    }

    #[test]
    fn final_example_history() {
        let p = Presentation::new(
            1,
            vec![level(2, None, &[]), level(6, Some(0), &[]), level(10, Some(0), &[])],
            vec![gap("R RN RNF", &[(4, &[1])]), gap("R RN RNF", &[(8, &[1])])],
        )
        .unwrap();
        let e = build_from_presentation(&p).unwrap();
        assert_eq!(e.weights(), &[0, 0, -3, -2, -2, -3, -5, -2, -2, -3, -2]);
    }

    #[test]
    fn danielewski_and_empty_histories() {
        for k in 2..5 {
            let pts: Vec<i64> = (1..=k).collect();
            let p = Presentation::new(1, vec![level(2, None, &pts)], vec![]).unwrap();
            let e = build_from_presentation(&p).unwrap();
            assert_eq!(e.weights(), &[0, 0, -k]);
            assert_eq!(e.feather_count(2), k as usize);
        }
        let p = Presentation::new(1, vec![level(2, None, &[])], vec![]).unwrap();
        let e = build_from_presentation(&p).unwrap();
        assert_eq!(e.weights(), &[0, 0, 0]);
        assert!(e.feathers().is_empty());
        let p = Presentation::new(1, vec![level(2, None, &[1])], vec![]).unwrap();
        assert!(matches!(build_from_presentation(&p), Err(ExtDivError::InvalidHistory(_))));
    }

    #[test]
    fn collisions_produce_deeper_feathers() {
        let p = Presentation::new(
            1,
            vec![level(2, None, &[0]), level(3, Some(0), &[1])],
            vec![Gap::default()],
        )
        .unwrap();
        assert!(!p.is_minus_one());
        let e = build_from_presentation(&p).unwrap();
        assert_eq!(e.weights(), &[0, 0, -2, -2]);
        let moved = e.feathers().iter().find(|f| f.mother == 2).unwrap();
        assert_eq!((moved.attach, moved.self_intersection), (3, -2));

        let p = Presentation::new(
            1,
            vec![level(2, None, &[0]), level(3, Some(0), &[0])],
            vec![Gap::default()],
        )
        .unwrap();
        assert_eq!(build_from_presentation(&p), Err(ExtDivError::NonSmoothFeather { index: 3 }));
    }

    #[test]
    fn gap_words_are_validated() {
        assert!(GapWord::parse("R RF RN").is_ok());
        assert!(GapWord::parse("RF").is_err());
        assert!(GapWord::parse("R R").is_err());
        assert!(GapWord::parse("R RX").is_err());
        assert!(GapWord::parse("X").is_err());
        assert_eq!(GapWord::parse("  R   RN ").unwrap().to_string(), "R RN");
        let err = Presentation::new(
            1,
            vec![level(2, None, &[]), level(6, Some(0), &[])],
            vec![gap("R RF", &[])],
        );
        assert!(matches!(err, Err(ExtDivError::InvalidGapWord { .. })));
    }

    #[test]
    fn presentation_invariants() {
        let zero_inner = Presentation::new(
            1,
            vec![level(2, None, &[]), level(4, Some(0), &[])],
            vec![gap("R", &[(3, &[0])])],
        );
        assert_eq!(zero_inner, Err(ExtDivError::ZeroInnerBase { index: 3 }));
        let dup = Presentation::new(1, vec![level(2, None, &[1, 1])], vec![]);
        assert!(matches!(dup, Err(ExtDivError::DuplicateBasePoint { index: 2, .. })));
    }

    #[test]
    fn chart_examples() {
        let p = Presentation::new(
            1,
            vec![level(2, None, &[1, 2]), level(4, Some(0), &[1, 2]), level(5, Some(0), &[1, 2])],
            vec![gap("R", &[(3, &[1])]), Gap::default()],
        )
        .unwrap();
        let charts = chart_matrices(&p);
        assert_eq!(charts[&3], ChartMatrix { k: 1, l: -1, p: 0, q: 1 });
        assert_eq!(charts[&2], ChartMatrix::SECOND);
        assert_eq!(charts[&4], ChartMatrix::IDENTITY);
        assert_eq!(charts[&5], ChartMatrix::IDENTITY);
        let t = ChartMatrix::transition(&charts[&2], &charts[&3]);
        assert_eq!((t.k, t.l), (0, -1));
    }

    #[test]
    fn adjacent_transitions_in_first_example() {
        let p = Presentation::new(
            1,
            vec![level(2, None, &[]), level(6, Some(0), &[])],
            vec![gap("R RF RN", &[(3, &[1]), (5, &[1])])],
        )
        .unwrap();
        let g = &gap_charts(&p)[0];
        for i in 2..6 {
            let t = ChartMatrix::transition(&g.chart(i), &g.chart(i + 1));
            assert_eq!((t.k, t.l, t.p), (0, -1, 1), "C_{i} -> C_{}", i + 1);
            for j in i + 2..=6 {
                let t = ChartMatrix::transition(&g.chart(i), &g.chart(j));
                assert!(!(t.k == 0 && t.l == -1));
                assert!(t.q > 0 && t.l < 0);
            }
        }
    }
}
