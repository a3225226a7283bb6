//! Exceptional components: inner components that survive, in some blow-down
//! order, as a chain `[-2, ..., -2, -1]` between two outer components.

use std::collections::{BTreeSet, HashSet};

use crate::zigzag::WeightedTree;

use super::{reverse_extdiv, ExtDivError, ExtendedDivisor, Node};

/// `𝔈_D`, the union over all gaps of the unique longest exceptional chain.
pub fn exceptional_components(e: &ExtendedDivisor) -> Result<BTreeSet<usize>, ExtDivError> {
    let outer = e.outer_indices();
    let mut out = BTreeSet::new();
    for w in outer.windows(2) {
        out.extend(gap_chain(e, w[0], w[1])?);
    }
    Ok(out)
}

/// `𝔈^∨`: the exceptional set of the reversed divisor, mirrored back.
pub fn dual_exceptional(e: &ExtendedDivisor) -> Result<BTreeSet<usize>, ExtDivError> {
    let r = reverse_extdiv(e)?;
    Ok(exceptional_components(&r)?
        .into_iter()
        .map(|t| e.mirror(t))
        .collect())
}

fn gap_chain(e: &ExtendedDivisor, start: usize, end: usize) -> Result<Vec<usize>, ExtDivError> {
    if end - start < 2 {
        return Ok(Vec::new());
    }
    let mut tree = WeightedTree::chain((start..=end).map(|k| (Node::Component(k), e.zigzag().weight(k))));
    tree.anchor(&Node::Component(start));
    tree.anchor(&Node::Component(end));
    for f in e.feathers().iter().filter(|f| f.attach > start && f.attach < end) {
        let v = Node::Feather(f.label);
        tree.add_vertex(v, f.self_intersection);
        tree.add_edge(&Node::Component(f.attach), &v);
    }

    let mut search = Search {
        seen: HashSet::new(),
        best: Vec::new(),
        ties: false,
    };
    search.visit(&tree, start, end);
    if search.ties {
        return Err(ExtDivError::AmbiguousExceptional { start, end });
    }
    Ok(search.best)
}

struct Search {
    seen: HashSet<BTreeSet<Node>>,
    best: Vec<usize>,
    ties: bool,
}

impl Search {
    fn visit(&mut self, tree: &WeightedTree<Node>, start: usize, end: usize) {
        let key: BTreeSet<Node> = tree.vertices().map(|(v, _)| *v).collect();
        if !self.seen.insert(key) {
            return;
        }
        if let Some(chain) = surviving_chain(tree, start, end) {
            match chain.len().cmp(&self.best.len()) {
                std::cmp::Ordering::Greater => {
                    self.best = chain;
                    self.ties = false;
                }
                std::cmp::Ordering::Equal if chain != self.best => self.ties = true,
                _ => {}
            }
        }
        for v in tree.contractible_vertices() {
            let mut next = tree.clone();
            next.contract_vertex(&v);
            self.visit(&next, start, end);
        }
    }
}

/// The inner chain, if no feather is left and it reads `[-2, ..., -2, -1]`
/// walking from `start` to `end`.
fn surviving_chain(tree: &WeightedTree<Node>, start: usize, end: usize) -> Option<Vec<usize>> {
    let mut chain = Vec::new();
    for (v, w) in tree.vertices() {
        match v {
            Node::Feather(_) => return None,
            Node::Component(k) if *k != start && *k != end => chain.push((*k, w)),
            Node::Component(_) => {}
        }
    }
    let last = chain.len().checked_sub(1)?;
    let fits = chain
        .iter()
        .enumerate()
        .all(|(pos, &(_, w))| w == if pos == last { -1 } else { -2 });
    fits.then(|| chain.into_iter().map(|(k, _)| k).collect())
}
