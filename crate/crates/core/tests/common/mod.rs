//! Random inputs and independent reference computations shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gizatullin_core::extdiv::{build_from_presentation, ExtendedDivisor, Gap, GapWord, OuterLevel, Presentation};
use gizatullin_core::CycNumber;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const CONDUCTOR: u32 = 12;

type Frac = (u64, u64);

fn less(a: Frac, b: Frac) -> bool {
    a.0 * b.1 < b.0 * a.1
}

/// Stern-Brocot address of a positive fraction, in gap-word spelling.
pub fn sb_address(target: Frac) -> String {
    let mut s = String::from("R");
    let (mut lo, mut hi) = ((0, 1), (1, 0));
    let mut node = (1, 1);
    while node != target {
        if less(target, node) {
            s.push('N');
            hi = node;
        } else {
            s.push('F');
            lo = node;
        }
        node = (lo.0 + hi.0, lo.1 + hi.1);
    }
    s
}

/// A random inner blow-up sequence of `len` steps. Returns the word and the
/// final inner weights in chain order.
pub fn random_word(rng: &mut StdRng, len: usize) -> (String, Vec<i64>) {
    // (fraction, weight); the two ends are the outer components.
    let mut chain: Vec<(Frac, i64)> = vec![((0, 1), 0), ((1, 0), 0)];
    let mut addresses = Vec::new();
    for _ in 0..len {
        let pos = rng.gen_range(1..chain.len());
        let (a, b) = (chain[pos - 1].0, chain[pos].0);
        let m = (a.0 + b.0, a.1 + b.1);
        chain[pos - 1].1 -= 1;
        chain[pos].1 -= 1;
        chain.insert(pos, (m, -1));
        addresses.push(sb_address(m));
    }
    let inner = chain[1..chain.len() - 1].iter().map(|c| c.1).collect();
    (addresses.join(" "), inner)
}

/// A point `q·ζ_12^k` with `q ∈ {1, 2, 3}`.
pub fn random_point(rng: &mut StdRng) -> CycNumber {
    let q = rng.gen_range(1..=3);
    CycNumber::zeta_power(rng.gen_range(0..12), CONDUCTOR) * CycNumber::from_integer(q, CONDUCTOR)
}

fn distinct_points(rng: &mut StdRng, count: usize, allow_zero: bool) -> Vec<CycNumber> {
    let mut out: Vec<CycNumber> = Vec::new();
    while out.len() < count {
        let p = if allow_zero && rng.gen_bool(0.25) {
            CycNumber::zero(CONDUCTOR)
        } else {
            random_point(rng)
        };
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Random blow-up data; not every draw yields a valid history.
pub fn random_presentation_data(rng: &mut StdRng, max_levels: usize) -> Option<Presentation> {
    let level_count = rng.gen_range(1..=max_levels);
    let mut levels = Vec::new();
    let mut gaps = Vec::new();
    let mut index = 2;
    for s in 0..level_count {
        let birth = (s > 0).then(|| {
            if rng.gen_bool(0.5) {
                CycNumber::zero(CONDUCTOR)
            } else {
                random_point(rng)
            }
        });
        let count = rng.gen_range(0..=2) + usize::from(s + 1 == level_count);
        let points = distinct_points(rng, count, true);
        levels.push(OuterLevel {
            index,
            birth,
            base_points: points,
        });
        if s + 1 < level_count {
            let len = rng.gen_range(0..=4);
            let (word, weights) = random_word(rng, len);
            let mut feathers = BTreeMap::new();
            for (pos, w) in weights.iter().enumerate() {
                let need = (w + 2).max(0) as usize + rng.gen_range(0..=1);
                if need > 0 {
                    feathers.insert(index + 1 + pos, distinct_points(rng, need, false));
                }
            }
            gaps.push(Gap {
                word: GapWord::parse(&word).expect("generated words are valid"),
                feathers,
            });
            index += len + 1;
        }
    }
    Presentation::new(CONDUCTOR, levels, gaps).ok()
}

/// A random presentation whose history builds, with its divisor.
pub fn random_built(rng: &mut StdRng, max_levels: usize) -> (Presentation, ExtendedDivisor) {
    loop {
        if let Some(p) = random_presentation_data(rng, max_levels) {
            if let Ok(e) = build_from_presentation(&p) {
                return (p, e);
            }
        }
    }
}

/// As [`random_built`], restricted to (-1)-completions.
pub fn random_minus_one(rng: &mut StdRng, max_levels: usize) -> (Presentation, ExtendedDivisor) {
    loop {
        let (p, e) = random_built(rng, max_levels);
        if e.is_minus_one() {
            return (p, e);
        }
    }
}

/// `[[0,0,w_2,...,w_n]]` with `n <= 10` and weights in `[-6, -2]`.
pub fn random_standard_weights(rng: &mut StdRng) -> Vec<i64> {
    let n = rng.gen_range(2..=10);
    let mut w = vec![0, 0];
    w.extend((2..=n).map(|_| rng.gen_range(-6..=-2)));
    w
}

/// Blow-downs on a plain adjacency list: repeatedly remove a (-1)-vertex of
/// degree at most two. True when a single 0-vertex remains.
pub fn contracts_to_zero_curve(weights: &[i64], edges: &[(usize, usize)]) -> bool {
    let n = weights.len();
    let mut w = weights.to_vec();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut alive = vec![true; n];
    while let Some(v) =
        (0..n).find(|&v| alive[v] && w[v] == -1 && adj[v].len() <= 2 && alive.iter().filter(|&&a| a).count() > 1)
    {
        alive[v] = false;
        let nb = std::mem::take(&mut adj[v]);
        for &u in &nb {
            w[u] += 1;
            adj[u].retain(|&x| x != v);
        }
        if let [a, b] = nb[..] {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let left: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    left.len() == 1 && w[left[0]] == 0
}

/// The fiber `C_2..C_n` plus feathers of `e`, as weights and edges.
pub fn fiber_graph(e: &ExtendedDivisor) -> (Vec<i64>, Vec<(usize, usize)>) {
    let mut weights: Vec<i64> = e.weights()[2..].to_vec();
    let mut edges: Vec<(usize, usize)> = (1..weights.len()).map(|k| (k - 1, k)).collect();
    for f in e.feathers() {
        weights.push(f.self_intersection);
        edges.push((f.attach - 2, weights.len() - 1));
    }
    (weights, edges)
}

/// Elements `q·ζ_24^k` as pairs `(q, k)`.
pub type Root24 = (u32, u32);

pub fn root24(x: Root24) -> CycNumber {
    CycNumber::zeta_power(x.1 as i64, 24) * CycNumber::from_integer(x.0 as i64, 24)
}

/// All `α = q·ζ_24^k` with `αA = A`.
pub fn brute_stabilizer(a: &[Root24]) -> Vec<Root24> {
    let mut out = Vec::new();
    for q in 1..=3 {
        for k in 0..24 {
            let image: Vec<Root24> = a.iter().map(|&(p, j)| (p * q, (j + k) % 24)).collect();
            if image.iter().all(|x| a.contains(x)) {
                out.push((q, k));
            }
        }
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every way to write `a` as a disjoint union of cosets `c·W_m` with the
/// fewest pieces, each given by its list of `m`.
pub fn minimal_coset_decompositions(a: &[Root24]) -> Vec<Vec<usize>> {
    let mut cosets: Vec<(usize, Vec<Root24>)> = Vec::new();
    for &(q, k) in a {
        for m in [1usize, 2, 3, 4, 6, 8, 12, 24] {
            let step = 24 / m as u32;
            let mut coset: Vec<Root24> = (0..m as u32).map(|j| (q, (k + j * step) % 24)).collect();
            coset.sort();
            if coset.iter().all(|x| a.contains(x)) && !cosets.iter().any(|(_, c)| *c == coset) {
                cosets.push((m, coset));
            }
        }
    }
    let mut best: Option<usize> = None;
    let mut found: Vec<Vec<usize>> = Vec::new();
    fn search(
        rest: &[Root24],
        cosets: &[(usize, Vec<Root24>)],
        chosen: &mut Vec<usize>,
        best: &mut Option<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if best.is_some_and(|b| chosen.len() > b) {
            return;
        }
        let Some(&first) = rest.first() else {
            if best.is_none_or(|b| chosen.len() < b) {
                *best = Some(chosen.len());
                found.clear();
            }
            let mut ms = chosen.clone();
            ms.sort();
            if !found.contains(&ms) {
                found.push(ms);
            }
            return;
        };
        for (m, c) in cosets {
            if c.contains(&first) && c.iter().all(|x| rest.contains(x)) {
                let next: Vec<Root24> = rest.iter().copied().filter(|x| !c.contains(x)).collect();
                chosen.push(*m);
                search(&next, cosets, chosen, best, found);
                chosen.pop();
            }
        }
    }
    search(a, &cosets, &mut Vec::new(), &mut best, &mut found);
    found
}

/// `(m_1 + ... + m_s) / gcd(m_1, ..., m_s)`.
pub fn coset_formula(ms: &[usize]) -> usize {
    let g = ms.iter().copied().fold(0, gcd);
    ms.iter().sum::<usize>() / g
}

pub fn random_subset24(rng: &mut StdRng) -> Vec<Root24> {
    let size = rng.gen_range(1..=6);
    let mut all: Vec<Root24> = (1..=3).flat_map(|q| (0..24).map(move |k| (q, k))).collect();
    if rng.gen_bool(0.5) {
        // Bias toward structured sets: unions of full cosets.
        let mut out = Vec::new();
        while out.len() < size {
            let q = rng.gen_range(1..=3);
            let m = *[1u32, 2, 3, 4, 6].choose(rng).unwrap();
            let k = rng.gen_range(0..24);
            for j in 0..m {
                let x = (q, (k + j * 24 / m) % 24);
                if !out.contains(&x) && out.len() < 6 {
                    out.push(x);
                }
            }
        }
        out.sort();
        return out;
    }
    all.shuffle(rng);
    let mut out = all[..size].to_vec();
    out.sort();
    out
}
