//! Pareto frontiers of `(weight, value)` pairs.
//!
//! A front is kept sorted by strictly increasing weight and strictly
//! increasing value, so no stored pair dominates another. Every operation
//! takes the knapsack capacity `s` and target `d`: pairs heavier than `s`
//! are dropped and values are clamped at `d`, which bounds a front's length
//! by `min(s, d) + 1`.

use serde::Serialize;

use crate::instance::KnapsackBound;

/// A `(weight, value)` pair.
pub type Pair = (u64, u64);

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ParetoFront {
    pairs: Vec<Pair>,
}

/// Weight spans up to this size are bucketed densely in [`pareto_join`].
const DENSE_SPAN_MIN: u64 = 4096;

impl ParetoFront {
    pub fn empty() -> Self {
        ParetoFront { pairs: Vec::new() }
    }

    /// The front `{(0, 0)}` of the empty selection.
    pub fn origin() -> Self {
        ParetoFront {
            pairs: vec![(0, 0)],
        }
    }

    /// Normalizes an arbitrary pair list: drops pairs heavier than `s`,
    /// clamps values at `d` and removes dominated pairs.
    pub fn from_pairs(mut pairs: Vec<Pair>, s: u64, d: u64) -> Self {
        pairs.retain(|p| p.0 <= s);
        for p in pairs.iter_mut() {
            p.1 = p.1.min(d);
        }
        pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        ParetoFront {
            pairs: sweep(pairs.into_iter()),
        }
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.pairs
            .binary_search_by(|p| p.0.cmp(&pair.0))
            .map(|i| self.pairs[i].1 == pair.1)
            .unwrap_or(false)
    }

    /// Lightest pair whose value reaches `d`, if any.
    pub fn lightest_reaching(&self, d: u64) -> Option<Pair> {
        self.pairs.iter().copied().find(|p| p.1 >= d)
    }

    /// Checks the sortedness, dominance, capacity and clamp invariants.
    pub fn is_valid(&self, s: u64, d: u64) -> bool {
        self.pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
            && self.pairs.iter().all(|p| p.0 <= s && p.1 <= d)
    }
}

/// Keeps the pairs of a `(weight asc, value desc)`-ordered stream whose
/// value strictly exceeds every value seen before.
fn sweep(sorted: impl Iterator<Item = Pair>) -> Vec<Pair> {
    let mut out: Vec<Pair> = Vec::new();
    for p in sorted {
        match out.last() {
            Some(last) if p.1 <= last.1 => {}
            _ => out.push(p),
        }
    }
    out
}

/// `(w1, a1)` dominates `(w2, a2)` iff it is no heavier, no less valuable
/// and not equal.
pub fn dominates(a: Pair, b: Pair) -> bool {
    a.0 <= b.0 && a.1 >= b.1 && a != b
}

pub fn pareto_insert(front: &ParetoFront, pair: Pair, s: u64, d: u64) -> ParetoFront {
    if pair.0 > s {
        return front.clone();
    }
    let single = ParetoFront {
        pairs: vec![(pair.0, pair.1.min(d))],
    };
    pareto_merge(front, &single, s, d)
}

/// Undominated closure of `a ∪ b`.
pub fn pareto_merge(a: &ParetoFront, b: &ParetoFront, s: u64, d: u64) -> ParetoFront {
    let (x, y) = (&a.pairs, &b.pairs);
    let mut merged = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let key = |p: &Pair| (p.0, std::cmp::Reverse(p.1));
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && key(&x[i]) <= key(&y[j]));
        let p = if take_x {
            i += 1;
            x[i - 1]
        } else {
            j += 1;
            y[j - 1]
        };
        if p.0 <= s {
            merged.push((p.0, p.1.min(d)));
        }
    }
    ParetoFront {
        pairs: sweep(merged.into_iter()),
    }
}

/// Translates every pair by `delta`, dropping pairs that exceed `s`.
pub fn pareto_shift(front: &ParetoFront, delta: Pair, s: u64, d: u64) -> ParetoFront {
    let shifted = front.pairs.iter().map_while(|p| {
        let w = p.0.checked_add(delta.0).filter(|&w| w <= s)?;
        Some((w, p.1.saturating_add(delta.1).min(d)))
    });
    ParetoFront {
        pairs: sweep(shifted),
    }
}

/// Combines two partial solutions that share the vertices accounted for by
/// `overlap`: `(w1 + w2 - overlap.0, a1 + a2 - overlap.1)`, with the value
/// subtraction saturating at zero.
pub fn pareto_join(
    a: &ParetoFront,
    b: &ParetoFront,
    overlap: Pair,
    s: u64,
    d: u64,
) -> ParetoFront {
    if a.is_empty() || b.is_empty() {
        return ParetoFront::empty();
    }
    let combine = |p: Pair, q: Pair| -> Option<Pair> {
        let w = p.0.checked_add(q.0)?.saturating_sub(overlap.0);
        if w > s {
            return None;
        }
        let v = p.1.saturating_add(q.1).saturating_sub(overlap.1).min(d);
        Some((w, v))
    };
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let lo = small.pairs[0]
        .0
        .saturating_add(large.pairs[0].0)
        .saturating_sub(overlap.0);
    if lo > s {
        return ParetoFront::empty();
    }
    let count = (small.len() as u64).saturating_mul(large.len() as u64);
    let span = s - lo + 1;

    if span <= DENSE_SPAN_MIN.max(count.saturating_mul(4)) {
        // Best value per weight offset, then one sweep.
        let mut best: Vec<Option<u64>> = vec![None; span as usize];
        for &p in &small.pairs {
            for &q in &large.pairs {
                match combine(p, q) {
                    Some((w, v)) => {
                        let slot = &mut best[(w - lo) as usize];
                        if slot.is_none_or(|cur| v > cur) {
                            *slot = Some(v);
                        }
                    }
                    None => break,
                }
            }
        }
        let dense = best
            .into_iter()
            .enumerate()
            .filter_map(|(off, v)| v.map(|v| (lo + off as u64, v)));
        ParetoFront {
            pairs: sweep(dense),
        }
    } else {
        let mut all = Vec::new();
        for &p in &small.pairs {
            for &q in &large.pairs {
                match combine(p, q) {
                    Some(c) => all.push(c),
                    None => break,
                }
            }
        }
        ParetoFront::from_pairs(all, s, d)
    }
}

/// True iff some pair fits the capacity and reaches the target.
pub fn decide(front: &ParetoFront, bound: KnapsackBound) -> bool {
    front
        .pairs
        .iter()
        .any(|p| p.0 <= bound.s && p.1 >= bound.d)
}
