//! State spaces of the three tree-decomposition dynamic programs.
//!
//! Keys are bitmasks over the positions of the current (sorted) bag. A key
//! that is absent from a node's table is infeasible.

use std::fmt::Debug;

/// Inserts a zero bit at `pos`, shifting higher bits up.
#[inline]
pub(crate) fn insert_zero(mask: u64, pos: u32) -> u64 {
    let low = mask & ((1u64 << pos) - 1);
    ((mask >> pos) << (pos + 1)) | low
}

/// Removes the bit at `pos`, shifting higher bits down.
#[inline]
pub(crate) fn remove_bit(mask: u64, pos: u32) -> u64 {
    let low = mask & ((1u64 << pos) - 1);
    ((mask >> (pos + 1)) << pos) | low
}

/// Transition rules of one dynamic program.
///
/// Introduce and forget positions refer to the larger of the two bags
/// involved. `nbrs` marks, in parent positions, the other endpoints of the
/// edges assigned to the introduce node.
pub trait StateSpace {
    type Key: Copy + Ord + Debug;

    fn leaf(&self) -> Self::Key;

    /// Parent keys reachable from a child key; the flag says whether the
    /// introduced vertex joins the cover.
    fn introduce(&self, child: Self::Key, pos: u32, nbrs: u64, out: &mut Vec<(Self::Key, bool)>);

    fn forget(&self, child: Self::Key, pos: u32) -> Option<Self::Key>;

    /// Cover vertices of the bag encoded by `key`.
    fn support(&self, key: Self::Key) -> u64;

    /// Combines keys of the two join children, which share a support.
    fn join(&self, a: Self::Key, b: Self::Key) -> Option<Self::Key>;
}

/// Plain vertex cover: the key is the cover's intersection with the bag.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnySpace;

impl StateSpace for AnySpace {
    type Key = u64;

    fn leaf(&self) -> u64 {
        0
    }

    fn introduce(&self, child: u64, pos: u32, nbrs: u64, out: &mut Vec<(u64, bool)>) {
        let lifted = insert_zero(child, pos);
        if nbrs & !lifted == 0 {
            out.push((lifted, false));
        }
        out.push((lifted | 1 << pos, true));
    }

    fn forget(&self, child: u64, pos: u32) -> Option<u64> {
        Some(remove_bit(child, pos))
    }

    fn support(&self, key: u64) -> u64 {
        key
    }

    fn join(&self, a: u64, b: u64) -> Option<u64> {
        (a == b).then_some(a)
    }
}

/// Vertex cover with a cardinality index: `(bag cover, vertices in the
/// partial cover of the subgraph below)`, capped at `cap`.
#[derive(Debug, Clone, Copy)]
pub struct SizedSpace {
    pub cap: usize,
}

impl StateSpace for SizedSpace {
    type Key = (u64, usize);

    fn leaf(&self) -> (u64, usize) {
        (0, 0)
    }

    fn introduce(&self, (set, count): (u64, usize), pos: u32, nbrs: u64, out: &mut Vec<((u64, usize), bool)>) {
        let lifted = insert_zero(set, pos);
        if nbrs & !lifted == 0 {
            out.push(((lifted, count), false));
        }
        if count < self.cap {
            out.push(((lifted | 1 << pos, count + 1), true));
        }
    }

    fn forget(&self, (set, count): (u64, usize), pos: u32) -> Option<(u64, usize)> {
        Some((remove_bit(set, pos), count))
    }

    fn support(&self, key: (u64, usize)) -> u64 {
        key.0
    }

    fn join(&self, a: (u64, usize), b: (u64, usize)) -> Option<(u64, usize)> {
        // bag vertices are counted on both sides
        let count = a.1 + b.1 - a.0.count_ones() as usize;
        (a.0 == b.0 && count <= self.cap).then_some((a.0, count))
    }
}

/// Minimal vertex cover: `(witnessed, pending)` split of the bag cover.
///
/// A cover vertex is witnessed once some introduced edge joins it to a
/// vertex outside the cover (removing it would uncover that edge), and
/// pending until then. Pending vertices may not be forgotten: all their
/// edges have been introduced by then, so they would be redundant.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinimalSpace;

impl StateSpace for MinimalSpace {
    type Key = (u64, u64);

    fn leaf(&self) -> (u64, u64) {
        (0, 0)
    }

    fn introduce(&self, (seen, pending): (u64, u64), pos: u32, nbrs: u64, out: &mut Vec<((u64, u64), bool)>) {
        let (seen, pending) = (insert_zero(seen, pos), insert_zero(pending, pos));
        let cover = seen | pending;
        let bit = 1u64 << pos;
        // v stays out: its edges must be covered, and they witness the
        // neighbours at the other end.
        if nbrs & !cover == 0 {
            out.push(((seen | (pending & nbrs), pending & !nbrs), false));
        }
        // v joins: witnessed iff some introduced edge leaves the cover
        if nbrs & !cover != 0 {
            out.push(((seen | bit, pending), true));
        } else {
            out.push(((seen, pending | bit), true));
        }
    }

    fn forget(&self, (seen, pending): (u64, u64), pos: u32) -> Option<(u64, u64)> {
        if pending >> pos & 1 == 1 {
            return None;
        }
        Some((remove_bit(seen, pos), remove_bit(pending, pos)))
    }

    fn support(&self, key: (u64, u64)) -> u64 {
        key.0 | key.1
    }

    fn join(&self, a: (u64, u64), b: (u64, u64)) -> Option<(u64, u64)> {
        let cover = a.0 | a.1;
        if cover != b.0 | b.1 {
            return None;
        }
        let seen = a.0 | b.0;
        Some((seen, cover & !seen))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_surgery() {
        assert_eq!(insert_zero(0b1011, 2), 0b10011);
        assert_eq!(remove_bit(0b10011, 2), 0b1011);
        assert_eq!(insert_zero(0b1, 0), 0b10);
        assert_eq!(remove_bit(0b10, 0), 0b1);
        for m in 0..64u64 {
            for p in 0..6 {
                assert_eq!(remove_bit(insert_zero(m, p), p), m);
            }
        }
    }

    #[test]
    fn any_introduce_checks_assigned_edges() {
        let mut out = Vec::new();
        // child bag {a}, a out of the cover, v inserted at position 1 with edge to a
        AnySpace.introduce(0b0, 1, 0b01, &mut out);
        assert_eq!(out, vec![(0b10, true)]);
        out.clear();
        AnySpace.introduce(0b1, 1, 0b01, &mut out);
        assert_eq!(out, vec![(0b01, false), (0b11, true)]);
    }

    #[test]
    fn sized_join_counts_bag_once() {
        let sp = SizedSpace { cap: 5 };
        assert_eq!(sp.join((0b11, 3), (0b11, 4)), Some((0b11, 5)));
        assert_eq!(sp.join((0b11, 3), (0b11, 5)), None);
        assert_eq!(sp.join((0b01, 3), (0b11, 4)), None);
    }

    #[test]
    fn minimal_witness_bookkeeping() {
        let mut out = Vec::new();
        // bag {a} with a pending; introduce v adjacent to a, v outside the cover
        MinimalSpace.introduce((0, 0b1), 1, 0b01, &mut out);
        assert_eq!(out, vec![((0b01, 0), false), ((0, 0b11), true)]);
        assert_eq!(MinimalSpace.forget((0, 0b1), 0), None);
        assert_eq!(MinimalSpace.forget((0b1, 0), 0), Some((0, 0)));
        assert_eq!(MinimalSpace.join((0b01, 0b10), (0b10, 0b01)), Some((0b11, 0)));
        assert_eq!(MinimalSpace.join((0, 0b11), (0, 0b11)), Some((0, 0b11)));
    }
}
