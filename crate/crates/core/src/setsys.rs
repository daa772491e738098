//! Weighted, valued set systems and their hitting-set transposes.

use crate::error::{Result, VckError};

/// One subset of the universe with its knapsack weight and value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedSet {
    pub elements: Vec<usize>,
    pub weight: u64,
    pub value: u64,
}

/// Universe `0..n_elements` and a family of weighted, valued subsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    n_elements: usize,
    sets: Vec<WeightedSet>,
}

impl SetSystem {
    /// Sorts each element list; rejects out-of-range or repeated elements.
    pub fn new(n_elements: usize, mut sets: Vec<WeightedSet>) -> Result<Self> {
        for (i, set) in sets.iter_mut().enumerate() {
            normalize_members(&mut set.elements, n_elements)
                .map_err(|e| VckError::input(format!("set {i}: {e}")))?;
        }
        let total = |f: fn(&WeightedSet) -> u64| {
            sets.iter().try_fold(0u64, |acc, s| acc.checked_add(f(s)))
        };
        if total(|s| s.weight).is_none() || total(|s| s.value).is_none() {
            return Err(VckError::input("set weight or value total overflows u64"));
        }
        Ok(SetSystem { n_elements, sets })
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[WeightedSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &WeightedSet {
        &self.sets[i]
    }

    pub fn weights(&self) -> Vec<u64> {
        self.sets.iter().map(|s| s.weight).collect()
    }

    pub fn values(&self) -> Vec<u64> {
        self.sets.iter().map(|s| s.value).collect()
    }

    pub fn total_value(&self) -> u64 {
        self.sets.iter().map(|s| s.value).sum()
    }

    /// Number of sets containing each element.
    pub fn element_frequencies(&self) -> Vec<usize> {
        let mut freq = vec![0; self.n_elements];
        for set in &self.sets {
            for &e in &set.elements {
                freq[e] += 1;
            }
        }
        freq
    }

    /// Frequency of the most frequent element, `f`.
    pub fn max_frequency(&self) -> usize {
        self.element_frequencies().into_iter().max().unwrap_or(0)
    }

    /// Largest set size, `g`.
    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(|s| s.elements.len()).max().unwrap_or(0)
    }

    /// True iff the sets together cover the whole universe.
    pub fn is_coverable(&self) -> bool {
        self.element_frequencies().iter().all(|&f| f > 0)
    }

    /// True iff the chosen set indices cover the universe.
    pub fn covers(&self, chosen: &[usize]) -> bool {
        let mut hit = vec![false; self.n_elements];
        for &i in chosen {
            for &e in &self.sets[i].elements {
                hit[e] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}

/// Elements `0..n_elements` with per-element weights and values, plus a
/// family of non-empty sets that must each be hit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HittingSetSystem {
    element_weight: Vec<u64>,
    element_value: Vec<u64>,
    sets: Vec<Vec<usize>>,
    arity_bound: usize,
}

impl HittingSetSystem {
    pub fn new(
        element_weight: Vec<u64>,
        element_value: Vec<u64>,
        mut sets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = element_weight.len();
        if element_value.len() != n {
            return Err(VckError::input(format!(
                "{} element weights but {} values",
                n,
                element_value.len()
            )));
        }
        for (i, set) in sets.iter_mut().enumerate() {
            if set.is_empty() {
                return Err(VckError::input(format!("set {i} is empty and cannot be hit")));
            }
            normalize_members(set, n).map_err(|e| VckError::input(format!("set {i}: {e}")))?;
        }
        for xs in [&element_weight, &element_value] {
            if xs.iter().try_fold(0u64, |acc, &x| acc.checked_add(x)).is_none() {
                return Err(VckError::input("element weight or value total overflows u64"));
            }
        }
        let arity_bound = sets.iter().map(Vec::len).max().unwrap_or(0);
        Ok(HittingSetSystem {
            element_weight,
            element_value,
            sets,
            arity_bound,
        })
    }

    pub fn n_elements(&self) -> usize {
        self.element_weight.len()
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn element_weights(&self) -> &[u64] {
        &self.element_weight
    }

    pub fn element_values(&self) -> &[u64] {
        &self.element_value
    }

    /// Largest set size; the `d` of d-Hitting Set.
    pub fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    /// True iff every set contains a chosen element.
    pub fn hits(&self, chosen: &[usize]) -> bool {
        let mut inside = vec![false; self.n_elements()];
        for &j in chosen {
            inside[j] = true;
        }
        self.sets.iter().all(|s| s.iter().any(|&j| inside[j]))
    }
}

fn normalize_members(elements: &mut [usize], n: usize) -> std::result::Result<(), String> {
    elements.sort_unstable();
    if let Some(&e) = elements.iter().find(|&&e| e >= n) {
        return Err(format!("element {e} outside 0..{n}"));
    }
    if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("element {} listed twice", w[0]));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(elements: &[usize], weight: u64, value: u64) -> WeightedSet {
        WeightedSet {
            elements: elements.to_vec(),
            weight,
            value,
        }
    }

    #[test]
    fn set_system_validation() {
        assert!(SetSystem::new(2, vec![ws(&[2], 1, 1)]).is_err());
        assert!(SetSystem::new(2, vec![ws(&[1, 1], 1, 1)]).is_err());
        let sys = SetSystem::new(3, vec![ws(&[2, 0], 1, 1), ws(&[0], 1, 1)]).unwrap();
        assert_eq!(sys.set(0).elements, vec![0, 2]);
        assert_eq!(sys.element_frequencies(), vec![2, 0, 1]);
        assert_eq!(sys.max_frequency(), 2);
        assert!(!sys.is_coverable());
        assert!(!sys.covers(&[0, 1]));
    }

    #[test]
    fn hitting_set_arity_and_validation() {
        assert!(HittingSetSystem::new(vec![1], vec![1], vec![vec![]]).is_err());
        assert!(HittingSetSystem::new(vec![1], vec![1, 2], vec![vec![0]]).is_err());
        let h = HittingSetSystem::new(vec![1; 3], vec![1; 3], vec![vec![2, 0], vec![1]]).unwrap();
        assert_eq!(h.arity_bound(), 2);
        assert_eq!(h.sets()[0], vec![0, 2]);
        assert!(h.hits(&[0, 1]));
        assert!(!h.hits(&[0]));
    }
}
