//! Approximation algorithms for set cover with a value target, and their
//! hitting-set and vertex-cover specializations.
//!
//! Both algorithms share a first phase that grows a prefix `A` of chosen
//! sets until `α(A) ≥ d`, raising the dual `y_A` of the current prefix until
//! some unchosen set becomes tight against the constraint
//!
//! ```text
//! Σ_{B prefix, i ∉ B} α^B(i) · y_B ≤ w(i),   α^B(i) = min(α(i), d − α(B)).
//! ```
//!
//! The second phase completes the cover, either by the textbook primal-dual
//! rule on element duals or by the greedy cost-per-new-element rule. The two
//! dual families are tracked separately. Every dual is an exact rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Result, VckError};
use crate::graph::VertexGraph;
use crate::instance::Solution;
use crate::setsys::{HittingSetSystem, SetSystem, WeightedSet};

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `max(d − selected, 0)`.
pub fn residual_target(d: u64, selected_value: u64) -> u64 {
    d.saturating_sub(selected_value)
}

/// The value a set can still usefully contribute: `min(α(i), d_A)`.
pub fn clamped_value(alpha_i: u64, d_a: u64) -> u64 {
    alpha_i.min(d_a)
}

/// `H_g = 1 + 1/2 + … + 1/g`, with `H_0 = 0`.
pub fn harmonic(g: usize) -> BigRational {
    (1..=g).fold(BigRational::zero(), |acc, i| {
        acc + BigRational::new(BigInt::one(), BigInt::from(i))
    })
}

/// Dual values raised by a run. Prefixes not listed carry zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualState {
    /// Each grown prefix (set indices in selection order) with its `y_A`.
    pub visited_prefixes: Vec<(Vec<usize>, BigRational)>,
    /// `y_j` per element; only the primal-dual second phase raises these.
    pub element_duals: Vec<BigRational>,
    /// Per set: remaining slack in the prefix family and in the element
    /// family, in that order.
    pub residual_slack: Vec<(BigRational, BigRational)>,
}

impl DualState {
    /// `Σ d_A y_A + Σ y_j`.
    pub fn objective(&self, sys: &SetSystem, d: u64) -> BigRational {
        let mut total: BigRational = self.element_duals.iter().sum();
        for (prefix, y) in &self.visited_prefixes {
            let taken: u64 = prefix.iter().map(|&i| sys.set(i).value).sum();
            total += rat(residual_target(d, taken)) * y;
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub solution: Solution,
    pub phase1_indices: Vec<usize>,
    pub phase2_indices: Vec<usize>,
    pub dual_objective: BigRational,
    /// Factor claimed for the scheme: `f`, `max(2, H_g)`, the arity bound,
    /// or 2.
    pub ratio_bound: BigRational,
    /// Factor that provably holds: two plus the second phase's factor.
    ///
    /// The first phase alone costs less than `2 · OPT`, by weak duality
    /// against the prefix-dual family. The second phase alone costs at most
    /// `f · OPT` (or `H_g · OPT`) against the element-dual family. The two
    /// families are not jointly feasible, so the costs add up and the
    /// claimed factor can be exceeded.
    pub proven_bound: BigRational,
    pub duals: DualState,
}

/// Summary of a result suitable for JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct ApproxSummary {
    pub members: Vec<usize>,
    pub weight: u64,
    pub value: u64,
    pub phase1: Vec<usize>,
    pub phase2: Vec<usize>,
    pub dual_objective: String,
    pub ratio_bound: String,
    pub proven_bound: String,
}

impl ApproxResult {
    pub fn summary(&self) -> ApproxSummary {
        ApproxSummary {
            members: self.solution.members.clone(),
            weight: self.solution.total_weight,
            value: self.solution.total_value,
            phase1: self.phase1_indices.clone(),
            phase2: self.phase2_indices.clone(),
            dual_objective: self.dual_objective.to_string(),
            ratio_bound: self.ratio_bound.to_string(),
            proven_bound: self.proven_bound.to_string(),
        }
    }
}

fn check_preconditions(sys: &SetSystem, d: u64) -> Result<()> {
    if !sys.is_coverable() {
        return Err(VckError::infeasible("the sets do not cover the universe"));
    }
    if d > sys.total_value() {
        return Err(VckError::infeasible(format!(
            "target {d} exceeds the total value {}",
            sys.total_value()
        )));
    }
    Ok(())
}

/// Phase 1: grows the prefix until its value reaches `d`.
fn grow_prefix(sys: &SetSystem, d: u64, duals: &mut DualState) -> Result<Vec<usize>> {
    let m = sys.m();
    let mut chosen = vec![false; m];
    let mut prefix: Vec<usize> = Vec::new();
    let mut taken = 0u64;
    while taken < d {
        let d_a = residual_target(d, taken);
        // the unchosen set that turns tight first, lowest index on ties
        let mut best: Option<(usize, BigRational)> = None;
        for i in (0..m).filter(|&i| !chosen[i]) {
            let rate = clamped_value(sys.set(i).value, d_a);
            if rate == 0 {
                continue;
            }
            let raise = &duals.residual_slack[i].0 / rat(rate);
            if best.as_ref().is_none_or(|(_, b)| raise < *b) {
                best = Some((i, raise));
            }
        }
        let Some((pick, raise)) = best else {
            return Err(VckError::infeasible(format!(
                "value stalls at {taken} below target {d}"
            )));
        };
        for i in (0..m).filter(|&i| !chosen[i]) {
            let rate = clamped_value(sys.set(i).value, d_a);
            if rate > 0 {
                duals.residual_slack[i].0 -= rat(rate) * &raise;
            }
        }
        duals.visited_prefixes.push((prefix.clone(), raise));
        chosen[pick] = true;
        prefix.push(pick);
        taken += sys.set(pick).value;
    }
    Ok(prefix)
}

fn fresh_duals(sys: &SetSystem) -> DualState {
    DualState {
        visited_prefixes: Vec::new(),
        element_duals: vec![BigRational::zero(); sys.n_elements()],
        residual_slack: sys
            .sets()
            .iter()
            .map(|s| (rat(s.weight), rat(s.weight)))
            .collect(),
    }
}

fn covered_by(sys: &SetSystem, chosen: &[usize]) -> Vec<bool> {
    let mut covered = vec![false; sys.n_elements()];
    for &i in chosen {
        for &e in &sys.set(i).elements {
            covered[e] = true;
        }
    }
    covered
}

fn finish(
    sys: &SetSystem,
    d: u64,
    phase1: Vec<usize>,
    phase2: Vec<usize>,
    duals: DualState,
    phase2_factor: BigRational,
    ratio_bound: BigRational,
) -> ApproxResult {
    let members: Vec<usize> = phase1.iter().chain(&phase2).copied().collect();
    let solution = Solution::from_members(members, &sys.weights(), &sys.values());
    ApproxResult {
        solution,
        dual_objective: duals.objective(sys, d),
        phase1_indices: phase1,
        phase2_indices: phase2,
        ratio_bound,
        proven_bound: rat(2) + phase2_factor,
        duals,
    }
}

/// Primal-dual algorithm. The claimed factor is the maximum element
/// frequency `f`; see [`ApproxResult::proven_bound`].
pub fn primal_dual_sck_target(sys: &SetSystem, d: u64) -> Result<ApproxResult> {
    check_preconditions(sys, d)?;
    let mut duals = fresh_duals(sys);
    let phase1 = grow_prefix(sys, d, &mut duals)?;

    let mut in_solution = vec![false; sys.m()];
    phase1.iter().for_each(|&i| in_solution[i] = true);
    let mut covered = covered_by(sys, &phase1);
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); sys.n_elements()];
    for (i, set) in sys.sets().iter().enumerate() {
        for &e in &set.elements {
            containing[e].push(i);
        }
    }
    let mut phase2 = Vec::new();
    while let Some(j) = covered.iter().position(|&c| !c) {
        let (pick, raise) = containing[j]
            .iter()
            .map(|&l| (l, duals.residual_slack[l].1.clone()))
            .reduce(|best, cand| if cand.1 < best.1 { cand } else { best })
            .expect("coverable universe");
        for &l in &containing[j] {
            duals.residual_slack[l].1 -= &raise;
        }
        duals.element_duals[j] += raise;
        debug_assert!(!in_solution[pick]);
        in_solution[pick] = true;
        phase2.push(pick);
        for &e in &sys.set(pick).elements {
            covered[e] = true;
        }
    }
    let f = sys.max_frequency() as u64;
    Ok(finish(sys, d, phase1, phase2, duals, rat(f), rat(f)))
}

/// Phase 1 followed by greedy cover completion. The claimed factor is
/// `max(2, H_g)` for the largest set size `g`; see
/// [`ApproxResult::proven_bound`].
pub fn greedy_sck_target(sys: &SetSystem, d: u64) -> Result<ApproxResult> {
    check_preconditions(sys, d)?;
    let mut duals = fresh_duals(sys);
    let phase1 = grow_prefix(sys, d, &mut duals)?;

    let covered = covered_by(sys, &phase1);
    let mut in_phase1 = vec![false; sys.m()];
    phase1.iter().for_each(|&i| in_phase1[i] = true);
    let mut residual: Vec<Vec<usize>> = sys
        .sets()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if in_phase1[i] {
                Vec::new()
            } else {
                s.elements.iter().copied().filter(|&e| !covered[e]).collect()
            }
        })
        .collect();
    let mut phase2 = Vec::new();
    loop {
        // arg min w(i)/|Ŝ_i| by cross-multiplication, lowest index on ties
        let mut best: Option<usize> = None;
        for (i, r) in residual.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            let better = best.is_none_or(|b| {
                let lhs = sys.set(i).weight as u128 * residual[b].len() as u128;
                let rhs = sys.set(b).weight as u128 * r.len() as u128;
                lhs < rhs
            });
            if better {
                best = Some(i);
            }
        }
        let Some(pick) = best else { break };
        let gone = std::mem::take(&mut residual[pick]);
        for r in residual.iter_mut() {
            r.retain(|e| gone.binary_search(e).is_err());
        }
        phase2.push(pick);
    }
    let h = harmonic(sys.max_set_size());
    let bound = if h > rat(2) { h.clone() } else { rat(2) };
    Ok(finish(sys, d, phase1, phase2, duals, h, bound))
}

/// Transposes a hitting-set system into a set system: the universe is the
/// original sets, and element `j` becomes the set of sets containing it,
/// keeping `w(j)` and `α(j)`.
pub fn dualize_hitting_set(h: &HittingSetSystem) -> SetSystem {
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); h.n_elements()];
    for (i, set) in h.sets().iter().enumerate() {
        for &j in set {
            members[j].push(i);
        }
    }
    let sets = members
        .into_iter()
        .enumerate()
        .map(|(j, elements)| WeightedSet {
            elements,
            weight: h.element_weights()[j],
            value: h.element_values()[j],
        })
        .collect();
    SetSystem::new(h.m(), sets).expect("transpose of a valid system is valid")
}

/// The inverse transpose. Fails if some universe element lies in no set,
/// since that element would become an empty, unhittable set.
pub fn dualize_set_system(sys: &SetSystem) -> Result<HittingSetSystem> {
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); sys.n_elements()];
    for (i, set) in sys.sets().iter().enumerate() {
        for &e in &set.elements {
            sets[e].push(i);
        }
    }
    HittingSetSystem::new(sys.weights(), sys.values(), sets)
}

/// Primal-dual on the transposed system; members are element ids and the
/// factor is the arity bound.
pub fn hsk_target_dapprox(h: &HittingSetSystem, d: u64) -> Result<ApproxResult> {
    let mut out = primal_dual_sck_target(&dualize_hitting_set(h), d)?;
    out.ratio_bound = rat(h.arity_bound() as u64);
    Ok(out)
}

/// Set system whose universe is the edges of `g` (in [`VertexGraph::edges`]
/// order) with one set per vertex holding its incident edges.
pub fn edge_set_system(g: &VertexGraph) -> SetSystem {
    let edges = g.edge_list();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (e, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let sets = incident
        .into_iter()
        .enumerate()
        .map(|(u, elements)| WeightedSet {
            elements,
            weight: g.weight(u),
            value: g.value(u),
        })
        .collect();
    SetSystem::new(edges.len(), sets).expect("incidence system is valid")
}

/// Vertex cover of value at least `d`, weight at most twice optimal.
pub fn vck_target_2approx(g: &VertexGraph, d: u64) -> Result<ApproxResult> {
    let mut out = primal_dual_sck_target(&edge_set_system(g), d)?;
    out.ratio_bound = rat(2);
    Ok(out)
}

/// Evaluates a fractional point against the LP relaxation of the
/// vertex-cover-with-target program: `x_u + x_v ≥ 1` on every edge and
/// `Σ α(u) x_u ≥ d`. Returns feasibility and the objective `Σ w(u) x_u`.
/// Entries outside `[0, 1]` make the point infeasible.
pub fn check_fractional_point(g: &VertexGraph, d: u64, x: &[BigRational]) -> Result<(bool, BigRational)> {
    if x.len() != g.n() {
        return Err(VckError::input(format!(
            "point has {} coordinates for {} vertices",
            x.len(),
            g.n()
        )));
    }
    let one = BigRational::one();
    let in_box = x.iter().all(|xi| !xi.is_negative() && *xi <= one);
    let edges_ok = g.edges().all(|(u, v)| &x[u] + &x[v] >= one);
    let value: BigRational = (0..g.n()).map(|u| rat(g.value(u)) * &x[u]).sum();
    let objective: BigRational = (0..g.n()).map(|u| rat(g.weight(u)) * &x[u]).sum();
    Ok((in_box && edges_ok && value >= rat(d), objective))
}
