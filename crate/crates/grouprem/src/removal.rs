//! The removal pipeline: find an arc set that leaves the blow-up
//! copy-free, push it through the label-count pigeonhole to element sets
//! B_i, and certify that the reduced sets carry no solutions. An exact
//! branch-and-bound oracle provides the true minimum for small instances.

use crate::blowup::{build_cycle_blowup, build_system_blowup, BlowupGraph};
use crate::counting::{count_solutions_system, enumerate_solutions};
use crate::cycle::{is_graph_representation, is_strong_representation, spanning_trees, ColoredDigraph};
use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupTable};
use crate::rng::{derived_seed, SplitMix64};
use crate::system::EquationSystem;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

#[cfg(feature = "rayon")]
use rayon::prelude::*;

/// Cap on the number of copies the hitting-set builders will enumerate.
const COPY_ENUMERATION_CAP: usize = 1_000_000;

/// Cap on Σ|A_i| for the exact oracle.
pub const EXACT_REMOVAL_CAP: usize = 40;

/// Node budget for the exact oracle's branch and bound. A node count,
/// not a wall clock, so exhaustion is reproducible.
const BRANCH_NODE_BUDGET: u64 = 2_000_000;

/// How the arcs of a removal set were chosen. The pipeline substitutes an
/// exact hitting set for the regularity-based argument, and reports say so.
const GREEDY_METHOD: &str = "greedy exact hitting set (non-regularity)";
const RANDOM_METHOD: &str = "random exact hitting set (non-regularity)";

/// A set of blow-up arc ids, ordered for deterministic iteration.
#[derive(Clone, Debug, Serialize)]
pub struct ArcRemovalSet {
    ids: BTreeSet<u64>,
    method: String,
}

impl ArcRemovalSet {
    /// Wraps arbitrary ids after validating them against the blow-up.
    pub fn from_ids(
        blowup: &BlowupGraph<'_>,
        ids: impl IntoIterator<Item = u64>,
        method: &str,
    ) -> Result<Self> {
        let ids: BTreeSet<u64> = ids.into_iter().collect();
        if let Some(&bad) = ids.iter().find(|&&id| id >= blowup.arc_count()) {
            return Err(Error::InvalidParameter(format!(
                "arc id {bad} outside the blow-up ({} arcs)",
                blowup.arc_count()
            )));
        }
        Ok(Self {
            ids,
            method: method.to_string(),
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: u64) -> bool {
        self.ids.contains(&id)
    }

    pub fn ids(&self) -> impl Iterator<Item = u64> + '_ {
        self.ids.iter().copied()
    }

    pub fn method(&self) -> &str {
        &self.method
    }
}

/// Outcome of the pigeonhole reduction.
#[derive(Clone, Debug, Serialize)]
pub struct RemovalReport {
    /// Name of the arc-selection rule that produced E.
    pub arc_selection: String,
    /// |E|.
    pub e_size: u64,
    /// B_i: elements whose E-arc label count c satisfies c * m >= N.
    pub removed: Vec<ElementSet>,
    /// A'_i = A_i \ B_i.
    pub reduced: Vec<ElementSet>,
    /// Solutions left over the reduced sets; zero on success.
    pub residual: u64,
    /// The threshold is the exact comparison count * threshold_m >= threshold_n.
    pub threshold_n: u64,
    pub threshold_m: u64,
    /// Wall time of the reduction; excluded from serialized output so
    /// identical runs stay byte-identical.
    #[serde(skip)]
    pub timing: Duration,
}

impl RemovalReport {
    pub fn total_removed(&self) -> usize {
        self.removed.iter().map(ElementSet::len).sum()
    }
}

fn enumerate_copy_arc_sets(blowup: &BlowupGraph<'_>) -> Result<Vec<Vec<u64>>> {
    let copies = blowup.enumerate_copies(COPY_ENUMERATION_CAP)?;
    Ok(copies
        .iter()
        .map(|c| blowup.copy_arc_ids(c).expect("enumerated copies are valid"))
        .collect())
}

fn certify_copy_free(blowup: &BlowupGraph<'_>, e: &ArcRemovalSet) -> Result<()> {
    if blowup.count_copies_excluding(|id| e.contains(id)) != 0 {
        return Err(Error::ContractViolation(
            "the arc set leaves a surviving copy".into(),
        ));
    }
    Ok(())
}

/// Sort key realizing the (color, label, tail) tie-break.
fn arc_order_key(blowup: &BlowupGraph<'_>, id: u64) -> (usize, usize, usize) {
    let (color, tail, pos) = blowup.arc_parts(id);
    (color, blowup.sets()[color].member(pos), tail)
}

/// Arc set hitting every copy: repeatedly removes the arc lying on the
/// most surviving copies, ties broken by smallest (color, label, tail).
/// The result is recounted to certify copy-freeness.
pub fn greedy_arc_hitting_set(blowup: &BlowupGraph<'_>) -> Result<ArcRemovalSet> {
    let copy_arcs = enumerate_copy_arc_sets(blowup)?;
    let mut alive: Vec<usize> = (0..copy_arcs.len()).collect();
    let mut chosen = BTreeSet::new();
    while !alive.is_empty() {
        let mut freq = std::collections::HashMap::new();
        for &c in &alive {
            for &id in &copy_arcs[c] {
                *freq.entry(id).or_insert(0usize) += 1;
            }
        }
        let best = freq
            .iter()
            .map(|(&id, &count)| (count, std::cmp::Reverse(arc_order_key(blowup, id)), id))
            .max()
            .map(|(_, _, id)| id)
            .expect("alive copies have arcs");
        chosen.insert(best);
        alive.retain(|&c| !copy_arcs[c].contains(&best));
    }
    let e = ArcRemovalSet {
        ids: chosen,
        method: GREEDY_METHOD.to_string(),
    };
    certify_copy_free(blowup, &e)?;
    Ok(e)
}

/// Adversarial counterpart of the greedy rule: hit a random surviving
/// copy on a random arc until none survive. Deterministic given the seed.
pub fn random_arc_hitting_set(blowup: &BlowupGraph<'_>, seed: u64) -> Result<ArcRemovalSet> {
    let copy_arcs = enumerate_copy_arc_sets(blowup)?;
    let mut rng = SplitMix64::new(seed);
    let mut alive: Vec<usize> = (0..copy_arcs.len()).collect();
    let mut chosen = BTreeSet::new();
    while !alive.is_empty() {
        let victim = alive[rng.next_below(alive.len())];
        let arcs = &copy_arcs[victim];
        let id = arcs[rng.next_below(arcs.len())];
        chosen.insert(id);
        alive.retain(|&c| !copy_arcs[c].contains(&id));
    }
    let e = ArcRemovalSet {
        ids: chosen,
        method: RANDOM_METHOD.to_string(),
    };
    certify_copy_free(blowup, &e)?;
    Ok(e)
}

/// The pigeonhole step: given an arc set E hitting every copy, collect
/// into B_i each element a whose [a, i] label occurs on at least N/m arcs
/// of E (compared exactly as count * m >= N), reduce A'_i = A_i \ B_i,
/// and certify by an independent recount that no solution survives.
///
/// The system is taken explicitly because the residual recount needs it;
/// its variable count must match the blow-up's colors.
pub fn pigeonhole_reduce(
    e: &ArcRemovalSet,
    blowup: &BlowupGraph<'_>,
    system: &EquationSystem,
) -> Result<RemovalReport> {
    let start = Instant::now();
    let m = blowup.num_colors();
    let n = blowup.group().order();
    if system.num_variables() != m {
        return Err(Error::InvalidParameter(format!(
            "system has {} variables but the blow-up has {m} colors",
            system.num_variables()
        )));
    }
    if let Some(bad) = e.ids().find(|&id| id >= blowup.arc_count()) {
        return Err(Error::InvalidParameter(format!(
            "arc id {bad} outside the blow-up"
        )));
    }
    certify_copy_free(blowup, e)
        .map_err(|_| Error::ContractViolation(
            "the arc set misses a copy; the pigeonhole guarantee is void".into(),
        ))?;

    let mut label_counts = vec![std::collections::HashMap::new(); m];
    for id in e.ids() {
        let (a, color) = blowup.arc_label(id);
        *label_counts[color].entry(a).or_insert(0u64) += 1;
    }
    let mut removed = Vec::with_capacity(m);
    let mut reduced = Vec::with_capacity(m);
    for (i, set) in blowup.sets().iter().enumerate() {
        let b: Vec<usize> = set
            .members()
            .filter(|a| {
                label_counts[i]
                    .get(a)
                    .is_some_and(|&c| c as u128 * m as u128 >= n as u128)
            })
            .collect();
        assert!(
            b.len() as u128 * n as u128 <= m as u128 * e.len() as u128,
            "pigeonhole size bound |B_i| <= m|E|/N must hold"
        );
        reduced.push(set.without(&b));
        removed.push(ElementSet::new(b, n)?);
    }

    let residual = count_solutions_system(blowup.group(), &reduced, system)?;
    if residual != 0 {
        return Err(Error::ContractViolation(format!(
            "{residual} solutions survive the reduction; the blow-up does not \
             carry the copy correspondence for this system"
        )));
    }
    Ok(RemovalReport {
        arc_selection: e.method().to_string(),
        e_size: e.len() as u64,
        removed,
        reduced,
        residual: 0,
        threshold_n: n as u64,
        threshold_m: m as u64,
        timing: start.elapsed(),
    })
}

/// Result of the exact minimum-removal search.
#[derive(Clone, Debug, Serialize)]
pub struct ExactRemoval {
    /// Elements removed from each A_i.
    pub removed: Vec<ElementSet>,
    /// Total number of removed elements, summed over the sets.
    pub total: usize,
    /// True when the search completed; the total is then a proven minimum.
    pub optimal: bool,
    /// Matching lower bound on the minimum; equals `total` when optimal.
    pub lower_bound: usize,
}

/// Minimum number of element removals (summed over the sets) that leave
/// the system solution-free: minimum vertex cover of the hypergraph whose
/// vertices are (set, element) pairs and whose edges are the solutions,
/// by branch and bound with a greedy upper bound and a disjoint-edge
/// matching lower bound. Deterministic node budget, no wall clock.
pub fn exact_min_removal(
    group: &GroupTable,
    sets: &[ElementSet],
    system: &EquationSystem,
) -> Result<ExactRemoval> {
    let weight: usize = sets.iter().map(ElementSet::len).sum();
    if weight > EXACT_REMOVAL_CAP {
        return Err(Error::SizeLimit(format!(
            "exact removal capped at total set size {EXACT_REMOVAL_CAP}, got {weight}"
        )));
    }
    let solutions = enumerate_solutions(group, sets, system, 10_000_000)?;
    let n = group.order();
    let empty = |total: usize, optimal| ExactRemoval {
        removed: sets.iter().map(|_| ElementSet::empty(n)).collect(),
        total,
        optimal,
        lower_bound: total,
    };
    if solutions.is_empty() {
        return Ok(empty(0, true));
    }

    // vertices are the (set index, element) pairs that occur in solutions;
    // with Σ|A_i| <= 40 they fit one u64 mask per hyperedge
    let mut vertices = BTreeSet::new();
    for sol in &solutions {
        for (i, &x) in sol.iter().enumerate() {
            vertices.insert((i, x));
        }
    }
    let vertices: Vec<(usize, usize)> = vertices.into_iter().collect();
    debug_assert!(vertices.len() <= EXACT_REMOVAL_CAP);
    let index_of = |v: &(usize, usize)| vertices.binary_search(v).expect("known vertex");
    let edges: Vec<u64> = solutions
        .iter()
        .map(|sol| {
            sol.iter()
                .enumerate()
                .fold(0u64, |mask, (i, &x)| mask | 1 << index_of(&(i, x)))
        })
        .collect();

    let mut search = CoverSearch {
        edges: &edges,
        best_mask: 0,
        best_size: usize::MAX,
        budget: BRANCH_NODE_BUDGET,
        exhausted: false,
    };
    let root_lower = matching_lower_bound(&edges, 0);
    let greedy = greedy_cover(&edges, vertices.len());
    search.best_mask = greedy;
    search.best_size = greedy.count_ones() as usize;
    search.branch(0, 0);

    let total = search.best_size;
    let mut removed_lists = vec![Vec::new(); sets.len()];
    for (idx, &(i, x)) in vertices.iter().enumerate() {
        if search.best_mask >> idx & 1 == 1 {
            removed_lists[i].push(x);
        }
    }
    let removed = removed_lists
        .into_iter()
        .map(|list| ElementSet::new(list, n))
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(
        count_solutions_system(
            group,
            &sets
                .iter()
                .zip(&removed)
                .map(|(a, b)| a.without(&b.to_vec()))
                .collect::<Vec<_>>(),
            system
        )?,
        0,
        "the chosen cover must kill every solution"
    );
    Ok(ExactRemoval {
        removed,
        total,
        optimal: !search.exhausted,
        lower_bound: if search.exhausted { root_lower } else { total },
    })
}

struct CoverSearch<'a> {
    edges: &'a [u64],
    best_mask: u64,
    best_size: usize,
    budget: u64,
    exhausted: bool,
}

impl CoverSearch<'_> {
    fn branch(&mut self, cover: u64, chosen: usize) {
        if self.budget == 0 {
            self.exhausted = true;
            return;
        }
        self.budget -= 1;
        let Some(&edge) = self.edges.iter().find(|&&e| e & cover == 0) else {
            if chosen < self.best_size {
                self.best_size = chosen;
                self.best_mask = cover;
            }
            return;
        };
        if chosen + matching_lower_bound(self.edges, cover) >= self.best_size {
            return;
        }
        let mut rest = edge;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            self.branch(cover | 1 << v, chosen + 1);
        }
    }
}

/// Pairwise vertex-disjoint uncovered edges; each needs its own vertex.
fn matching_lower_bound(edges: &[u64], cover: u64) -> usize {
    let mut taken = 0u64;
    let mut count = 0;
    for &e in edges {
        if e & cover == 0 && e & taken == 0 {
            taken |= e;
            count += 1;
        }
    }
    count
}

/// Upper bound: repeatedly cover with the vertex on the most uncovered
/// edges, lowest index first on ties.
fn greedy_cover(edges: &[u64], num_vertices: usize) -> u64 {
    let mut cover = 0u64;
    loop {
        let mut counts = vec![0usize; num_vertices];
        let mut open = false;
        for &e in edges {
            if e & cover == 0 {
                open = true;
                let mut rest = e;
                while rest != 0 {
                    counts[rest.trailing_zeros() as usize] += 1;
                    rest &= rest - 1;
                }
            }
        }
        if !open {
            return cover;
        }
        let v = (0..num_vertices).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
        cover |= 1 << v;
    }
}

/// One row of a δ → δ' sweep.
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub group: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub density: f64,
    /// solutions / N^(m-k).
    pub delta: f64,
    /// Σ|B_i| / (m N).
    pub pipeline_removed_fraction: f64,
    /// Exact minimum / (m N), when the instance is within the oracle cap.
    pub oracle_removed_fraction: Option<f64>,
    pub residual: u64,
    #[serde(rename = "E_size")]
    pub e_size: u64,
    pub seed: u64,
    pub trial: usize,
}

/// Runs the full pipeline over every (group, density, trial) combination.
/// Single product equations blow up over the directed cycle; systems need
/// `base`, a graph that (strongly) represents them, validated up front.
/// Each trial is deterministic from (seed, flat trial index).
pub fn removal_experiment(
    groups: &[GroupTable],
    densities: &[f64],
    system: &EquationSystem,
    base: Option<&ColoredDigraph>,
    trials: usize,
    seed: u64,
) -> Result<Vec<TrialRecord>> {
    if groups.is_empty() || densities.is_empty() || trials == 0 {
        return Err(Error::InvalidParameter(
            "a sweep needs at least one group, one density, and one trial".into(),
        ));
    }
    if let Some(&d) = densities.iter().find(|d| !(0.0..=1.0).contains(*d)) {
        return Err(Error::InvalidParameter(format!(
            "density {d} outside [0, 1]"
        )));
    }
    let m = system.num_variables();
    let k = system.num_equations();
    match system {
        EquationSystem::Single(eq) => {
            if let Some(g) = groups.iter().find(|g| eq.rhs() >= g.order()) {
                return Err(Error::InvalidParameter(format!(
                    "right-hand side {} outside group {}",
                    eq.rhs(),
                    g.name()
                )));
            }
        }
        EquationSystem::Abelian(sys) => {
            let graph = base.ok_or_else(|| {
                Error::InvalidParameter("coefficient systems need a base graph".into())
            })?;
            if !is_graph_representation(graph, sys)? {
                return Err(Error::InvalidParameter(
                    "the base graph does not represent the system".into(),
                ));
            }
            if let Some(g) = groups.iter().find(|g| !g.is_abelian()) {
                return Err(Error::InvalidParameter(format!(
                    "coefficient systems need abelian groups, {} is not",
                    g.name()
                )));
            }
        }
        EquationSystem::Ordered(sys) => {
            let graph = base.ok_or_else(|| {
                Error::InvalidParameter("word systems need a base graph".into())
            })?;
            let strong = spanning_trees(graph)
                .iter()
                .any(|t| is_strong_representation(graph, t, sys).unwrap_or(false));
            if !strong {
                return Err(Error::InvalidParameter(
                    "no spanning tree of the base graph strongly represents the system".into(),
                ));
            }
        }
    }

    let mut params = Vec::new();
    for gi in 0..groups.len() {
        for &density in densities {
            for _ in 0..trials {
                let t = params.len();
                params.push((gi, density, t));
            }
        }
    }

    let run_one = |&(gi, density, t): &(usize, f64, usize)| -> Result<TrialRecord> {
        let group = &groups[gi];
        let n = group.order();
        let trial_seed = derived_seed(seed, t as u64);
        let sets: Vec<ElementSet> = (0..m)
            .map(|i| ElementSet::random(n, density, derived_seed(trial_seed, i as u64)))
            .collect::<Result<_>>()?;
        let solutions = count_solutions_system(group, &sets, system)?;
        let blowup = match system {
            EquationSystem::Single(eq) => build_cycle_blowup(group, &sets, eq.rhs())?,
            _ => build_system_blowup(group, &sets, base.expect("validated above"))?,
        };
        let e = greedy_arc_hitting_set(&blowup)?;
        let report = pigeonhole_reduce(&e, &blowup, system)?;
        let oracle = if sets.iter().map(ElementSet::len).sum::<usize>() <= EXACT_REMOVAL_CAP {
            Some(exact_min_removal(group, &sets, system)?)
        } else {
            None
        };
        let scale = (m * n) as f64;
        Ok(TrialRecord {
            group: group.name().to_string(),
            n,
            m,
            k,
            density,
            delta: solutions as f64 / (n as f64).powi((m - k) as i32),
            pipeline_removed_fraction: report.total_removed() as f64 / scale,
            oracle_removed_fraction: oracle.map(|o| o.total as f64 / scale),
            residual: report.residual,
            e_size: report.e_size,
            seed: trial_seed,
            trial: t,
        })
    };

    #[cfg(feature = "rayon")]
    let records = params.par_iter().map(run_one).collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "rayon"))]
    let records = params.iter().map(run_one).collect::<Result<Vec<_>>>()?;
    Ok(records)
}

/// CSV rendering of sweep records, header included.
pub fn records_to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(
        "group,N,m,k,density,delta,pipeline_removed_fraction,\
         oracle_removed_fraction,residual,E_size,seed,trial\n",
    );
    for r in records {
        let oracle = r
            .oracle_removed_fraction
            .map_or(String::new(), |f| f.to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.group,
            r.n,
            r.m,
            r.k,
            r.density,
            r.delta,
            r.pipeline_removed_fraction,
            oracle,
            r.residual,
            r.e_size,
            r.seed,
            r.trial
        );
    }
    out
}
