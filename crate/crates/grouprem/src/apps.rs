//! Three set-statistics applications built on one fixed pipeline: the
//! product pair system x1 x2 = x3 x4 = x5, blown up over its 4-vertex
//! representing graph, driven through hitting set and pigeonhole. Each
//! application substitutes its own sets and certifies its property by
//! direct enumeration afterwards.

use crate::counting::representation_product_sum;
use crate::cycle::{is_strong_representation, ColoredDigraph, SpanningTree};
use crate::blowup::build_system_blowup;
use crate::error::{Error, Result};
use crate::group::{product_set, ElementSet, GroupTable};
use crate::removal::{greedy_arc_hitting_set, pigeonhole_reduce, RemovalReport};
use crate::system::{EquationSystem, OrderedSystem};
use serde::Serialize;

/// The two-word system x1 x2 x4^-1 x3^-1 = 1, x1 x2 x5^-1 = 1.
pub fn product_pair_system() -> OrderedSystem {
    OrderedSystem::new(vec![
        vec![(0, 1), (1, 1), (3, -1), (2, -1)],
        vec![(0, 1), (1, 1), (4, -1)],
    ])
    .expect("the product pair system is well-formed")
}

/// The 4-vertex, 5-arc base graph strongly representing the product pair
/// system, with the path tree over arcs x1, x2, x3.
pub fn pipeline_base() -> (ColoredDigraph, SpanningTree) {
    let graph = ColoredDigraph::from_arcs_in_color_order(
        4,
        vec![(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)],
    )
    .expect("the base graph is well-formed");
    let tree = SpanningTree::new(&graph, vec![0, 1, 2], 0).expect("the base tree spans");
    (graph, tree)
}

/// Property certified after removal, with its exact witness counts.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Certificate {
    /// (A')^2 does not meet E'.
    ProductFree {
        reduced: ElementSet,
        target: ElementSet,
        intersection_size: usize,
        holds: bool,
    },
    /// |(A')^2| against |A'|, and (A')^2 inside A union the dropped part
    /// of the complement.
    Doubling {
        reduced: ElementSet,
        product_size: usize,
        reduced_size: usize,
        contained_in_allowed: bool,
    },
    /// Size of A'B' meet B'A'.
    Commuting {
        reduced_a: ElementSet,
        reduced_b: ElementSet,
        intersection_size: usize,
    },
}

/// One application run: the unnormalized statistic, the pipeline report,
/// and the recomputed certificate.
#[derive(Clone, Debug, Serialize)]
pub struct ApplicationResult {
    pub statistic: u64,
    pub report: RemovalReport,
    pub certificate: Certificate,
}

/// Runs the shared pipeline on (A, B, C, D, E): statistic, blow-up over
/// the fixed base graph (its strong representation re-validated every
/// run), greedy hitting set, pigeonhole reduction.
fn run_pipeline(
    group: &GroupTable,
    sets: [&ElementSet; 5],
) -> Result<(u64, RemovalReport)> {
    let statistic = representation_product_sum(group, sets[0], sets[1], sets[2], sets[3], sets[4])?;
    let statistic = u64::try_from(statistic).expect("statistic is at most N^3");
    let system = product_pair_system();
    let (graph, tree) = pipeline_base();
    if !is_strong_representation(&graph, &tree, &system)? {
        return Err(Error::ContractViolation(
            "the fixed base graph no longer represents the product pair system".into(),
        ));
    }
    let owned: Vec<ElementSet> = sets.iter().map(|&s| s.clone()).collect();
    let blowup = build_system_blowup(group, &owned, &graph)?;
    let e = greedy_arc_hitting_set(&blowup)?;
    let report = pigeonhole_reduce(&e, &blowup, &EquationSystem::Ordered(system))?;
    Ok((statistic, report))
}

/// Intersection of a base set with the reduction of every variable it was
/// substituted into: removals from any of those variables apply.
fn joint_reduction(base: &ElementSet, report: &RemovalReport, variables: &[usize]) -> ElementSet {
    let drop: Vec<usize> = variables
        .iter()
        .flat_map(|&v| report.removed[v].to_vec())
        .collect();
    base.without(&drop)
}

/// Substitutes A = B = C = D = a: after removal, no product of two
/// elements of the reduced set lands in the reduced target.
pub fn product_free_removal(
    group: &GroupTable,
    a: &ElementSet,
    e: &ElementSet,
) -> Result<ApplicationResult> {
    let (statistic, report) = run_pipeline(group, [a, a, a, a, e])?;
    let reduced = joint_reduction(a, &report, &[0, 1, 2, 3]);
    let target = report.reduced[4].clone();
    let hits = product_set(group, &reduced, &reduced).intersection(&target);
    let certificate = Certificate::ProductFree {
        intersection_size: hits.len(),
        holds: hits.is_empty(),
        reduced,
        target,
    };
    Ok(ApplicationResult {
        statistic,
        report,
        certificate,
    })
}

/// Substitutes A = B = C = D = a and E = G \ a: the reduced set's product
/// square stays inside a plus the dropped part of the complement, so its
/// size can exceed |A'| only by the removal budget.
pub fn small_doubling_removal(group: &GroupTable, a: &ElementSet) -> Result<ApplicationResult> {
    let e = a.complement();
    let (statistic, report) = run_pipeline(group, [a, a, a, a, &e])?;
    let reduced = joint_reduction(a, &report, &[0, 1, 2, 3]);
    let square = product_set(group, &reduced, &reduced);
    // E \ E' is exactly B_5, the part of the complement the pipeline dropped
    let allowed: Vec<usize> = a.members().chain(report.removed[4].members()).collect();
    let contained = square.members().all(|g| allowed.contains(&g));
    let certificate = Certificate::Doubling {
        product_size: square.len(),
        reduced_size: reduced.len(),
        contained_in_allowed: contained,
        reduced,
    };
    Ok(ApplicationResult {
        statistic,
        report,
        certificate,
    })
}

/// Substitutes (A, B, C, D, E) = (a, b, b, a, G): after removal the
/// products A'B' and B'A' barely meet.
pub fn commuting_pairs_removal(
    group: &GroupTable,
    a: &ElementSet,
    b: &ElementSet,
) -> Result<ApplicationResult> {
    let full = ElementSet::full(group.order());
    let (statistic, report) = run_pipeline(group, [a, b, b, a, &full])?;
    let reduced_a = joint_reduction(a, &report, &[0, 3]);
    let reduced_b = joint_reduction(b, &report, &[1, 2]);
    let ab = product_set(group, &reduced_a, &reduced_b);
    let ba = product_set(group, &reduced_b, &reduced_a);
    let certificate = Certificate::Commuting {
        intersection_size: ab.intersection(&ba).len(),
        reduced_a,
        reduced_b,
    };
    Ok(ApplicationResult {
        statistic,
        report,
        certificate,
    })
}

/// Elements strictly between n/3 and 2n/3: the classical sum-free
/// interval in Z_n.
pub fn middle_third_interval(group_order: usize) -> Result<ElementSet> {
    ElementSet::new(
        (0..group_order).filter(|&x| 3 * x > group_order && 3 * x < 2 * group_order),
        group_order,
    )
}
