//! Exact machinery for equation systems over finite groups.

pub mod apps;
pub mod blowup;
pub mod counting;
pub mod cycle;
pub mod error;
pub mod group;
pub mod instance;
mod linalg;
pub mod removal;
pub mod rng;
pub mod system;

pub use apps::{
    commuting_pairs_removal, middle_third_interval, pipeline_base, product_free_removal,
    product_pair_system, small_doubling_removal, ApplicationResult, Certificate,
};
pub use blowup::{
    build_cycle_blowup, build_cycle_blowup_with_limit, build_system_blowup,
    build_system_blowup_with_limit, BlowupGraph, ColoredCopy, DEFAULT_MAX_ARCS,
};
pub use counting::{
    count_solutions_single, count_solutions_single_naive, count_solutions_system,
    count_solutions_system_naive, enumerate_solutions, representation_function,
    representation_product_sum, RepresentationFunction,
};
pub use cycle::{
    bowtie_graph, cycle_space_dimension, directed_cycle, fundamental_cycles, in_cycle_space,
    integrally_generates, is_graph_representation, is_strong_representation,
    maximal_square_determinants, search_representation, search_strong_representation,
    spanning_trees, ColoredDigraph, CycleVector, GenerationVerdict, SpanningTree,
};
pub use error::{Error, Result};
pub use group::{product_set, AxiomViolation, ElementSet, GroupTable, MAX_GROUP_ORDER};
pub use instance::{
    parse_instance, parse_sweep, GraphSpec, GroupSpec, Instance, InstanceSpec, SetSpec, Sweep,
    SweepSpec, SystemSpec,
};
pub use removal::{
    exact_min_removal, greedy_arc_hitting_set, pigeonhole_reduce, random_arc_hitting_set,
    records_to_csv, removal_experiment, ArcRemovalSet, ExactRemoval, RemovalReport, TrialRecord,
    EXACT_REMOVAL_CAP,
};
pub use rng::{derived_seed, SplitMix64};
pub use system::{
    parse_system, AbelianSystem, EquationSystem, OrderedSystem, SingleEquation, MAX_VARIABLES,
};
