//! On-disk instance and sweep descriptions: JSON shapes for groups, sets,
//! systems, and graphs, with cross-validation before any work runs.

use crate::cycle::ColoredDigraph;
use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupTable};
use crate::rng::derived_seed;
use crate::system::{parse_system, AbelianSystem, EquationSystem, OrderedSystem};
use serde::Deserialize;

/// Group descriptor: {"type":"cyclic","n":12}, {"type":"product",
/// "factors":[...]}, {"type":"dihedral","n":5}, {"type":"symmetric","n":4},
/// or {"type":"table","table":[[...]]}.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { n: usize },
    Product { factors: Vec<GroupSpec> },
    Dihedral { n: usize },
    Symmetric { n: usize },
    Table { table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupTable> {
        match self {
            GroupSpec::Cyclic { n } => GroupTable::cyclic(*n),
            GroupSpec::Product { factors } => {
                let mut built = factors.iter().map(|f| f.build());
                let first = built
                    .next()
                    .ok_or_else(|| Error::Spec("a product needs at least one factor".into()))??;
                built.try_fold(first, |acc, next| acc.direct_product(&next?))
            }
            GroupSpec::Dihedral { n } => GroupTable::dihedral(*n),
            GroupSpec::Symmetric { n } => GroupTable::symmetric(*n),
            GroupSpec::Table { table } => GroupTable::from_table(table.clone()),
        }
    }
}

/// One set: either an explicit member array or a seeded density generator.
/// A generator without a seed draws one from the instance seed and the
/// set's position.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    Members(Vec<usize>),
    Random {
        density: f64,
        #[serde(default)]
        seed: Option<u64>,
    },
}

impl SetSpec {
    pub fn build(&self, group_order: usize, fallback_seed: u64) -> Result<ElementSet> {
        match self {
            SetSpec::Members(list) => ElementSet::new(list.iter().copied(), group_order),
            SetSpec::Random { density, seed } => {
                ElementSet::random(group_order, *density, seed.unwrap_or(fallback_seed))
            }
        }
    }
}

/// A system: the text grammar, {"abelian": [[1,1,-1], ...]}, or
/// {"ordered": [[["x1",1],["x2",-1]], ...]}.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SystemSpec {
    Text(String),
    Abelian { abelian: Vec<Vec<i64>> },
    Ordered { ordered: Vec<Vec<(String, i64)>> },
}

fn variable_index(name: &str) -> Result<usize> {
    let number = name
        .strip_prefix('x')
        .and_then(|d| d.parse::<usize>().ok())
        .filter(|&i| i >= 1)
        .ok_or_else(|| Error::Spec(format!("bad variable name {name:?}, expected x1, x2, ...")))?;
    Ok(number - 1)
}

impl SystemSpec {
    pub fn build(&self) -> Result<EquationSystem> {
        match self {
            SystemSpec::Text(text) => parse_system(text),
            SystemSpec::Abelian { abelian } => {
                Ok(EquationSystem::Abelian(AbelianSystem::new(abelian.clone())?))
            }
            SystemSpec::Ordered { ordered } => {
                let words = ordered
                    .iter()
                    .map(|word| {
                        word.iter()
                            .map(|(name, exp)| {
                                let v = variable_index(name)?;
                                let e = i8::try_from(*exp)
                                    .ok()
                                    .filter(|e| matches!(e, 1 | -1))
                                    .ok_or_else(|| {
                                        Error::Spec(format!("exponent {exp} must be 1 or -1"))
                                    })?;
                                Ok((v, e))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(EquationSystem::Ordered(OrderedSystem::new(words)?))
            }
        }
    }
}

/// Graph JSON: {"vertices": h, "arcs": [{"tail":0,"head":1,"color":0}, ...]}.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub vertices: usize,
    pub arcs: Vec<ArcSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSpec {
    pub tail: usize,
    pub head: usize,
    pub color: usize,
}

impl GraphSpec {
    pub fn build(&self) -> Result<ColoredDigraph> {
        ColoredDigraph::new(
            self.vertices,
            self.arcs.iter().map(|a| (a.tail, a.head, a.color)).collect(),
        )
    }
}

/// A full instance file. Commands pick the parts they need; everything
/// present is validated and cross-checked at build time.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub group: GroupSpec,
    #[serde(default)]
    pub sets: Option<Vec<SetSpec>>,
    #[serde(default)]
    pub system: Option<SystemSpec>,
    #[serde(default)]
    pub graph: Option<GraphSpec>,
    /// Spanning tree as arc indices into the graph, rooted at vertex 0.
    #[serde(default)]
    pub tree: Option<Vec<usize>>,
    /// Raw cycle vectors, for representability checks without a system.
    #[serde(default)]
    pub vectors: Option<Vec<Vec<i64>>>,
    /// Overrides the right-hand side of a single product equation.
    #[serde(default)]
    pub g: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A built instance, every part validated and mutually consistent.
pub struct Instance {
    pub group: GroupTable,
    pub sets: Option<Vec<ElementSet>>,
    pub system: Option<EquationSystem>,
    pub graph: Option<ColoredDigraph>,
    pub tree: Option<Vec<usize>>,
    pub vectors: Option<Vec<Vec<i64>>>,
    pub seed: u64,
}

impl InstanceSpec {
    /// Builds and cross-validates. `seed_override` (the command line flag)
    /// wins over the file's seed; the default is 0.
    pub fn build(&self, seed_override: Option<u64>) -> Result<Instance> {
        let group = self.group.build()?;
        let n = group.order();
        let seed = seed_override.or(self.seed).unwrap_or(0);

        let sets = self
            .sets
            .as_ref()
            .map(|specs| {
                specs
                    .iter()
                    .enumerate()
                    .map(|(i, s)| s.build(n, derived_seed(seed, i as u64)))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;

        let mut system = self.system.as_ref().map(SystemSpec::build).transpose()?;
        if let Some(g) = self.g {
            if g >= n {
                return Err(Error::Spec(format!(
                    "g = {g} outside the group of order {n}"
                )));
            }
            match system {
                Some(EquationSystem::Single(ref eq)) => {
                    system = Some(EquationSystem::Single(eq.with_rhs(g)));
                }
                Some(_) => {
                    return Err(Error::Spec(
                        "g only overrides single product equations".into(),
                    ))
                }
                None => {
                    return Err(Error::Spec("g given without a system".into()));
                }
            }
        }

        let graph = self.graph.as_ref().map(GraphSpec::build).transpose()?;

        if let (Some(sets), Some(system)) = (&sets, &system) {
            if sets.len() != system.num_variables() {
                return Err(Error::Spec(format!(
                    "system has {} variables but {} sets were given",
                    system.num_variables(),
                    sets.len()
                )));
            }
        }
        if let (Some(graph), Some(system)) = (&graph, &system) {
            if graph.arc_count() != system.num_variables() {
                return Err(Error::Spec(format!(
                    "system has {} variables but the graph has {} arcs",
                    system.num_variables(),
                    graph.arc_count()
                )));
            }
        }
        if let Some(vectors) = &self.vectors {
            let graph = graph.as_ref().ok_or_else(|| {
                Error::Spec("vectors need a graph to be checked against".into())
            })?;
            if let Some(v) = vectors.iter().find(|v| v.len() != graph.arc_count()) {
                return Err(Error::Spec(format!(
                    "vector of length {} against a graph with {} arcs",
                    v.len(),
                    graph.arc_count()
                )));
            }
        }
        if let Some(tree) = &self.tree {
            let graph = graph.as_ref().ok_or_else(|| {
                Error::Spec("a tree needs a graph to live in".into())
            })?;
            if let Some(&bad) = tree.iter().find(|&&a| a >= graph.arc_count()) {
                return Err(Error::Spec(format!("tree arc {bad} outside the graph")));
            }
        }

        Ok(Instance {
            group,
            sets,
            system,
            graph,
            tree: self.tree.clone(),
            vectors: self.vectors.clone(),
            seed,
        })
    }
}

/// Sweep configuration for δ → δ' experiments.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub groups: Vec<GroupSpec>,
    pub densities: Vec<f64>,
    pub system: SystemSpec,
    #[serde(default)]
    pub graph: Option<GraphSpec>,
    pub trials: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

pub struct Sweep {
    pub groups: Vec<GroupTable>,
    pub densities: Vec<f64>,
    pub system: EquationSystem,
    pub graph: Option<ColoredDigraph>,
    pub seed: u64,
    pub trials: usize,
}

impl SweepSpec {
    pub fn build(&self, seed_override: Option<u64>) -> Result<Sweep> {
        Ok(Sweep {
            groups: self
                .groups
                .iter()
                .map(GroupSpec::build)
                .collect::<Result<Vec<_>>>()?,
            densities: self.densities.clone(),
            system: self.system.build()?,
            graph: self.graph.as_ref().map(GraphSpec::build).transpose()?,
            seed: seed_override.or(self.seed).unwrap_or(0),
            trials: self.trials,
        })
    }
}

fn spec_error(e: serde_json::Error) -> Error {
    Error::Spec(e.to_string())
}

/// Parses an instance file's JSON text.
pub fn parse_instance(json: &str) -> Result<InstanceSpec> {
    serde_json::from_str(json).map_err(spec_error)
}

/// Parses a sweep configuration's JSON text.
pub fn parse_sweep(json: &str) -> Result<SweepSpec> {
    serde_json::from_str(json).map_err(spec_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_descriptors_build() {
        let cyclic: GroupSpec = serde_json::from_str(r#"{"type":"cyclic","n":12}"#).unwrap();
        assert_eq!(cyclic.build().unwrap().order(), 12);
        let product: GroupSpec = serde_json::from_str(
            r#"{"type":"product","factors":[{"type":"cyclic","n":2},{"type":"cyclic","n":3}]}"#,
        )
        .unwrap();
        let g = product.build().unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        let dihedral: GroupSpec = serde_json::from_str(r#"{"type":"dihedral","n":5}"#).unwrap();
        assert_eq!(dihedral.build().unwrap().order(), 10);
        let symmetric: GroupSpec = serde_json::from_str(r#"{"type":"symmetric","n":4}"#).unwrap();
        assert_eq!(symmetric.build().unwrap().order(), 24);
        let table: GroupSpec =
            serde_json::from_str(r#"{"type":"table","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(table.build().unwrap().order(), 2);
    }

    #[test]
    fn unknown_group_fields_are_rejected() {
        assert!(serde_json::from_str::<GroupSpec>(r#"{"type":"cyclic","m":3}"#).is_err());
        assert!(serde_json::from_str::<GroupSpec>(r#"{"type":"swirl","n":3}"#).is_err());
    }

    #[test]
    fn sets_build_from_members_and_generators() {
        let spec: InstanceSpec = serde_json::from_str(
            r#"{
                "group": {"type":"cyclic","n":10},
                "sets": [[1,3,5], {"density":0.5,"seed":7}, {"density":0.5}],
                "seed": 99
            }"#,
        )
        .unwrap();
        let inst = spec.build(None).unwrap();
        let sets = inst.sets.unwrap();
        assert_eq!(sets[0].to_vec(), vec![1, 3, 5]);
        assert_eq!(sets[1], ElementSet::random(10, 0.5, 7).unwrap());
        assert_eq!(
            sets[2],
            ElementSet::random(10, 0.5, derived_seed(99, 2)).unwrap()
        );
        // the command-line seed redraws only the unseeded generator
        let overridden = spec.build(Some(1)).unwrap().sets.unwrap();
        assert_eq!(overridden[1], sets[1]);
        assert_eq!(
            overridden[2],
            ElementSet::random(10, 0.5, derived_seed(1, 2)).unwrap()
        );
    }

    #[test]
    fn system_shapes_build() {
        let text: SystemSpec = serde_json::from_str(r#""x1 + x2 - x3 = 0""#).unwrap();
        assert_eq!(text.build().unwrap().num_variables(), 3);
        let abelian: SystemSpec =
            serde_json::from_str(r#"{"abelian":[[1,1,-1],[0,1,1]]}"#).unwrap();
        assert_eq!(abelian.build().unwrap().num_equations(), 2);
        let ordered: SystemSpec = serde_json::from_str(
            r#"{"ordered":[[["x1",1],["x2",1],["x5",-1]],[["x3",1],["x4",-1]]]}"#,
        )
        .unwrap();
        let sys = ordered.build().unwrap();
        assert_eq!(sys.num_variables(), 5);
        assert!(matches!(sys, EquationSystem::Ordered(_)));
        let bad: SystemSpec = serde_json::from_str(r#"{"ordered":[[["y1",1]]]}"#).unwrap();
        assert!(bad.build().is_err());
        let bad_exp: SystemSpec = serde_json::from_str(r#"{"ordered":[[["x1",2]]]}"#).unwrap();
        assert!(bad_exp.build().is_err());
    }

    #[test]
    fn graphs_and_trees_cross_validate() {
        let spec: InstanceSpec = serde_json::from_str(
            r#"{
                "group": {"type":"cyclic","n":5},
                "system": "x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1",
                "graph": {"vertices": 4, "arcs": [
                    {"tail":0,"head":1,"color":0},
                    {"tail":1,"head":3,"color":1},
                    {"tail":0,"head":2,"color":2},
                    {"tail":2,"head":3,"color":3},
                    {"tail":0,"head":3,"color":4}
                ]},
                "tree": [0, 1, 2]
            }"#,
        )
        .unwrap();
        let inst = spec.build(None).unwrap();
        assert_eq!(inst.graph.as_ref().unwrap().arc_count(), 5);
        assert_eq!(inst.tree.unwrap(), vec![0, 1, 2]);

        let mut wrong = spec.clone();
        wrong.tree = Some(vec![0, 9]);
        assert!(wrong.build(None).is_err());
        let mut orphan_tree: InstanceSpec =
            serde_json::from_str(r#"{"group":{"type":"cyclic","n":5}}"#).unwrap();
        orphan_tree.tree = Some(vec![0]);
        assert!(orphan_tree.build(None).is_err());
    }

    #[test]
    fn variable_count_mismatches_are_spec_errors() {
        let spec: InstanceSpec = serde_json::from_str(
            r#"{
                "group": {"type":"cyclic","n":5},
                "sets": [[0],[1]],
                "system": "x1 x2 x3 = g0"
            }"#,
        )
        .unwrap();
        assert!(matches!(spec.build(None), Err(Error::Spec(_))));
    }

    #[test]
    fn g_override_rules() {
        let single: InstanceSpec = serde_json::from_str(
            r#"{
                "group": {"type":"cyclic","n":7},
                "system": "x1 x2 x3 = g0",
                "g": 4
            }"#,
        )
        .unwrap();
        match single.build(None).unwrap().system.unwrap() {
            EquationSystem::Single(eq) => assert_eq!(eq.rhs(), 4),
            _ => panic!("expected a single equation"),
        }
        let not_single: InstanceSpec = serde_json::from_str(
            r#"{
                "group": {"type":"cyclic","n":7},
                "system": "x1 + x2 = 0",
                "g": 4
            }"#,
        )
        .unwrap();
        assert!(not_single.build(None).is_err());
        let out_of_range: InstanceSpec = serde_json::from_str(
            r#"{
                "group": {"type":"cyclic","n":7},
                "system": "x1 x2 = g0",
                "g": 7
            }"#,
        )
        .unwrap();
        assert!(out_of_range.build(None).is_err());
    }

    #[test]
    fn vectors_need_matching_graph() {
        let spec: InstanceSpec = serde_json::from_str(
            r#"{
                "group": {"type":"cyclic","n":4},
                "graph": {"vertices": 3, "arcs": [
                    {"tail":0,"head":1,"color":0},
                    {"tail":1,"head":2,"color":1},
                    {"tail":2,"head":0,"color":2}
                ]},
                "vectors": [[1,1,1]]
            }"#,
        )
        .unwrap();
        assert!(spec.build(None).is_ok());
        let mut short = spec.clone();
        short.vectors = Some(vec![vec![1, 1]]);
        assert!(short.build(None).is_err());
        let mut orphan = spec;
        orphan.graph = None;
        assert!(orphan.build(None).is_err());
    }

    #[test]
    fn sweeps_parse_and_build() {
        let sweep = parse_sweep(
            r#"{
                "groups": [{"type":"cyclic","n":5},{"type":"cyclic","n":7}],
                "densities": [0.2, 0.4],
                "system": "x1 x2 x3 = g0",
                "trials": 3,
                "seed": 11
            }"#,
        )
        .unwrap()
        .build(None)
        .unwrap();
        assert_eq!(sweep.groups.len(), 2);
        assert_eq!(sweep.system.num_variables(), 3);
        assert_eq!(sweep.seed, 11);
        assert!(parse_sweep(r#"{"groups": []}"#).is_err(), "missing fields");
    }

    #[test]
    fn malformed_json_is_a_spec_error() {
        assert!(matches!(parse_instance("{"), Err(Error::Spec(_))));
        assert!(matches!(
            parse_instance(r#"{"group":{"type":"cyclic","n":5},"extra":1}"#),
            Err(Error::Spec(_))
        ));
    }
}
