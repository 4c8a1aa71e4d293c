//! The acceptance gate: eight exact criteria, one verdict line each.
//! Run with `cargo test -p grouprem-cli --test acceptance -- --nocapture`
//! to see every line; any FAIL also fails the test.

use grouprem::{
    bowtie_graph, build_cycle_blowup, build_system_blowup, count_solutions_system,
    count_solutions_system_naive, exact_min_removal, fundamental_cycles, greedy_arc_hitting_set,
    in_cycle_space, integrally_generates, is_strong_representation, middle_third_interval,
    parse_system, pigeonhole_reduce, pipeline_base, product_free_removal, product_pair_system,
    random_arc_hitting_set, representation_product_sum, small_doubling_removal, spanning_trees,
    AbelianSystem, Certificate, ElementSet, EquationSystem, GenerationVerdict, GroupTable,
    SplitMix64,
};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

fn criterion(number: usize, label: &str, run: impl FnOnce() -> Result<(), String>) {
    let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into());
        Err(msg)
    });
    match outcome {
        Ok(()) => println!("criterion {number} ({label}): PASS"),
        Err(msg) => {
            println!("criterion {number} ({label}): FAIL  {msg}");
            panic!("criterion {number} ({label}) failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lib<T>(r: grouprem::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The group pool named by the gate: every cyclic group up to order 30,
/// one abelian product with two-torsion, one dihedral, one symmetric.
fn gate_groups() -> Vec<GroupTable> {
    let mut groups: Vec<GroupTable> = (2..=30)
        .map(|n| GroupTable::cyclic(n).unwrap())
        .collect();
    let z2 = GroupTable::cyclic(2).unwrap();
    let z2z2 = z2.direct_product(&z2).unwrap();
    groups.push(z2z2.direct_product(&GroupTable::cyclic(3).unwrap()).unwrap());
    groups.push(GroupTable::dihedral(4).unwrap());
    groups.push(GroupTable::symmetric(3).unwrap());
    groups
}

fn random_sets(rng: &mut SplitMix64, n: usize, m: usize, density: f64) -> Vec<ElementSet> {
    (0..m)
        .map(|_| ElementSet::random(n, density, rng.next_u64()).unwrap())
        .collect()
}

/// Builds the blow-up and the system for one gate instance: single product
/// equations, the sum triangle on abelian groups, and the product-pair
/// word system over its fixed base graph.
enum GateSystem {
    Single { m: usize },
    SumTriangle,
    ProductPair,
}

impl GateSystem {
    fn pick(index: usize, abelian: bool) -> GateSystem {
        match index % 6 {
            0 => GateSystem::Single { m: 2 },
            1 => GateSystem::Single { m: 3 },
            2 => GateSystem::Single { m: 4 },
            3 => GateSystem::Single { m: 5 },
            4 if abelian => GateSystem::SumTriangle,
            4 => GateSystem::Single { m: 3 },
            _ => GateSystem::ProductPair,
        }
    }
}

#[test]
fn correspondence_identity_holds_across_random_instances() {
    criterion(1, "copy count equals N x solution count", || {
        let start = Instant::now();
        let groups = gate_groups();
        let mut instances = 0usize;
        for (gi, group) in groups.iter().enumerate() {
            let n = group.order();
            for rep in 0..7 {
                let mut rng = SplitMix64::new((gi as u64) << 8 | rep as u64);
                let density = 0.2 + 0.7 * rng.next_f64();
                let (system, sets, blowup) =
                    match GateSystem::pick(rep, group.is_abelian()) {
                        GateSystem::Single { m } => {
                            let g = rng.next_below(n);
                            let sets = random_sets(&mut rng, n, m, density);
                            let system =
                                lib(parse_system(&format!("{} = g{g}", single_lhs(m))))?;
                            let blowup = lib(build_cycle_blowup(group, &sets, g))?;
                            (system, sets, blowup)
                        }
                        GateSystem::SumTriangle => {
                            let sets = random_sets(&mut rng, n, 3, density);
                            let system = lib(parse_system("x1 + x2 + x3 = 0"))?;
                            let base = lib(grouprem::directed_cycle(3))?;
                            let blowup = lib(build_system_blowup(group, &sets, &base))?;
                            (system, sets, blowup)
                        }
                        GateSystem::ProductPair => {
                            let sets = random_sets(&mut rng, n, 5, density);
                            let system = EquationSystem::Ordered(product_pair_system());
                            let (base, _) = pipeline_base();
                            let blowup = lib(build_system_blowup(group, &sets, &base))?;
                            (system, sets, blowup)
                        }
                    };
                let copies = blowup.count_copies();
                let solutions = lib(count_solutions_system(group, &sets, &system))?;
                ensure!(
                    copies == n as u128 * solutions,
                    "{}: copies {copies} != {n} x {solutions}",
                    group.name()
                );
                instances += 1;
            }
        }
        ensure!(instances >= 200, "only {instances} instances generated");
        ensure!(
            start.elapsed().as_secs() < 300,
            "gate overran its five-minute budget"
        );
        Ok(())
    });
}

fn single_lhs(m: usize) -> String {
    (1..=m)
        .map(|i| format!("x{i}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[test]
fn integral_generation_discriminates_the_counterexample_pair() {
    criterion(2, "determinant discriminator on the two-triangle graph", || {
        let graph = bowtie_graph();
        let c1 = vec![1i64, 1, 1, 1, 1, 1];
        let c2 = vec![1i64, 1, 1, -1, -1, -1];
        let triangle = vec![1i64, 1, 1, 0, 0, 0];
        ensure!(lib(in_cycle_space(&c1, &graph))?, "c1 not in the cycle space");
        ensure!(lib(in_cycle_space(&c2, &graph))?, "c2 not in the cycle space");
        ensure!(
            lib(in_cycle_space(&triangle, &graph))?,
            "the triangle vector not in the cycle space"
        );
        ensure!(
            !lib(in_cycle_space(&[1, 0, 0, 0, 0, 0], &graph))?,
            "a single arc must not count as a cycle"
        );

        let verdict = lib(integrally_generates(&[c1, c2], &graph))?;
        match verdict {
            GenerationVerdict::BadDeterminant { determinant } => {
                ensure!(
                    determinant.abs() == 2,
                    "expected |det| = 2, got {determinant}"
                );
            }
            other => return Err(format!("expected a bad determinant, got {other:?}")),
        }

        let trees = spanning_trees(&graph);
        ensure!(trees.len() == 9, "expected 9 spanning trees, got {}", trees.len());
        for tree in &trees {
            let basis = lib(fundamental_cycles(&graph, tree))?;
            let verdict = lib(integrally_generates(&basis, &graph))?;
            ensure!(
                verdict.generates(),
                "fundamental basis of tree {:?} does not generate: {verdict:?}",
                tree.arc_indices()
            );
        }
        Ok(())
    });
}

#[test]
fn product_pair_base_graph_is_a_strong_representation() {
    criterion(3, "fixed base graph strongly represents the product pair", || {
        let (graph, tree) = pipeline_base();
        let sys = product_pair_system();
        ensure!(
            lib(is_strong_representation(&graph, &tree, &sys))?,
            "the base graph's tree does not realize the words"
        );
        let h = sys.num_variables() - sys.num_equations() + 1;
        ensure!(h == 4, "expected m - k + 1 = 4, got {h}");
        ensure!(
            graph.vertex_count() == 4 && graph.arc_count() == 5,
            "expected 4 vertices and 5 arcs, got {} and {}",
            graph.vertex_count(),
            graph.arc_count()
        );
        Ok(())
    });
}

/// Instances for the removal criteria: group, sets, system, blow-up base.
fn removal_instances() -> Vec<(GroupTable, usize, f64)> {
    let mut groups: Vec<GroupTable> = (4..=12)
        .map(|n| GroupTable::cyclic(n).unwrap())
        .collect();
    groups.push(GroupTable::dihedral(3).unwrap());
    groups.push(GroupTable::dihedral(4).unwrap());
    groups.push(GroupTable::symmetric(3).unwrap());
    let z2 = GroupTable::cyclic(2).unwrap();
    groups.push(z2.direct_product(&z2).unwrap());
    let mut out = Vec::new();
    for (gi, group) in groups.into_iter().enumerate() {
        for (di, density) in [0.35, 0.6, 0.85].into_iter().enumerate() {
            for variant in 0..3 {
                let seed = (gi as u64) * 97 + (di as u64) * 13 + variant as u64;
                let _ = seed;
                out.push((group.clone(), variant, density));
            }
        }
    }
    out
}

#[test]
fn removal_pipeline_is_sound_on_adversarial_instances() {
    criterion(4, "hit sets reduce to solution-free sets within the bound", || {
        let mut instances = 0usize;
        for (idx, (group, variant, density)) in removal_instances().into_iter().enumerate() {
            let n = group.order();
            let mut rng = SplitMix64::new(0xA000 + idx as u64);
            let (system, sets, blowup) = match variant {
                0 => {
                    let m = 2 + idx % 3;
                    let g = rng.next_below(n);
                    let sets = random_sets(&mut rng, n, m, density);
                    let system = lib(parse_system(&format!("{} = g{g}", single_lhs(m))))?;
                    let blowup = lib(build_cycle_blowup(&group, &sets, g))?;
                    (system, sets, blowup)
                }
                1 if group.is_abelian() => {
                    let sets = random_sets(&mut rng, n, 3, density);
                    let system = lib(parse_system("x1 + x2 + x3 = 0"))?;
                    let base = lib(grouprem::directed_cycle(3))?;
                    let blowup = lib(build_system_blowup(&group, &sets, &base))?;
                    (system, sets, blowup)
                }
                _ => {
                    let sets = random_sets(&mut rng, n, 5, density);
                    let system = EquationSystem::Ordered(product_pair_system());
                    let (base, _) = pipeline_base();
                    let blowup = lib(build_system_blowup(&group, &sets, &base))?;
                    (system, sets, blowup)
                }
            };
            let m = system.num_variables() as u64;
            for selection in [
                lib(greedy_arc_hitting_set(&blowup))?,
                lib(random_arc_hitting_set(&blowup, 0xB000 + idx as u64))?,
            ] {
                let survivors = blowup.count_copies_excluding(|id| selection.contains(id));
                ensure!(
                    survivors == 0,
                    "{} ({}): {survivors} copies survive the hit set",
                    group.name(),
                    selection.method()
                );
                let report = lib(pigeonhole_reduce(&selection, &blowup, &system))?;
                ensure!(
                    report.residual == 0,
                    "{}: residual {} after reduction",
                    group.name(),
                    report.residual
                );
                for (i, b) in report.removed.iter().enumerate() {
                    ensure!(
                        b.len() as u64 * n as u64 <= m * report.e_size,
                        "{}: |B_{}| = {} breaks the pigeonhole bound with |E| = {}",
                        group.name(),
                        i + 1,
                        b.len(),
                        report.e_size
                    );
                }
                let _ = sets;
            }
            instances += 1;
        }
        ensure!(instances >= 100, "only {instances} instances generated");
        Ok(())
    });
}

#[test]
fn exact_oracle_never_exceeds_the_pipeline() {
    criterion(5, "minimum removal dominates the pipeline and recounts clean", || {
        let mut groups: Vec<GroupTable> = (4..=10)
            .map(|n| GroupTable::cyclic(n).unwrap())
            .collect();
        groups.push(GroupTable::dihedral(3).unwrap());
        groups.push(GroupTable::symmetric(3).unwrap());
        let mut instances = 0usize;
        for (gi, group) in groups.iter().enumerate() {
            let n = group.order();
            for rep in 0..4 {
                let mut rng = SplitMix64::new(0xC000 + (gi * 7 + rep) as u64);
                let m = 2 + rep % 3;
                let g = rng.next_below(n);
                let sets = random_sets(&mut rng, n, m, 0.4);
                if sets.iter().map(ElementSet::len).sum::<usize>() > 40 {
                    continue;
                }
                let system = lib(parse_system(&format!("{} = g{g}", single_lhs(m))))?;
                let blowup = lib(build_cycle_blowup(group, &sets, g))?;
                let selection = lib(greedy_arc_hitting_set(&blowup))?;
                let report = lib(pigeonhole_reduce(&selection, &blowup, &system))?;
                let oracle = lib(exact_min_removal(group, &sets, &system))?;
                ensure!(
                    oracle.total <= report.total_removed(),
                    "{}: oracle removed {} but the pipeline removed {}",
                    group.name(),
                    oracle.total,
                    report.total_removed()
                );
                ensure!(
                    oracle.optimal && oracle.lower_bound == oracle.total,
                    "{}: branch and bound did not close on a tiny instance",
                    group.name()
                );
                let reduced: Vec<ElementSet> = sets
                    .iter()
                    .zip(&oracle.removed)
                    .map(|(a, b)| a.without(&b.to_vec()))
                    .collect();
                let residual = lib(count_solutions_system_naive(group, &reduced, &system))?;
                ensure!(
                    residual == 0,
                    "{}: independent recount found {residual} solutions",
                    group.name()
                );
                instances += 1;
            }
        }
        ensure!(instances >= 30, "only {instances} instances within the cap");
        Ok(())
    });
}

#[test]
fn application_statistics_match_direct_counts() {
    criterion(6, "statistic identities and certificate spot checks", || {
        // the pipeline statistic is exactly the solution count of the
        // product-pair system
        let mut groups: Vec<GroupTable> = (3..=10)
            .map(|n| GroupTable::cyclic(n).unwrap())
            .collect();
        groups.push(GroupTable::dihedral(3).unwrap());
        groups.push(GroupTable::dihedral(4).unwrap());
        groups.push(GroupTable::symmetric(3).unwrap());
        let system = EquationSystem::Ordered(product_pair_system());
        let mut identities = 0usize;
        for (gi, group) in groups.iter().enumerate() {
            let n = group.order();
            for rep in 0..5 {
                let mut rng = SplitMix64::new(0xD000 + (gi * 11 + rep) as u64);
                let density = 0.2 + 0.15 * (rep as f64);
                let sets = random_sets(&mut rng, n, 5, density);
                let statistic = lib(representation_product_sum(
                    group, &sets[0], &sets[1], &sets[2], &sets[3], &sets[4],
                ))?;
                let solutions = lib(count_solutions_system(group, &sets, &system))?;
                ensure!(
                    statistic == solutions,
                    "{}: statistic {statistic} != solution count {solutions}",
                    group.name()
                );
                identities += 1;
            }
        }
        ensure!(identities >= 50, "only {identities} identity instances");

        // middle-third intervals are sum-free: nothing to remove
        for n in [9usize, 12, 15, 30] {
            let group = lib(GroupTable::cyclic(n))?;
            let interval = lib(middle_third_interval(n))?;
            let result = lib(product_free_removal(&group, &interval, &interval))?;
            ensure!(
                result.statistic == 0,
                "Z_{n}: sum-free interval has statistic {}",
                result.statistic
            );
            ensure!(
                result.report.total_removed() == 0 && result.report.e_size == 0,
                "Z_{n}: sum-free interval forced removals"
            );
            match &result.certificate {
                Certificate::ProductFree { holds, .. } => {
                    ensure!(*holds, "Z_{n}: certificate does not hold")
                }
                other => return Err(format!("unexpected certificate {other:?}")),
            }
        }

        // subgroups are closed under products: doubling never grows them
        let subgroup_cases: Vec<(GroupTable, Vec<usize>)> = vec![
            (GroupTable::cyclic(12).unwrap(), vec![0, 3, 6, 9]),
            (GroupTable::cyclic(8).unwrap(), vec![0, 2, 4, 6]),
            (GroupTable::symmetric(3).unwrap(), vec![0, 2]),
        ];
        for (group, members) in subgroup_cases {
            let a = lib(ElementSet::new(members, group.order()))?;
            let result = lib(small_doubling_removal(&group, &a))?;
            ensure!(
                result.statistic == 0,
                "{}: subgroup statistic {}",
                group.name(),
                result.statistic
            );
            match &result.certificate {
                Certificate::Doubling {
                    product_size,
                    reduced_size,
                    ..
                } => ensure!(
                    product_size == reduced_size,
                    "{}: subgroup doubling grew {} -> {}",
                    group.name(),
                    reduced_size,
                    product_size
                ),
                other => return Err(format!("unexpected certificate {other:?}")),
            }
        }
        Ok(())
    });
}

#[test]
fn copy_correspondence_breaks_over_two_torsion() {
    criterion(7, "two-torsion collapses copies below N x solutions", || {
        let graph = bowtie_graph();
        let system = EquationSystem::Abelian(lib(AbelianSystem::new(vec![
            vec![1, 1, 1, 1, 1, 1],
            vec![1, 1, 1, -1, -1, -1],
        ]))?);

        let run = |group: &GroupTable,
                   family: &[ElementSet]|
         -> Result<(usize, usize), String> {
            let mut strict = 0usize;
            let mut equal = 0usize;
            let mut pick = vec![0usize; 6];
            loop {
                let sets: Vec<ElementSet> =
                    pick.iter().map(|&i| family[i].clone()).collect();
                let blowup = lib(build_system_blowup(group, &sets, &graph))?;
                let copies = blowup.count_copies();
                let solutions = lib(count_solutions_system(group, &sets, &system))?;
                let bound = group.order() as u128 * solutions;
                ensure!(
                    copies <= bound,
                    "copies {copies} exceed N x solutions {bound} for picks {pick:?}"
                );
                if copies < bound {
                    strict += 1;
                } else {
                    equal += 1;
                }
                // odometer over the family
                let mut digit = 0;
                loop {
                    if digit == pick.len() {
                        return Ok((strict, equal));
                    }
                    pick[digit] += 1;
                    if pick[digit] < family.len() {
                        break;
                    }
                    pick[digit] = 0;
                    digit += 1;
                }
            }
        };

        // exhaustive over a 3-set family in each coordinate: 729 instances
        let z2 = GroupTable::cyclic(2).unwrap();
        let four = z2.direct_product(&z2).unwrap();
        let family4 = [
            ElementSet::new([0], 4).unwrap(),
            ElementSet::new([0, 1], 4).unwrap(),
            ElementSet::full(4),
        ];
        let (strict, equal) = run(&four, &family4)?;
        ensure!(
            strict > 0,
            "no strict instance found over the two-torsion group"
        );
        ensure!(equal > 0, "even the trivial instances failed to match");

        // without two-torsion the doubled relation forces the triangle
        // constraints and the identity is exact
        let three = GroupTable::cyclic(3).unwrap();
        let family3 = [
            ElementSet::new([0], 3).unwrap(),
            ElementSet::new([0, 1], 3).unwrap(),
            ElementSet::full(3),
        ];
        let (strict3, _) = run(&three, &family3)?;
        ensure!(
            strict3 == 0,
            "{strict3} strict instances over an odd-order group"
        );
        Ok(())
    });
}

#[test]
fn cli_output_is_deterministic() {
    criterion(8, "reruns with identical spec and seed are byte-identical", || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let write = |name: &str, content: &str| -> Result<String, String> {
            let path = dir.path().join(name);
            std::fs::write(&path, content).map_err(|e| e.to_string())?;
            Ok(path.to_str().unwrap().to_string())
        };
        let instance = write(
            "instance.json",
            r#"{
                "group": {"type": "dihedral", "n": 4},
                "sets": [{"density": 0.5}, {"density": 0.5}, {"density": 0.5}],
                "system": "x1 x2 x3 = g3",
                "seed": 17
            }"#,
        )?;
        let five = write(
            "five.json",
            r#"{
                "group": {"type": "cyclic", "n": 11},
                "sets": [{"density": 0.4}, {"density": 0.4}],
                "seed": 3
            }"#,
        )?;
        let sweep = write(
            "sweep.json",
            r#"{
                "groups": [{"type": "cyclic", "n": 7}, {"type": "symmetric", "n": 3}],
                "densities": [0.3, 0.55],
                "system": "x1 x2 x3 = g0",
                "trials": 2,
                "seed": 23
            }"#,
        )?;
        let runs: Vec<Vec<&str>> = vec![
            vec!["count", &instance],
            vec!["count", &instance, "--naive", "--format", "csv"],
            vec!["verify", &instance],
            vec!["removal", &instance, "--pipeline"],
            vec!["removal", &instance, "--exact", "--format", "csv"],
            vec!["represent", &instance],
            vec!["app", "product-free", &five],
            vec!["removal", "--sweep", &sweep, "--format", "csv", "--jobs", "1"],
        ];
        for args in &runs {
            let once = capture(args)?;
            let again = capture(args)?;
            ensure!(
                once == again,
                "rerun of {args:?} produced different bytes"
            );
        }
        // trial parallelism must not leak into the bytes either
        let mut jobs4: Vec<&str> =
            vec!["removal", "--sweep", &sweep, "--format", "csv", "--jobs", "4"];
        let parallel = capture(&jobs4)?;
        jobs4[6] = "1";
        ensure!(
            parallel == capture(&jobs4)?,
            "job count changed the sweep bytes"
        );
        Ok(())
    });
}

fn capture(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_grouprem"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}
