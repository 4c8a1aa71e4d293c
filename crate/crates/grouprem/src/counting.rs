//! Solution counting. Plain product equations fold representation
//! functions by convolution; systems run a propagation-driven backtracker;
//! both keep a deliberately dumb enumeration oracle next to them.

use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupTable};
use crate::system::EquationSystem;

#[cfg(feature = "rayon")]
use rayon::prelude::*;

/// Cap on the cartesian product size the naive oracles will walk.
const NAIVE_ENUMERATION_CAP: u128 = 100_000_000;

/// Multiplicity function g -> |{(a, b) in A x B : ab = g}|, kept together
/// with the sets it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationFunction {
    values: Vec<u64>,
    a: ElementSet,
    b: ElementSet,
}

impl RepresentationFunction {
    pub fn group_order(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, g: usize) -> u64 {
        self.values[g]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Total over all elements; always |A| * |B|.
    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }

    /// The (A, B) pair the function counts representations for.
    pub fn built_from(&self) -> (&ElementSet, &ElementSet) {
        (&self.a, &self.b)
    }
}

/// Exact representation counts of every group element as a product ab.
pub fn representation_function(
    group: &GroupTable,
    a: &ElementSet,
    b: &ElementSet,
) -> Result<RepresentationFunction> {
    check_sets(group, std::slice::from_ref(a))?;
    check_sets(group, std::slice::from_ref(b))?;
    let mut values = vec![0u64; group.order()];
    for x in a.members() {
        for y in b.members() {
            values[group.mul(x, y)] += 1;
        }
    }
    debug_assert_eq!(
        values.iter().sum::<u64>(),
        (a.len() * b.len()) as u64,
        "every pair lands on exactly one element"
    );
    Ok(RepresentationFunction {
        values,
        a: a.clone(),
        b: b.clone(),
    })
}

/// Number of tuples (x_1, ..., x_m) in A_1 x ... x A_m with
/// x_1 x_2 ... x_m = g, by m-1 convolution folds.
pub fn count_solutions_single(group: &GroupTable, sets: &[ElementSet], g: usize) -> Result<u128> {
    if sets.len() < 2 {
        return Err(Error::InvalidParameter(
            "a product equation needs at least two factors".into(),
        ));
    }
    if g >= group.order() {
        return Err(Error::InvalidParameter(format!(
            "right-hand side {g} outside group of order {}",
            group.order()
        )));
    }
    check_sets(group, sets)?;
    let mut prefix = vec![0u128; group.order()];
    for x in sets[0].members() {
        prefix[x] = 1;
    }
    for s in &sets[1..] {
        prefix = convolve(group, &prefix, s)?;
    }
    Ok(prefix[g])
}

/// prefix' [y] = sum over a in s of prefix[y a^{-1}].
fn convolve(group: &GroupTable, prefix: &[u128], s: &ElementSet) -> Result<Vec<u128>> {
    let fold = |y: usize| -> Result<u128> {
        let mut acc = 0u128;
        for a in s.members() {
            acc = acc
                .checked_add(prefix[group.mul(y, group.inv(a))])
                .ok_or_else(|| Error::SizeLimit("solution count exceeds 128 bits".into()))?;
        }
        Ok(acc)
    };
    #[cfg(feature = "rayon")]
    {
        (0..group.order()).into_par_iter().map(fold).collect()
    }
    #[cfg(not(feature = "rayon"))]
    {
        (0..group.order()).map(fold).collect()
    }
}

/// Dumb oracle for `count_solutions_single`: walk the full product space.
pub fn count_solutions_single_naive(
    group: &GroupTable,
    sets: &[ElementSet],
    g: usize,
) -> Result<u128> {
    if sets.len() < 2 || g >= group.order() {
        return Err(Error::InvalidParameter(
            "a product equation needs at least two factors and an in-range g".into(),
        ));
    }
    check_sets(group, sets)?;
    check_naive_cap(sets)?;
    fn walk(group: &GroupTable, sets: &[ElementSet], product: usize, g: usize) -> u128 {
        match sets {
            [] => (product == g) as u128,
            [first, rest @ ..] => first
                .members()
                .map(|x| walk(group, rest, group.mul(product, x), g))
                .sum(),
        }
    }
    Ok(walk(group, sets, group.identity(), g))
}

/// One multiplicative condition: the ordered product of the factors,
/// inverted where flagged, must equal rhs.
#[derive(Clone, Debug)]
struct Constraint {
    factors: Vec<(usize, bool)>,
    rhs: usize,
}

fn constraints_of(system: &EquationSystem, group: &GroupTable) -> Result<Vec<Constraint>> {
    let e = group.identity();
    Ok(match system {
        EquationSystem::Abelian(sys) => {
            if !group.is_abelian() {
                return Err(Error::InvalidParameter(
                    "coefficient systems need an abelian group".into(),
                ));
            }
            sys.characteristic_vectors()
                .iter()
                .map(|row| Constraint {
                    factors: row
                        .iter()
                        .enumerate()
                        .filter(|&(_, &c)| c != 0)
                        .map(|(j, &c)| (j, c < 0))
                        .collect(),
                    rhs: e,
                })
                .collect()
        }
        EquationSystem::Ordered(sys) => sys
            .words()
            .iter()
            .map(|word| Constraint {
                factors: word.iter().map(|&(v, exp)| (v, exp < 0)).collect(),
                rhs: e,
            })
            .collect(),
        EquationSystem::Single(sys) => vec![Constraint {
            factors: (0..sys.num_variables()).map(|j| (j, false)).collect(),
            rhs: sys.rhs(),
        }],
    })
}

/// Backtracking solver: branch the lowest unassigned variable over its
/// set; a constraint left with a single hole determines that variable.
#[derive(Clone)]
struct Solver<'a> {
    group: &'a GroupTable,
    sets: &'a [ElementSet],
    constraints: &'a [Constraint],
    occurs: &'a [Vec<usize>],
    assignment: Vec<usize>,
    holes: Vec<usize>,
}

const UNASSIGNED: usize = usize::MAX;

impl<'a> Solver<'a> {
    fn new(
        group: &'a GroupTable,
        sets: &'a [ElementSet],
        constraints: &'a [Constraint],
        occurs: &'a [Vec<usize>],
    ) -> Self {
        Self {
            group,
            sets,
            constraints,
            occurs,
            assignment: vec![UNASSIGNED; sets.len()],
            holes: constraints.iter().map(|c| c.factors.len()).collect(),
        }
    }

    fn check(&self, ci: usize) -> bool {
        let c = &self.constraints[ci];
        let mut p = self.group.identity();
        for &(v, invert) in &c.factors {
            let x = self.assignment[v];
            p = self.group.mul(p, if invert { self.group.inv(x) } else { x });
        }
        p == c.rhs
    }

    /// Value forced on the one unassigned variable of constraint ci:
    /// p x^e s = rhs gives x^e = p^{-1} rhs s^{-1}.
    fn solve_hole(&self, ci: usize) -> (usize, usize) {
        let c = &self.constraints[ci];
        let g = self.group;
        let mut p = g.identity();
        let mut s = g.identity();
        let mut hole = None;
        for &(v, invert) in &c.factors {
            let known = self.assignment[v];
            if known == UNASSIGNED {
                hole = Some((v, invert));
            } else {
                let x = if invert { g.inv(known) } else { known };
                match hole {
                    None => p = g.mul(p, x),
                    Some(_) => s = g.mul(s, x),
                }
            }
        }
        let (v, invert) = hole.expect("constraint has exactly one hole");
        let t = g.mul(g.mul(g.inv(p), c.rhs), g.inv(s));
        (v, if invert { g.inv(t) } else { t })
    }

    fn assign(&mut self, v: usize, val: usize, trail: &mut Vec<usize>) -> bool {
        self.assignment[v] = val;
        trail.push(v);
        for &ci in &self.occurs[v] {
            self.holes[ci] -= 1;
            if self.holes[ci] == 0 && !self.check(ci) {
                return false;
            }
        }
        true
    }

    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let Some(ci) = (0..self.constraints.len()).find(|&c| self.holes[c] == 1) else {
                return true;
            };
            let (v, val) = self.solve_hole(ci);
            if !self.sets[v].contains(val) || !self.assign(v, val, trail) {
                return false;
            }
        }
    }

    fn undo(&mut self, trail: &mut Vec<usize>) {
        for v in trail.drain(..).rev() {
            self.assignment[v] = UNASSIGNED;
            for &ci in &self.occurs[v] {
                self.holes[ci] += 1;
            }
        }
    }

    fn count(&mut self) -> u128 {
        let Some(v) = self.assignment.iter().position(|&x| x == UNASSIGNED) else {
            return 1;
        };
        let mut total = 0u128;
        let mut trail = Vec::new();
        for p in 0..self.sets[v].len() {
            let val = self.sets[v].member(p);
            if self.assign(v, val, &mut trail) && self.propagate(&mut trail) {
                total += self.count();
            }
            self.undo(&mut trail);
        }
        total
    }

    fn collect(&mut self, max: usize, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let Some(v) = self.assignment.iter().position(|&x| x == UNASSIGNED) else {
            if out.len() >= max {
                return Err(Error::SizeLimit(format!(
                    "more than {max} solutions; raise the enumeration cap"
                )));
            }
            out.push(self.assignment.clone());
            return Ok(());
        };
        let mut trail = Vec::new();
        for p in 0..self.sets[v].len() {
            let val = self.sets[v].member(p);
            if self.assign(v, val, &mut trail) && self.propagate(&mut trail) {
                let r = self.collect(max, out);
                self.undo(&mut trail);
                r?;
            } else {
                self.undo(&mut trail);
            }
        }
        Ok(())
    }
}

fn solver_inputs(
    group: &GroupTable,
    sets: &[ElementSet],
    system: &EquationSystem,
) -> Result<(Vec<Constraint>, Vec<Vec<usize>>)> {
    if sets.len() != system.num_variables() {
        return Err(Error::InvalidParameter(format!(
            "system has {} variables but {} sets were given",
            system.num_variables(),
            sets.len()
        )));
    }
    check_sets(group, sets)?;
    let constraints = constraints_of(system, group)?;
    let mut occurs = vec![Vec::new(); sets.len()];
    for (ci, c) in constraints.iter().enumerate() {
        for &(v, _) in &c.factors {
            occurs[v].push(ci);
        }
    }
    Ok((constraints, occurs))
}

/// Exact number of solutions of a system with x_i ranging over A_i.
pub fn count_solutions_system(
    group: &GroupTable,
    sets: &[ElementSet],
    system: &EquationSystem,
) -> Result<u128> {
    let (constraints, occurs) = solver_inputs(group, sets, system)?;
    let mut root = Solver::new(group, sets, &constraints, &occurs);
    let mut trail = Vec::new();
    if !root.propagate(&mut trail) {
        return Ok(0);
    }
    // branch the first variable in parallel; each branch owns its solver
    let first = root.assignment.iter().position(|&x| x == UNASSIGNED);
    let Some(v) = first else { return Ok(1) };
    let branch = |p: usize| -> u128 {
        let mut solver = root.clone();
        let mut trail = Vec::new();
        let val = solver.sets[v].member(p);
        if solver.assign(v, val, &mut trail) && solver.propagate(&mut trail) {
            solver.count()
        } else {
            0
        }
    };
    #[cfg(feature = "rayon")]
    let total = (0..root.sets[v].len()).into_par_iter().map(branch).sum();
    #[cfg(not(feature = "rayon"))]
    let total = (0..root.sets[v].len()).map(branch).sum();
    Ok(total)
}

/// Lists every solution, in the backtracker's deterministic order; errors
/// past `max`.
pub fn enumerate_solutions(
    group: &GroupTable,
    sets: &[ElementSet],
    system: &EquationSystem,
    max: usize,
) -> Result<Vec<Vec<usize>>> {
    let (constraints, occurs) = solver_inputs(group, sets, system)?;
    let mut root = Solver::new(group, sets, &constraints, &occurs);
    let mut trail = Vec::new();
    let mut out = Vec::new();
    if root.propagate(&mut trail) {
        root.collect(max, &mut out)?;
    }
    Ok(out)
}

/// Dumb oracle for `count_solutions_system`: test every tuple.
pub fn count_solutions_system_naive(
    group: &GroupTable,
    sets: &[ElementSet],
    system: &EquationSystem,
) -> Result<u128> {
    if sets.len() != system.num_variables() {
        return Err(Error::InvalidParameter(format!(
            "system has {} variables but {} sets were given",
            system.num_variables(),
            sets.len()
        )));
    }
    check_sets(group, sets)?;
    if let EquationSystem::Abelian(_) = system {
        if !group.is_abelian() {
            return Err(Error::InvalidParameter(
                "coefficient systems need an abelian group".into(),
            ));
        }
    }
    check_naive_cap(sets)?;
    fn walk(
        group: &GroupTable,
        sets: &[ElementSet],
        system: &EquationSystem,
        tuple: &mut Vec<usize>,
    ) -> u128 {
        if tuple.len() == sets.len() {
            return system.satisfies(group, tuple) as u128;
        }
        let mut total = 0;
        for x in sets[tuple.len()].members() {
            tuple.push(x);
            total += walk(group, sets, system, tuple);
            tuple.pop();
        }
        total
    }
    Ok(walk(group, sets, system, &mut Vec::new()))
}

/// Sum over g in E of r_{A,B}(g) * r_{C,D}(g): the number of solutions of
/// the product pair system on (A, B, C, D, E).
pub fn representation_product_sum(
    group: &GroupTable,
    a: &ElementSet,
    b: &ElementSet,
    c: &ElementSet,
    d: &ElementSet,
    e: &ElementSet,
) -> Result<u128> {
    let rab = representation_function(group, a, b)?;
    let rcd = representation_function(group, c, d)?;
    check_sets(group, std::slice::from_ref(e))?;
    Ok(e.members()
        .map(|g| rab.value(g) as u128 * rcd.value(g) as u128)
        .sum())
}

fn check_sets(group: &GroupTable, sets: &[ElementSet]) -> Result<()> {
    for (i, s) in sets.iter().enumerate() {
        if s.group_order() != group.order() {
            return Err(Error::InvalidParameter(format!(
                "set {i} lives over group order {} instead of {}",
                s.group_order(),
                group.order()
            )));
        }
    }
    Ok(())
}

fn check_naive_cap(sets: &[ElementSet]) -> Result<()> {
    let mut product = 1u128;
    for s in sets {
        product = product.saturating_mul(s.len() as u128);
    }
    if product > NAIVE_ENUMERATION_CAP {
        return Err(Error::SizeLimit(format!(
            "naive enumeration over {product} tuples refused"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{parse_system, OrderedSystem, SingleEquation};

    fn product_pair_system() -> EquationSystem {
        parse_system("x1 x2 x4^-1 x3^-1 = 1; x1 x2 x5^-1 = 1").unwrap()
    }

    fn full(n: usize, m: usize) -> Vec<ElementSet> {
        (0..m).map(|_| ElementSet::full(n)).collect()
    }

    fn random_sets(n: usize, m: usize, density: f64, seed: u64) -> Vec<ElementSet> {
        (0..m)
            .map(|i| ElementSet::random(n, density, seed + i as u64).unwrap())
            .collect()
    }

    #[test]
    fn two_factor_count_over_z2() {
        let g = GroupTable::cyclic(2).unwrap();
        assert_eq!(count_solutions_single(&g, &full(2, 2), 0).unwrap(), 2);
    }

    #[test]
    fn full_sets_leave_one_forced_coordinate() {
        for n in [4usize, 6] {
            let g = GroupTable::cyclic(n).unwrap();
            for m in 2..=4 {
                for rhs in [0, n - 1] {
                    let expect = (n as u128).pow(m as u32 - 1);
                    assert_eq!(count_solutions_single(&g, &full(n, m), rhs).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn quadratic_residue_triples_in_z7() {
        let g = GroupTable::cyclic(7).unwrap();
        let qr = ElementSet::new([1, 2, 4], 7).unwrap();
        let sets = vec![qr.clone(), qr.clone(), qr];
        assert_eq!(count_solutions_single(&g, &sets, 0).unwrap(), 6);
        assert_eq!(count_solutions_single_naive(&g, &sets, 0).unwrap(), 6);
    }

    #[test]
    fn convolution_matches_naive_on_random_instances() {
        for seed in 0..6u64 {
            let g = GroupTable::dihedral(4).unwrap();
            let sets = random_sets(8, 3, 0.5, 100 + 10 * seed);
            for rhs in [0, 3, 7] {
                assert_eq!(
                    count_solutions_single(&g, &sets, rhs).unwrap(),
                    count_solutions_single_naive(&g, &sets, rhs).unwrap(),
                    "seed {seed} rhs {rhs}"
                );
            }
        }
    }

    #[test]
    fn representation_function_on_z4_odd_pairs() {
        let g = GroupTable::cyclic(4).unwrap();
        let a = ElementSet::new([1, 3], 4).unwrap();
        let r = representation_function(&g, &a, &a).unwrap();
        assert_eq!(r.values(), &[2, 0, 2, 0]);
        assert_eq!(r.sum(), 4);
        assert_eq!(r.built_from().0.len(), 2);
    }

    #[test]
    fn empty_set_gives_the_zero_function() {
        let g = GroupTable::cyclic(5).unwrap();
        let r = representation_function(&g, &ElementSet::empty(5), &ElementSet::full(5)).unwrap();
        assert!(r.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn representation_sums_count_all_pairs() {
        let g = GroupTable::symmetric(3).unwrap();
        for seed in 0..5u64 {
            let a = ElementSet::random(6, 0.5, 70 + seed).unwrap();
            let b = ElementSet::random(6, 0.7, 80 + seed).unwrap();
            let r = representation_function(&g, &a, &b).unwrap();
            assert_eq!(r.sum(), (a.len() * b.len()) as u64);
        }
    }

    #[test]
    fn system_count_with_full_sets_has_three_free_variables() {
        let sys = product_pair_system();
        for n in [5usize, 7] {
            let g = GroupTable::cyclic(n).unwrap();
            let count = count_solutions_system(&g, &full(n, 5), &sys).unwrap();
            assert_eq!(count, (n as u128).pow(3));
            assert_eq!(
                count,
                count_solutions_system_naive(&g, &full(n, 5), &sys).unwrap()
            );
        }
    }

    #[test]
    fn one_empty_set_kills_the_count() {
        let g = GroupTable::cyclic(6).unwrap();
        let mut sets = full(6, 5);
        sets[2] = ElementSet::empty(6);
        assert_eq!(
            count_solutions_system(&g, &sets, &product_pair_system()).unwrap(),
            0
        );
    }

    #[test]
    fn single_equation_through_both_code_paths() {
        let g = GroupTable::cyclic(6).unwrap();
        let sets = random_sets(6, 3, 0.6, 300);
        let as_vector = parse_system("x1 + x2 + x3 = 0").unwrap();
        let as_single = EquationSystem::Single(SingleEquation::new(3, 0).unwrap());
        let direct = count_solutions_single(&g, &sets, 0).unwrap();
        assert_eq!(count_solutions_system(&g, &sets, &as_vector).unwrap(), direct);
        assert_eq!(count_solutions_system(&g, &sets, &as_single).unwrap(), direct);
    }

    #[test]
    fn coefficient_systems_reject_nonabelian_groups() {
        let g = GroupTable::symmetric(3).unwrap();
        let sys = parse_system("x1 + x2 - x3 = 0").unwrap();
        assert!(matches!(
            count_solutions_system(&g, &full(6, 3), &sys),
            Err(Error::InvalidParameter(_))
        ));
        assert!(count_solutions_system_naive(&g, &full(6, 3), &sys).is_err());
    }

    #[test]
    fn ordered_systems_run_on_nonabelian_groups() {
        let g = GroupTable::symmetric(3).unwrap();
        for seed in 0..4u64 {
            let sets = random_sets(6, 5, 0.5, 500 + 10 * seed);
            let sys = product_pair_system();
            assert_eq!(
                count_solutions_system(&g, &sets, &sys).unwrap(),
                count_solutions_system_naive(&g, &sets, &sys).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn propagation_agrees_with_naive_on_abelian_systems() {
        let g = GroupTable::cyclic(8).unwrap();
        let sys = parse_system("x1 + x2 - x3 = 0; x2 + x4 = 0").unwrap();
        for seed in 0..5u64 {
            let sets = random_sets(8, 4, 0.6, 900 + 10 * seed);
            assert_eq!(
                count_solutions_system(&g, &sets, &sys).unwrap(),
                count_solutions_system_naive(&g, &sets, &sys).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn automorphism_rescaling_preserves_counts() {
        let n = 9;
        let g = GroupTable::cyclic(n).unwrap();
        let map = |s: &ElementSet, u: usize| {
            ElementSet::new(s.members().map(|x| (u * x) % n), n).unwrap()
        };
        for u in [2usize, 4, 5] {
            let sets = random_sets(n, 3, 0.5, 40);
            let mapped: Vec<ElementSet> = sets.iter().map(|s| map(s, u)).collect();
            for rhs in 0..n {
                assert_eq!(
                    count_solutions_single(&g, &sets, rhs).unwrap(),
                    count_solutions_single(&g, &mapped, (u * rhs) % n).unwrap(),
                    "unit {u} rhs {rhs}"
                );
            }
        }
    }

    #[test]
    fn statistic_matches_the_system_count() {
        let g = GroupTable::cyclic(9).unwrap();
        let ab = ElementSet::new([1, 2], 9).unwrap();
        let e = ElementSet::new([2, 3, 4], 9).unwrap();
        let stat =
            representation_product_sum(&g, &ab, &ab, &ab, &ab, &e).unwrap();
        assert_eq!(stat, 6);
        let sets = vec![ab.clone(), ab.clone(), ab.clone(), ab, e];
        assert_eq!(
            stat,
            count_solutions_system(&g, &sets, &product_pair_system()).unwrap()
        );
        assert_eq!(
            stat,
            count_solutions_system_naive(&g, &sets, &product_pair_system()).unwrap()
        );
    }

    #[test]
    fn statistic_trivial_values() {
        let g = GroupTable::cyclic(5).unwrap();
        let f = ElementSet::full(5);
        assert_eq!(
            representation_product_sum(&g, &f, &f, &f, &f, &ElementSet::empty(5)).unwrap(),
            0
        );
        assert_eq!(
            representation_product_sum(&g, &f, &f, &f, &f, &f).unwrap(),
            125
        );
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let g = GroupTable::cyclic(5).unwrap();
        assert!(count_solutions_single(&g, &full(5, 1), 0).is_err());
        assert!(count_solutions_single(&g, &full(5, 2), 5).is_err());
        assert!(count_solutions_single(&g, &full(4, 2), 0).is_err());
        let sys = product_pair_system();
        assert!(count_solutions_system(&g, &full(5, 4), &sys).is_err());
    }

    #[test]
    fn enumeration_lists_exactly_the_counted_solutions() {
        let g = GroupTable::dihedral(4).unwrap();
        let sys = product_pair_system();
        let sets = random_sets(8, 5, 0.4, 7000);
        let listed = enumerate_solutions(&g, &sets, &sys, 100_000).unwrap();
        assert_eq!(
            listed.len() as u128,
            count_solutions_system(&g, &sets, &sys).unwrap()
        );
        let mut sorted = listed.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), listed.len(), "no duplicates");
        for sol in &listed {
            assert!(sys.satisfies(&g, sol));
            assert!(sol.iter().zip(&sets).all(|(&x, s)| s.contains(x)));
        }
        assert!(matches!(
            enumerate_solutions(&g, &full(8, 5), &sys, 3),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn words_with_one_factor_propagate_at_the_root() {
        let g = GroupTable::symmetric(3).unwrap();
        let sys = EquationSystem::Ordered(
            OrderedSystem::new(vec![vec![(0, 1), (1, -1)], vec![(1, 1)]]).unwrap(),
        );
        let sets = full(6, 2);
        assert_eq!(count_solutions_system(&g, &sets, &sys).unwrap(), 1);
        assert_eq!(
            count_solutions_system_naive(&g, &sets, &sys).unwrap(),
            1
        );
    }
}
