//! The auxiliary product graph: one vertex per (group element, base vertex)
//! pair, and for every base arc of color i, every tail element g and every
//! a in A_i, a labeled arc from (g, u) to (g*a, v). Copies of the base
//! graph inside it are what the removal machinery counts and destroys.

use crate::cycle::{directed_cycle, ColoredDigraph};
use crate::error::{Error, Result};
use crate::group::{ElementSet, GroupTable};
use std::fmt::Write as _;

#[cfg(feature = "rayon")]
use rayon::prelude::*;

/// Default cap on the number of arcs a blow-up may carry.
pub const DEFAULT_MAX_ARCS: u64 = 10_000_000;

/// Cap on the blow-up order for DOT export.
const MAX_DOT_VERTICES: usize = 100;

/// One traversal step of the base spanning tree: cross `arc` from the
/// already assigned vertex `from` to the new vertex `to`; `forward` says
/// whether that crossing runs along the arc's direction.
#[derive(Clone, Copy, Debug)]
struct Step {
    arc: usize,
    from: usize,
    to: usize,
    forward: bool,
}

/// The blow-up of a base graph by one element set per color, over a group.
/// Vertices are encoded as g * h + u; arcs are identified by
/// (color, tail element, label position) packed into a single id.
pub struct BlowupGraph<'g> {
    group: &'g GroupTable,
    base: ColoredDigraph,
    sets: Vec<ElementSet>,
    /// Extra right factor applied after the label; identity everywhere
    /// except the wrap arc of the single-equation cycle construction,
    /// which absorbs the right-hand side's inverse.
    twist: Vec<usize>,
    /// offsets[i] = first arc id of color i; offsets[m] = total arc count.
    offsets: Vec<u64>,
    steps: Vec<Step>,
    /// Non-tree arcs whose endpoints are both assigned once step s is done.
    checks_after: Vec<Vec<usize>>,
}

/// A color-preserving copy of the base graph: the group element at each
/// base vertex, and the induced label per color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredCopy {
    assignment: Vec<usize>,
    labels: Vec<usize>,
}

impl ColoredCopy {
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
}

/// Blow-up of the directed m-cycle for the plain product equation
/// x1 ... xm = rhs: the arc layer m-1 -> 0 folds in rhs^{-1}.
pub fn build_cycle_blowup<'g>(
    group: &'g GroupTable,
    sets: &[ElementSet],
    rhs: usize,
) -> Result<BlowupGraph<'g>> {
    build_cycle_blowup_with_limit(group, sets, rhs, DEFAULT_MAX_ARCS)
}

pub fn build_cycle_blowup_with_limit<'g>(
    group: &'g GroupTable,
    sets: &[ElementSet],
    rhs: usize,
    max_arcs: u64,
) -> Result<BlowupGraph<'g>> {
    let m = sets.len();
    if m < 2 {
        return Err(Error::InvalidParameter(
            "the cycle blow-up needs at least two sets".into(),
        ));
    }
    if rhs >= group.order() {
        return Err(Error::InvalidParameter(format!(
            "right-hand side {rhs} outside group of order {}",
            group.order()
        )));
    }
    let base = directed_cycle(m)?;
    let mut twist = vec![group.identity(); m];
    twist[m - 1] = group.inv(rhs);
    BlowupGraph::assemble(group, base, sets.to_vec(), twist, max_arcs)
}

/// Blow-up of an arbitrary base graph; every arc multiplies by its label
/// only.
pub fn build_system_blowup<'g>(
    group: &'g GroupTable,
    sets: &[ElementSet],
    base: &ColoredDigraph,
) -> Result<BlowupGraph<'g>> {
    build_system_blowup_with_limit(group, sets, base, DEFAULT_MAX_ARCS)
}

pub fn build_system_blowup_with_limit<'g>(
    group: &'g GroupTable,
    sets: &[ElementSet],
    base: &ColoredDigraph,
    max_arcs: u64,
) -> Result<BlowupGraph<'g>> {
    if base.arc_count() != sets.len() {
        return Err(Error::InvalidParameter(format!(
            "base graph has {} arcs but {} sets were given",
            base.arc_count(),
            sets.len()
        )));
    }
    if sets.is_empty() {
        return Err(Error::InvalidParameter(
            "the blow-up needs at least one arc".into(),
        ));
    }
    let twist = vec![group.identity(); sets.len()];
    BlowupGraph::assemble(group, base.clone(), sets.to_vec(), twist, max_arcs)
}

impl<'g> BlowupGraph<'g> {
    fn assemble(
        group: &'g GroupTable,
        base: ColoredDigraph,
        sets: Vec<ElementSet>,
        twist: Vec<usize>,
        max_arcs: u64,
    ) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            if s.group_order() != group.order() {
                return Err(Error::InvalidParameter(format!(
                    "set {i} lives over group order {} instead of {}",
                    s.group_order(),
                    group.order()
                )));
            }
        }
        let n = group.order() as u64;
        let mut offsets = Vec::with_capacity(sets.len() + 1);
        let mut acc = 0u64;
        for s in &sets {
            offsets.push(acc);
            acc += n * s.len() as u64;
        }
        offsets.push(acc);
        if acc > max_arcs {
            return Err(Error::SizeLimit(format!(
                "blow-up would carry {acc} arcs, cap is {max_arcs}"
            )));
        }
        let (steps, checks_after) = plan_traversal(&base);
        Ok(Self {
            group,
            base,
            sets,
            twist,
            offsets,
            steps,
            checks_after,
        })
    }

    pub fn group(&self) -> &GroupTable {
        self.group
    }

    pub fn base_graph(&self) -> &ColoredDigraph {
        &self.base
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn num_colors(&self) -> usize {
        self.sets.len()
    }

    /// Number of blow-up vertices: h * N.
    pub fn order(&self) -> usize {
        self.base.vertex_count() * self.group.order()
    }

    /// Number of blow-up arcs: N * (|A_1| + ... + |A_m|).
    pub fn arc_count(&self) -> u64 {
        *self.offsets.last().expect("offsets nonempty")
    }

    pub fn vertex_id(&self, element: usize, base_vertex: usize) -> usize {
        element * self.base.vertex_count() + base_vertex
    }

    pub fn vertex_parts(&self, id: usize) -> (usize, usize) {
        (
            id / self.base.vertex_count(),
            id % self.base.vertex_count(),
        )
    }

    /// Packs (color, tail element, label position) into an arc id.
    pub fn arc_id(&self, color: usize, tail_element: usize, label_position: usize) -> u64 {
        debug_assert!(label_position < self.sets[color].len());
        self.offsets[color]
            + tail_element as u64 * self.sets[color].len() as u64
            + label_position as u64
    }

    /// Inverse of `arc_id`.
    pub fn arc_parts(&self, id: u64) -> (usize, usize, usize) {
        debug_assert!(id < self.arc_count());
        let color = self.offsets.partition_point(|&o| o <= id) - 1;
        let rem = id - self.offsets[color];
        let width = self.sets[color].len() as u64;
        ((color), (rem / width) as usize, (rem % width) as usize)
    }

    /// The [a, i] label of an arc: (label element, color).
    pub fn arc_label(&self, id: u64) -> (usize, usize) {
        let (color, _, pos) = self.arc_parts(id);
        (self.sets[color].member(pos), color)
    }

    /// Endpoint vertex ids of an arc.
    pub fn arc_endpoints(&self, id: u64) -> (usize, usize) {
        let (color, g, pos) = self.arc_parts(id);
        let a = self.sets[color].member(pos);
        let (u, v) = self.base.arc(color);
        let target = self.group.mul(self.group.mul(g, a), self.twist[color]);
        (self.vertex_id(g, u), self.vertex_id(target, v))
    }

    /// Label induced on arc e by a full vertex assignment:
    /// a = phi(u)^{-1} phi(v) t^{-1}.
    fn induced_label(&self, phi: &[usize], e: usize) -> usize {
        let (u, v) = self.base.arc(e);
        self.group.mul(
            self.group.mul(self.group.inv(phi[u]), phi[v]),
            self.group.inv(self.twist[e]),
        )
    }

    /// Walks one tree step: given phi[from], the label position p
    /// determines phi[to] and the arc's tail element.
    fn step_values(&self, st: Step, phi_from: usize, p: usize) -> (usize, usize) {
        let a = self.sets[st.arc].member(p);
        let at = self.group.mul(a, self.twist[st.arc]);
        if st.forward {
            (phi_from, self.group.mul(phi_from, at))
        } else {
            let tail = self.group.mul(phi_from, self.group.inv(at));
            (tail, tail)
        }
    }

    fn count_rec<F: Fn(usize, usize, usize) -> bool>(
        &self,
        s: usize,
        phi: &mut [usize],
        allowed: &F,
    ) -> u128 {
        if s == self.steps.len() {
            return 1;
        }
        let st = self.steps[s];
        let mut total = 0u128;
        for p in 0..self.sets[st.arc].len() {
            let (tail_g, to_val) = self.step_values(st, phi[st.from], p);
            if !allowed(st.arc, tail_g, p) {
                continue;
            }
            phi[st.to] = to_val;
            let ok = self.checks_after[s].iter().all(|&e| {
                let need = self.induced_label(phi, e);
                match self.sets[e].position(need) {
                    Some(pp) => allowed(e, phi[self.base.arc(e).0], pp),
                    None => false,
                }
            });
            if ok {
                total += self.count_rec(s + 1, phi, allowed);
            }
        }
        total
    }

    fn count_root<F: Fn(usize, usize, usize) -> bool>(&self, z: usize, allowed: &F) -> u128 {
        let mut phi = vec![0usize; self.base.vertex_count()];
        phi[0] = z;
        self.count_rec(0, &mut phi, allowed)
    }

    /// Number of color-preserving copies of the base graph, by backtracking
    /// over vertex assignments; root choices are summed independently, so
    /// the result is schedule-independent.
    #[cfg(feature = "rayon")]
    pub fn count_copies(&self) -> u128 {
        (0..self.group.order())
            .into_par_iter()
            .map(|z| self.count_root(z, &|_, _, _| true))
            .sum()
    }

    #[cfg(not(feature = "rayon"))]
    pub fn count_copies(&self) -> u128 {
        self.count_copies_seq()
    }

    /// Single-threaded reference count; the parallel path must agree.
    pub fn count_copies_seq(&self) -> u128 {
        (0..self.group.order())
            .map(|z| self.count_root(z, &|_, _, _| true))
            .sum()
    }

    /// Copy count ignoring every arc for which `removed` returns true.
    #[cfg(feature = "rayon")]
    pub fn count_copies_excluding<F: Fn(u64) -> bool + Sync>(&self, removed: F) -> u128 {
        let allowed = |c: usize, g: usize, p: usize| !removed(self.arc_id(c, g, p));
        (0..self.group.order())
            .into_par_iter()
            .map(|z| self.count_root(z, &allowed))
            .sum()
    }

    #[cfg(not(feature = "rayon"))]
    pub fn count_copies_excluding<F: Fn(u64) -> bool + Sync>(&self, removed: F) -> u128 {
        self.count_copies_excluding_seq(removed)
    }

    pub fn count_copies_excluding_seq<F: Fn(u64) -> bool>(&self, removed: F) -> u128 {
        let allowed = |c: usize, g: usize, p: usize| !removed(self.arc_id(c, g, p));
        (0..self.group.order())
            .map(|z| self.count_root(z, &allowed))
            .sum()
    }

    fn enum_rec(
        &self,
        s: usize,
        phi: &mut [usize],
        max: usize,
        out: &mut Vec<ColoredCopy>,
    ) -> Result<()> {
        if s == self.steps.len() {
            if out.len() >= max {
                return Err(Error::SizeLimit(format!(
                    "more than {max} copies; raise the enumeration cap"
                )));
            }
            let labels = (0..self.num_colors())
                .map(|e| self.induced_label(phi, e))
                .collect();
            out.push(ColoredCopy {
                assignment: phi.to_vec(),
                labels,
            });
            return Ok(());
        }
        let st = self.steps[s];
        for p in 0..self.sets[st.arc].len() {
            let (_, to_val) = self.step_values(st, phi[st.from], p);
            phi[st.to] = to_val;
            let ok = self.checks_after[s]
                .iter()
                .all(|&e| self.sets[e].contains(self.induced_label(phi, e)));
            if ok {
                self.enum_rec(s + 1, phi, max, out)?;
            }
        }
        Ok(())
    }

    /// All copies, in ascending root-element order then label order.
    pub fn enumerate_copies(&self, max: usize) -> Result<Vec<ColoredCopy>> {
        let mut out = Vec::new();
        let mut phi = vec![0usize; self.base.vertex_count()];
        for z in 0..self.group.order() {
            phi[0] = z;
            self.enum_rec(0, &mut phi, max, &mut out)?;
        }
        Ok(out)
    }

    /// The copy rooted at z whose labels are the given solution: the vertex
    /// assignment is propagated along the traversal tree and then every
    /// arc, tree or not, is validated against its set.
    pub fn solution_to_copy(&self, solution: &[usize], z: usize) -> Result<ColoredCopy> {
        let m = self.num_colors();
        if solution.len() != m {
            return Err(Error::InvalidParameter(format!(
                "solution has {} entries, expected {m}",
                solution.len()
            )));
        }
        if z >= self.group.order() {
            return Err(Error::InvalidParameter("root element out of range".into()));
        }
        if let Some(&bad) = solution.iter().find(|&&x| x >= self.group.order()) {
            return Err(Error::InvalidParameter(format!(
                "solution entry {bad} outside the group"
            )));
        }
        let mut phi = vec![0usize; self.base.vertex_count()];
        phi[0] = z;
        for &st in &self.steps {
            let a = solution[st.arc];
            let at = self.group.mul(a, self.twist[st.arc]);
            phi[st.to] = if st.forward {
                self.group.mul(phi[st.from], at)
            } else {
                self.group.mul(phi[st.from], self.group.inv(at))
            };
        }
        let copy = ColoredCopy {
            assignment: phi,
            labels: solution.to_vec(),
        };
        self.validate_copy(&copy)?;
        Ok(copy)
    }

    /// The labels of a copy, after validating that it is one.
    pub fn copy_to_solution(&self, copy: &ColoredCopy) -> Result<Vec<usize>> {
        self.validate_copy(copy)?;
        Ok(copy.labels.clone())
    }

    fn validate_copy(&self, copy: &ColoredCopy) -> Result<()> {
        let h = self.base.vertex_count();
        let m = self.num_colors();
        if copy.assignment.len() != h || copy.labels.len() != m {
            return Err(Error::ContractViolation(
                "copy shape does not match the blow-up".into(),
            ));
        }
        if copy
            .assignment
            .iter()
            .chain(&copy.labels)
            .any(|&x| x >= self.group.order())
        {
            return Err(Error::ContractViolation(
                "copy mentions elements outside the group".into(),
            ));
        }
        for e in 0..m {
            let a = copy.labels[e];
            if !self.sets[e].contains(a) {
                return Err(Error::ContractViolation(format!(
                    "label {a} on color {e} lies outside its set"
                )));
            }
            if self.induced_label(&copy.assignment, e) != a {
                return Err(Error::ContractViolation(format!(
                    "arc of color {e} does not connect the assigned vertices"
                )));
            }
        }
        Ok(())
    }

    /// Arc ids of a validated copy, one per color.
    pub fn copy_arc_ids(&self, copy: &ColoredCopy) -> Result<Vec<u64>> {
        self.validate_copy(copy)?;
        Ok((0..self.num_colors())
            .map(|e| {
                let tail = copy.assignment[self.base.arc(e).0];
                let pos = self.sets[e]
                    .position(copy.labels[e])
                    .expect("validated label");
                self.arc_id(e, tail, pos)
            })
            .collect())
    }

    /// DOT rendering of small blow-ups; vertices are "g,u" pairs and arcs
    /// carry their [a, i] labels.
    pub fn to_dot(&self) -> Result<String> {
        if self.order() > MAX_DOT_VERTICES {
            return Err(Error::SizeLimit(format!(
                "DOT export capped at {MAX_DOT_VERTICES} vertices, blow-up has {}",
                self.order()
            )));
        }
        let mut dot = String::from("digraph blowup {\n  rankdir=LR;\n");
        for id in 0..self.order() {
            let (g, u) = self.vertex_parts(id);
            let _ = writeln!(dot, "  \"{g},{u}\";");
        }
        for id in 0..self.arc_count() {
            let (a, color) = self.arc_label(id);
            let (from, to) = self.arc_endpoints(id);
            let (fg, fu) = self.vertex_parts(from);
            let (tg, tu) = self.vertex_parts(to);
            let _ = writeln!(
                dot,
                "  \"{fg},{fu}\" -> \"{tg},{tu}\" [label=\"[{a},{color}]\"];"
            );
        }
        dot.push_str("}\n");
        Ok(dot)
    }
}

/// Deterministic traversal plan of the base graph: the breadth-first tree
/// from vertex 0 using lowest arc indices first, plus, per step, the
/// non-tree arcs that become fully assigned after it.
fn plan_traversal(base: &ColoredDigraph) -> (Vec<Step>, Vec<Vec<usize>>) {
    let h = base.vertex_count();
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); h];
    for (i, &(t, hd)) in base.arcs().iter().enumerate() {
        adj[t].push((i, hd, true));
        adj[hd].push((i, t, false));
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
    }
    let mut steps = Vec::with_capacity(h - 1);
    let mut time = vec![usize::MAX; h];
    let mut tree = vec![false; base.arc_count()];
    time[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &(arc, w, forward) in &adj[u] {
            if time[w] == usize::MAX {
                time[w] = steps.len() + 1;
                tree[arc] = true;
                steps.push(Step {
                    arc,
                    from: u,
                    to: w,
                    forward,
                });
                queue.push_back(w);
            }
        }
    }
    let mut checks_after = vec![Vec::new(); steps.len()];
    for (e, &(t, hd)) in base.arcs().iter().enumerate() {
        if !tree[e] {
            let ready = time[t].max(time[hd]);
            checks_after[ready - 1].push(e);
        }
    }
    (steps, checks_after)
}
