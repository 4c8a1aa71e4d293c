//! Directed graphs carrying one arc per variable, and the exact linear
//! algebra of their cycle space: fundamental cycles, integral generation,
//! and the representability tests that tie graphs to equation systems.

use crate::error::{Error, Result};
use crate::linalg;
use crate::system::{AbelianSystem, OrderedSystem};
use std::fmt;

/// Search cap for the brute-force representation searches.
pub const MAX_SEARCH_VARIABLES: usize = 10;

/// A member of the cycle space: a length-m integer vector, one entry per
/// arc. Traversal-built vectors carry entries in {-1, 0, +1}.
pub type CycleVector = Vec<i64>;

/// A weakly connected directed graph whose arcs are in bijection with the
/// variable colors 0..m: the arc at index i is the one colored i.
/// Self-loops are forbidden; parallel arcs (in either direction) are fine.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    vertex_count: usize,
    arcs: Vec<(usize, usize)>,
}

impl fmt::Debug for ColoredDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredDigraph(h={}, arcs={:?})", self.vertex_count, self.arcs)
    }
}

fn weakly_connected(vertex_count: usize, arcs: &[(usize, usize)]) -> bool {
    if vertex_count == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); vertex_count];
    for &(t, h) in arcs {
        adj[t].push(h);
        adj[h].push(t);
    }
    let mut seen = vec![false; vertex_count];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

impl ColoredDigraph {
    /// Builds a graph from (tail, head, color) triples; the colors must be
    /// exactly 0..len once each.
    pub fn new(vertex_count: usize, arcs: Vec<(usize, usize, usize)>) -> Result<Self> {
        let m = arcs.len();
        let mut ordered = vec![None; m];
        for &(t, h, c) in &arcs {
            if c >= m {
                return Err(Error::InvalidParameter(format!(
                    "arc color {c} out of range for {m} arcs"
                )));
            }
            if ordered[c].is_some() {
                return Err(Error::InvalidParameter(format!(
                    "color {c} appears on more than one arc"
                )));
            }
            ordered[c] = Some((t, h));
        }
        Self::from_arcs_in_color_order(
            vertex_count,
            ordered.into_iter().map(|a| a.expect("all colors placed")).collect(),
        )
    }

    /// Builds a graph whose arc at index i carries color i.
    pub fn from_arcs_in_color_order(
        vertex_count: usize,
        arcs: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        for (i, &(t, h)) in arcs.iter().enumerate() {
            if t >= vertex_count || h >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "arc {i} endpoint out of range"
                )));
            }
            if t == h {
                return Err(Error::InvalidParameter(format!("arc {i} is a self-loop")));
            }
        }
        if !weakly_connected(vertex_count, &arcs) {
            return Err(Error::InvalidParameter(
                "graph is not weakly connected".into(),
            ));
        }
        Ok(Self { vertex_count, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arc i = (tail, head); i is also its color.
    pub fn arc(&self, i: usize) -> (usize, usize) {
        self.arcs[i]
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Column for arc (u,v) holds -1 at row u and +1 at row v.
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        let mut mat = vec![vec![0i64; self.arcs.len()]; self.vertex_count];
        for (i, &(t, h)) in self.arcs.iter().enumerate() {
            mat[t][i] -= 1;
            mat[h][i] += 1;
        }
        mat
    }
}

/// The directed m-cycle 0 -> 1 -> ... -> m-1 -> 0 with arc i colored i.
pub fn directed_cycle(m: usize) -> Result<ColoredDigraph> {
    if m < 2 {
        return Err(Error::InvalidParameter(
            "a directed cycle needs at least two arcs".into(),
        ));
    }
    ColoredDigraph::from_arcs_in_color_order(m, (0..m).map(|i| (i, (i + 1) % m)).collect())
}

/// Two directed triangles sharing vertex 0: arcs 0..2 run around
/// 0 -> 1 -> 2 -> 0 and arcs 3..5 around 0 -> 3 -> 4 -> 0. The smallest
/// graph whose cycle space admits rationally-but-not-integrally
/// generating vector pairs.
pub fn bowtie_graph() -> ColoredDigraph {
    ColoredDigraph::from_arcs_in_color_order(
        5,
        vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)],
    )
    .expect("fixed graph is valid")
}

/// Dimension of the cycle space, m - h + 1 for a weakly connected graph.
pub fn cycle_space_dimension(graph: &ColoredDigraph) -> usize {
    graph.arc_count() + 1 - graph.vertex_count()
}

/// A spanning tree of the underlying undirected graph, stored as sorted
/// arc indices, plus a root vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    arc_indices: Vec<usize>,
    root: usize,
}

impl SpanningTree {
    pub fn new(graph: &ColoredDigraph, arcs: Vec<usize>, root: usize) -> Result<Self> {
        if root >= graph.vertex_count() {
            return Err(Error::InvalidParameter("tree root out of range".into()));
        }
        let mut sorted = arcs;
        sorted.sort_unstable();
        sorted.dedup();
        let tree = Self {
            arc_indices: sorted,
            root,
        };
        TreeView::build(graph, &tree)?;
        Ok(tree)
    }

    pub fn arc_indices(&self) -> &[usize] {
        &self.arc_indices
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains(&self, arc: usize) -> bool {
        self.arc_indices.binary_search(&arc).is_ok()
    }
}

/// Parent structure of a spanning tree, rooted and validated against a
/// specific graph.
struct TreeView {
    parent: Vec<usize>,
    parent_arc: Vec<usize>,
    depth: Vec<usize>,
}

impl TreeView {
    fn build(graph: &ColoredDigraph, tree: &SpanningTree) -> Result<Self> {
        let h = graph.vertex_count();
        if tree.arc_indices.len() + 1 != h {
            return Err(Error::InvalidParameter(format!(
                "spanning tree needs {} arcs, got {}",
                h - 1,
                tree.arc_indices.len()
            )));
        }
        if let Some(&bad) = tree.arc_indices.iter().find(|&&a| a >= graph.arc_count()) {
            return Err(Error::InvalidParameter(format!(
                "tree arc index {bad} out of range"
            )));
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); h];
        for &a in &tree.arc_indices {
            let (t, hd) = graph.arc(a);
            adj[t].push((hd, a));
            adj[hd].push((t, a));
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let mut parent = vec![usize::MAX; h];
        let mut parent_arc = vec![usize::MAX; h];
        let mut depth = vec![0usize; h];
        let mut seen = vec![false; h];
        let mut queue = std::collections::VecDeque::from([tree.root]);
        seen[tree.root] = true;
        while let Some(u) = queue.pop_front() {
            for &(w, a) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    parent_arc[w] = a;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidParameter(
                "tree arcs do not span the graph".into(),
            ));
        }
        Ok(Self {
            parent,
            parent_arc,
            depth,
        })
    }

    /// Characteristic vector of the cycle closed by non-tree arc e = (u,v):
    /// +1 on e, then the unique tree path from v back to u with signs by
    /// traversal direction.
    fn close_cycle(&self, graph: &ColoredDigraph, e: usize) -> CycleVector {
        let (u, v) = graph.arc(e);
        let mut c = vec![0i64; graph.arc_count()];
        c[e] = 1;
        let (mut a, mut b) = (v, u);
        // a walks the head-side segment in cycle direction (child to parent);
        // b walks the tail-side segment, traversed parent to child.
        while self.depth[a] > self.depth[b] {
            let arc = self.parent_arc[a];
            let p = self.parent[a];
            c[arc] += if graph.arc(arc) == (a, p) { 1 } else { -1 };
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let arc = self.parent_arc[b];
            let p = self.parent[b];
            c[arc] += if graph.arc(arc) == (p, b) { 1 } else { -1 };
            b = p;
        }
        while a != b {
            let arc = self.parent_arc[a];
            let p = self.parent[a];
            c[arc] += if graph.arc(arc) == (a, p) { 1 } else { -1 };
            a = p;
            let arc = self.parent_arc[b];
            let p = self.parent[b];
            c[arc] += if graph.arc(arc) == (p, b) { 1 } else { -1 };
            b = p;
        }
        c
    }
}

/// One cycle vector per non-tree arc, in ascending arc order. Each vector
/// puts +1 on its non-tree arc; the closing tree path may then traverse
/// tree arcs either way.
pub fn fundamental_cycles(
    graph: &ColoredDigraph,
    tree: &SpanningTree,
) -> Result<Vec<CycleVector>> {
    let view = TreeView::build(graph, tree)?;
    Ok((0..graph.arc_count())
        .filter(|&e| !tree.contains(e))
        .map(|e| view.close_cycle(graph, e))
        .collect())
}

/// Whether v lies in the rational kernel of the incidence matrix.
pub fn in_cycle_space(v: &[i64], graph: &ColoredDigraph) -> Result<bool> {
    if v.len() != graph.arc_count() {
        return Err(Error::InvalidParameter(format!(
            "vector length {} does not match arc count {}",
            v.len(),
            graph.arc_count()
        )));
    }
    let ok = (0..graph.vertex_count()).all(|u| {
        let mut sum = 0i64;
        for (i, &(t, h)) in graph.arcs().iter().enumerate() {
            if t == u {
                sum -= v[i];
            }
            if h == u {
                sum += v[i];
            }
        }
        sum == 0
    });
    Ok(ok)
}

/// Outcome of the integral-generation test, with the reason a vector
/// family fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerationVerdict {
    Generates,
    /// Some vector is not in the cycle space.
    NotInSpace { vector_index: usize },
    /// The family does not form a basis: wrong cardinality or dependent.
    WrongRank { rank: usize, expected: usize },
    /// A basis over the rationals whose nonsingular maximal submatrix has
    /// determinant other than +-1, so integer coefficients cannot reach
    /// every cycle vector.
    BadDeterminant { determinant: i128 },
}

impl GenerationVerdict {
    pub fn generates(&self) -> bool {
        matches!(self, GenerationVerdict::Generates)
    }

    /// Stable diagnostic code, None when the family generates.
    pub fn reason_code(&self) -> Option<&'static str> {
        match self {
            GenerationVerdict::Generates => None,
            GenerationVerdict::NotInSpace { .. } => Some("not-in-space"),
            GenerationVerdict::WrongRank { .. } => Some("wrong-rank"),
            GenerationVerdict::BadDeterminant { .. } => Some("bad-determinant"),
        }
    }
}

/// Tests whether the vectors integrally generate the cycle space: each lies
/// in the space, they form a basis of it over the rationals, and one (hence
/// every) nonsingular maximal square submatrix has determinant +-1.
pub fn integrally_generates(
    vectors: &[Vec<i64>],
    graph: &ColoredDigraph,
) -> Result<GenerationVerdict> {
    for (i, v) in vectors.iter().enumerate() {
        if !in_cycle_space(v, graph)? {
            return Ok(GenerationVerdict::NotInSpace { vector_index: i });
        }
    }
    let dim = cycle_space_dimension(graph);
    let rank = linalg::rank(vectors)?;
    if vectors.len() != dim || rank != dim {
        return Ok(GenerationVerdict::WrongRank {
            rank,
            expected: dim,
        });
    }
    if dim == 0 {
        return Ok(GenerationVerdict::Generates);
    }
    let pivots = linalg::pivot_columns(vectors)?;
    debug_assert_eq!(pivots.len(), dim);
    let submatrix: Vec<Vec<i64>> = vectors
        .iter()
        .map(|row| pivots.iter().map(|&j| row[j]).collect())
        .collect();
    let det = linalg::determinant(&submatrix)?;
    debug_assert_ne!(det, 0, "pivot columns form a nonsingular submatrix");
    if det == 1 || det == -1 {
        Ok(GenerationVerdict::Generates)
    } else {
        Ok(GenerationVerdict::BadDeterminant { determinant: det })
    }
}

/// Determinants of all maximal (k x k) square submatrices of the k-row
/// family, in lexicographic column-subset order. The second route of the
/// determinant criterion: integral generation of a basis holds iff all
/// values here lie in {0, +1, -1}.
pub fn maximal_square_determinants(vectors: &[Vec<i64>]) -> Result<Vec<i128>> {
    let k = vectors.len();
    if k == 0 {
        return Ok(vec![1]);
    }
    let m = vectors[0].len();
    if vectors.iter().any(|v| v.len() != m) {
        return Err(Error::InvalidParameter("ragged vector family".into()));
    }
    if k > m {
        return Err(Error::InvalidParameter(
            "more vectors than columns".into(),
        ));
    }
    let count = binomial(m, k)
        .filter(|&c| c <= 200_000)
        .ok_or_else(|| Error::SizeLimit("too many maximal submatrices to enumerate".into()))?;
    let mut out = Vec::with_capacity(count as usize);
    let mut stopped_err = None;
    for_each_combination(m, k, |cols| {
        let sub: Vec<Vec<i64>> = vectors
            .iter()
            .map(|row| cols.iter().map(|&j| row[j]).collect())
            .collect();
        match linalg::determinant(&sub) {
            Ok(d) => {
                out.push(d);
                false
            }
            Err(e) => {
                stopped_err = Some(e);
                true
            }
        }
    });
    match stopped_err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn binomial(n: usize, k: usize) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u64)?;
        acc /= (i + 1) as u64;
        if acc > 10_000_000 {
            return None;
        }
    }
    Some(acc)
}

/// Visits k-subsets of 0..n in lexicographic order until f returns true;
/// returns whether iteration stopped early.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All spanning trees of the graph (as lexicographically ordered arc-index
/// subsets), rooted at vertex 0.
pub fn spanning_trees(graph: &ColoredDigraph) -> Vec<SpanningTree> {
    let m = graph.arc_count();
    let h = graph.vertex_count();
    if h == 1 {
        return vec![SpanningTree {
            arc_indices: Vec::new(),
            root: 0,
        }];
    }
    let mut trees = Vec::new();
    for_each_combination(m, h - 1, |arcs| {
        let candidate = SpanningTree {
            arc_indices: arcs.to_vec(),
            root: 0,
        };
        if TreeView::build(graph, &candidate).is_ok() {
            trees.push(candidate);
        }
        false
    });
    trees
}

/// Whether the system's characteristic vectors integrally generate the
/// graph's cycle space.
pub fn is_graph_representation(graph: &ColoredDigraph, sys: &AbelianSystem) -> Result<bool> {
    if graph.arc_count() != sys.num_variables() {
        return Err(Error::InvalidParameter(format!(
            "graph has {} arcs but the system has {} variables",
            graph.arc_count(),
            sys.num_variables()
        )));
    }
    Ok(integrally_generates(&sys.characteristic_vectors(), graph)?.generates())
}

/// Characteristic vector of the closed walk that reads the word across the
/// graph's arcs, or None when the word does not chain or close up.
fn closed_walk_vector(graph: &ColoredDigraph, word: &[(usize, i8)]) -> Option<CycleVector> {
    let mut c = vec![0i64; graph.arc_count()];
    let (first_var, first_exp) = word[0];
    let (t0, h0) = graph.arc(first_var);
    let start = if first_exp == 1 { t0 } else { h0 };
    let mut cur = start;
    for &(v, e) in word {
        let (t, h) = graph.arc(v);
        if e == 1 {
            if cur != t {
                return None;
            }
            cur = h;
            c[v] = 1;
        } else {
            if cur != h {
                return None;
            }
            cur = t;
            c[v] = -1;
        }
    }
    (cur == start).then_some(c)
}

/// Whether the tree's fundamental cycles realize the system's words: each
/// word reads along a closed walk, that walk uses exactly one non-tree arc,
/// its vector equals the corresponding fundamental cycle up to overall
/// orientation, and the correspondence is a bijection.
pub fn is_strong_representation(
    graph: &ColoredDigraph,
    tree: &SpanningTree,
    sys: &OrderedSystem,
) -> Result<bool> {
    if graph.arc_count() != sys.num_variables() {
        return Err(Error::InvalidParameter(format!(
            "graph has {} arcs but the system has {} variables",
            graph.arc_count(),
            sys.num_variables()
        )));
    }
    let view = TreeView::build(graph, tree)?;
    let k = sys.num_equations();
    let nontree: Vec<usize> = (0..graph.arc_count()).filter(|&e| !tree.contains(e)).collect();
    if nontree.len() != k {
        return Ok(false);
    }
    let mut used = vec![false; k];
    for word in sys.words() {
        let Some(wvec) = closed_walk_vector(graph, word) else {
            return Ok(false);
        };
        let carriers: Vec<usize> = nontree
            .iter()
            .enumerate()
            .filter(|&(_, &e)| wvec[e] != 0)
            .map(|(j, _)| j)
            .collect();
        let [j] = carriers[..] else {
            return Ok(false);
        };
        if used[j] {
            return Ok(false);
        }
        let fc = view.close_cycle(graph, nontree[j]);
        let negated: CycleVector = fc.iter().map(|&x| -x).collect();
        if wvec != fc && wvec != negated {
            return Ok(false);
        }
        used[j] = true;
    }
    // Structural consequence of a successful match: every equation owns a
    // variable no other equation mentions (its non-tree arc's color).
    for (i, word) in sys.words().iter().enumerate() {
        let private = word.iter().any(|&(v, _)| {
            sys.words()
                .iter()
                .enumerate()
                .all(|(j, other)| j == i || other.iter().all(|&(u, _)| u != v))
        });
        assert!(
            private,
            "matched word {i} has no private variable; the cycle matching is unsound"
        );
    }
    Ok(true)
}

/// Shared brute-force enumerator: assigns every arc's endpoints over at
/// most h labeled vertices, introducing vertex labels in first-use order,
/// pruning by partial incidence sums, and reporting each weakly connected
/// completion whose cycle space the vectors integrally generate.
fn enumerate_representation_graphs(
    vectors: &[Vec<i64>],
    h: usize,
    visit: &mut dyn FnMut(&ColoredDigraph) -> Result<bool>,
) -> Result<bool> {
    let m = vectors[0].len();
    let k = vectors.len();
    // rem[r][j] = sum of |vectors[r][a]| over a >= j
    let mut rem = vec![vec![0i64; m + 1]; k];
    for r in 0..k {
        for j in (0..m).rev() {
            rem[r][j] = rem[r][j + 1] + vectors[r][j].abs();
        }
    }
    struct Dfs<'a> {
        vectors: &'a [Vec<i64>],
        rem: Vec<Vec<i64>>,
        h: usize,
        m: usize,
        arcs: Vec<(usize, usize)>,
        sums: Vec<Vec<i64>>,
        visit: &'a mut dyn FnMut(&ColoredDigraph) -> Result<bool>,
    }
    impl Dfs<'_> {
        fn go(&mut self, j: usize, used: usize) -> Result<bool> {
            if j == self.m {
                if used != self.h || self.sums.iter().any(|s| s.iter().any(|&x| x != 0)) {
                    return Ok(false);
                }
                let Ok(graph) =
                    ColoredDigraph::from_arcs_in_color_order(self.h, self.arcs.clone())
                else {
                    return Ok(false);
                };
                if integrally_generates(self.vectors, &graph)?.generates() {
                    return (self.visit)(&graph);
                }
                return Ok(false);
            }
            // every missing label must still be introducible, two per arc
            if self.h - used > 2 * (self.m - j) {
                return Ok(false);
            }
            let t_max = used.min(self.h - 1);
            for t in 0..=t_max {
                let head_new_cap = if t == used { used + 1 } else { used };
                let head_max = head_new_cap.min(self.h - 1);
                for hd in 0..=head_max {
                    if t == hd {
                        continue;
                    }
                    let next_used = used.max(t + 1).max(hd + 1);
                    let mut ok = true;
                    for r in 0..self.vectors.len() {
                        let v = self.vectors[r][j];
                        self.sums[r][t] -= v;
                        self.sums[r][hd] += v;
                        let weight: i64 = self.sums[r].iter().map(|x| x.abs()).sum();
                        if weight > 2 * self.rem[r][j + 1] {
                            ok = false;
                        }
                    }
                    if ok {
                        self.arcs.push((t, hd));
                        if self.go(j + 1, next_used)? {
                            return Ok(true);
                        }
                        self.arcs.pop();
                    }
                    for r in 0..self.vectors.len() {
                        let v = self.vectors[r][j];
                        self.sums[r][t] += v;
                        self.sums[r][hd] -= v;
                    }
                }
            }
            Ok(false)
        }
    }
    let mut dfs = Dfs {
        vectors,
        rem,
        h,
        m,
        arcs: Vec::with_capacity(m),
        sums: vec![vec![0i64; h]; k],
        visit,
    };
    dfs.go(0, 0)
}

fn check_search_caps(m: usize, max_vertices: usize) -> Result<()> {
    if m > MAX_SEARCH_VARIABLES {
        return Err(Error::SizeLimit(format!(
            "representation search capped at {MAX_SEARCH_VARIABLES} variables, got {m}"
        )));
    }
    if max_vertices < 2 {
        return Err(Error::InvalidParameter(
            "max_vertices must be at least 2".into(),
        ));
    }
    Ok(())
}

/// Brute-force search for a graph on exactly m - k + 1 vertices whose cycle
/// space the system's vectors integrally generate. Deterministic: vertex
/// labels are introduced in first-use order and the lexicographically first
/// endpoint assignment wins.
pub fn search_representation(
    sys: &AbelianSystem,
    max_vertices: usize,
) -> Result<Option<ColoredDigraph>> {
    check_search_caps(sys.num_variables(), max_vertices)?;
    let h = sys.num_variables() - sys.num_equations() + 1;
    if h < 2 || h > max_vertices {
        return Ok(None);
    }
    let vectors = sys.characteristic_vectors();
    let mut found = None;
    enumerate_representation_graphs(&vectors, h, &mut |g| {
        found = Some(g.clone());
        Ok(true)
    })?;
    Ok(found)
}

/// Brute-force search for a graph plus spanning tree strongly representing
/// the word system: candidate graphs come from the same enumeration as
/// `search_representation` over the system's net-exponent vectors; trees
/// are tried in lexicographic arc-subset order.
pub fn search_strong_representation(
    sys: &OrderedSystem,
    max_vertices: usize,
) -> Result<Option<(ColoredDigraph, SpanningTree)>> {
    check_search_caps(sys.num_variables(), max_vertices)?;
    let h = sys.num_variables() - sys.num_equations() + 1;
    if h < 2 || h > max_vertices {
        return Ok(None);
    }
    let vectors = sys.characteristic_vectors();
    let mut found = None;
    enumerate_representation_graphs(&vectors, h, &mut |g| {
        for tree in spanning_trees(g) {
            if is_strong_representation(g, &tree, sys)? {
                found = Some((g.clone(), tree));
                return Ok(true);
            }
        }
        Ok(false)
    })?;
    Ok(found)
}
