use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfq::FieldSpec;
use crate::grassmann::{enum_skew_to, Subspace};
use crate::qarith::{big_pow, gauss_binom, gauss_binom_or_zero, to_u64, BigNat};

/// Bipartite graph with subspace-labelled sides. Either side may be left
/// unlabelled (empty) for purely combinatorial graphs.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    pub x_vertices: Vec<Subspace>,
    pub y_vertices: Vec<Subspace>,
    x_count: usize,
    y_count: usize,
    adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Labelled graph; adjacency lists are sorted and deduplicated.
    pub fn new(
        x_vertices: Vec<Subspace>,
        y_vertices: Vec<Subspace>,
        adjacency: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if adjacency.len() != x_vertices.len() {
            return Err(Error::BadArgs("one adjacency list per X vertex".into()));
        }
        let y_count = y_vertices.len();
        let mut g = Self::from_adjacency(y_count, adjacency)?;
        g.x_vertices = x_vertices;
        g.y_vertices = y_vertices;
        Ok(g)
    }

    /// Unlabelled graph with `adjacency.len()` X-vertices and `y_count`
    /// Y-vertices.
    pub fn from_adjacency(y_count: usize, mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            if list.last().is_some_and(|&j| j >= y_count) {
                return Err(Error::BadArgs(format!(
                    "adjacency index out of range (|Y| = {y_count})"
                )));
            }
        }
        Ok(BipartiteGraph {
            x_vertices: Vec::new(),
            y_vertices: Vec::new(),
            x_count: adjacency.len(),
            y_count,
            adjacency,
        })
    }

    pub fn x_len(&self) -> usize {
        self.x_count
    }

    pub fn y_len(&self) -> usize {
        self.y_count
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adjacency[x]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adjacency[x].binary_search(&y).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Degree of every Y-vertex.
    pub fn y_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.y_count];
        for list in &self.adjacency {
            for &y in list {
                deg[y] += 1;
            }
        }
        deg
    }

    /// `N_Y(S)`, sorted.
    pub fn neighborhood(&self, s: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.y_count];
        for &x in s {
            for &y in &self.adjacency[x] {
                seen[y] = true;
            }
        }
        (0..self.y_count).filter(|&y| seen[y]).collect()
    }
}

/// Vertex degrees predicted for an inclusion graph: `(deg D, deg E)`.
pub fn inclusion_degrees(n: usize, k: usize, i: usize, q: u64) -> (BigNat, BigNat) {
    let d = big_pow(q, (k - 2 * i) * k) * gauss_binom_or_zero(n - k - i, k - 2 * i, q);
    let e = gauss_binom_or_zero(k - i, i, q);
    (d, e)
}

/// X = `i`-spaces skew to the pivot, Y = `(k−i)`-spaces skew to the pivot,
/// `D ~ E` iff `D ⊆ E`. Both sides are in canonical order.
pub fn build_inclusion_graph(
    field: &FieldSpec,
    n: usize,
    k: usize,
    i: usize,
    pivot: &Subspace,
) -> Result<BipartiteGraph> {
    if i == 0 || 2 * i > k {
        return Err(Error::BadLayer {
            layer: i,
            max: k / 2,
        });
    }
    if n < 2 * k {
        return Err(Error::BadArgs(format!(
            "inclusion graphs need n >= 2k (n={n}, k={k})"
        )));
    }
    if pivot.field() != field || pivot.ambient_dim() != n {
        return Err(Error::MixedAmbient);
    }
    if pivot.dim() != k {
        return Err(Error::MixedDimension);
    }
    let mut xs: Vec<Subspace> = enum_skew_to(pivot, i)?.collect();
    let mut ys: Vec<Subspace> = enum_skew_to(pivot, k - i)?.collect();
    xs.sort();
    ys.sort();
    let x_index: HashMap<&Subspace, usize> = xs.iter().enumerate().map(|(j, s)| (s, j)).collect();
    let mut adjacency = vec![Vec::new(); xs.len()];
    for (yi, e) in ys.iter().enumerate() {
        for d in e.subspaces_of_dim(i)? {
            if let Some(&xi) = x_index.get(&d) {
                adjacency[xi].push(yi);
            }
        }
    }
    let g = BipartiteGraph::new(xs, ys, adjacency)?;

    let q = field.q() as u64;
    let (deg_d, deg_e) = inclusion_degrees(n, k, i, q);
    let (deg_d, deg_e) = (to_u64(&deg_d), to_u64(&deg_e));
    assert!(
        g.adjacency.iter().all(|l| Some(l.len() as u64) == deg_d),
        "X-degree differs from the predicted count"
    );
    assert!(
        g.y_degrees().iter().all(|&d| Some(d as u64) == deg_e),
        "Y-degree differs from the predicted count"
    );
    debug_assert_eq!(
        BigNat::from(g.x_len()),
        big_pow(q, k * i) * gauss_binom(n - k, i, q)?
    );
    Ok(g)
}

/// Result of [`one_to_m_matching`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchOutcome {
    /// X-index → its `m` assigned Y-indices, sorted.
    Matched(Vec<Vec<usize>>),
    /// A set `S ⊆ X` with `|N_Y(S)| < m|S|`, sorted.
    Deficient(Vec<usize>),
}

/// Each X-vertex gets `m` clones, a maximum matching is grown by augmenting
/// paths, and a failure is turned into a Hall violator from the alternating
/// forest rooted at the unmatched clones.
pub fn one_to_m_matching(g: &BipartiteGraph, m: usize) -> Result<MatchOutcome> {
    if m == 0 {
        return Err(Error::BadArgs("multiplicity must be at least 1".into()));
    }
    let left = g.x_len() * m;
    let owner = |l: usize| l / m;
    let mut match_y: Vec<Option<usize>> = vec![None; g.y_len()];
    let mut match_l: Vec<Option<usize>> = vec![None; left];
    let mut stamp = vec![usize::MAX; g.y_len()];

    for l in 0..left {
        augment(g, owner, l, l, &mut match_y, &mut match_l, &mut stamp);
    }

    let unmatched: Vec<usize> = (0..left).filter(|&l| match_l[l].is_none()).collect();
    if unmatched.is_empty() {
        let mut images = vec![Vec::with_capacity(m); g.x_len()];
        for (l, y) in match_l.iter().enumerate() {
            images[owner(l)].push(y.expect("all matched"));
        }
        for img in &mut images {
            img.sort_unstable();
        }
        return Ok(MatchOutcome::Matched(images));
    }

    let mut reached_l = vec![false; left];
    let mut reached_y = vec![false; g.y_len()];
    let mut queue: VecDeque<usize> = unmatched.into_iter().collect();
    for &l in &queue {
        reached_l[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &y in g.neighbors(owner(l)) {
            if reached_y[y] {
                continue;
            }
            reached_y[y] = true;
            let next = match_y[y].expect("maximum matching has no augmenting path");
            if !reached_l[next] {
                reached_l[next] = true;
                queue.push_back(next);
            }
        }
    }
    let mut s: Vec<usize> = (0..left).filter(|&l| reached_l[l]).map(owner).collect();
    s.dedup();
    Ok(MatchOutcome::Deficient(s))
}

fn augment(
    g: &BipartiteGraph,
    owner: impl Fn(usize) -> usize + Copy,
    l: usize,
    round: usize,
    match_y: &mut [Option<usize>],
    match_l: &mut [Option<usize>],
    stamp: &mut [usize],
) -> bool {
    for &y in g.neighbors(owner(l)) {
        if stamp[y] == round {
            continue;
        }
        stamp[y] = round;
        let free = match match_y[y] {
            None => true,
            Some(other) => augment(g, owner, other, round, match_y, match_l, stamp),
        };
        if free {
            match_y[y] = Some(l);
            match_l[l] = Some(y);
            return true;
        }
    }
    false
}

/// Whether `images` is a one-to-`m` matching of `g`.
pub fn is_valid_matching(g: &BipartiteGraph, m: usize, images: &[Vec<usize>]) -> bool {
    if images.len() != g.x_len() {
        return false;
    }
    let mut used = vec![false; g.y_len()];
    for (x, img) in images.iter().enumerate() {
        if img.len() != m {
            return false;
        }
        for &y in img {
            if y >= g.y_len() || used[y] || !g.has_edge(x, y) {
                return false;
            }
            used[y] = true;
        }
    }
    true
}

/// Whether `s` is a nonempty set violating `|N_Y(S)| ≥ m|S|`.
pub fn is_deficient(g: &BipartiteGraph, m: usize, s: &[usize]) -> bool {
    !s.is_empty() && s.iter().all(|&x| x < g.x_len()) && g.neighborhood(s).len() < m * s.len()
}

/// Extends a one-to-`m` matching to a partition of Y: each X-vertex keeps its
/// matched set and every unmatched Y-vertex joins its first neighbour in X.
pub fn partition_y(g: &BipartiteGraph, m: usize, images: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    if !is_valid_matching(g, m, images) {
        return Err(Error::BadArgs("not a valid one-to-m matching".into()));
    }
    let mut first_x = vec![None; g.y_len()];
    for x in (0..g.x_len()).rev() {
        for &y in g.neighbors(x) {
            first_x[y] = Some(x);
        }
    }
    let mut parts: Vec<Vec<usize>> = images.to_vec();
    let mut matched = vec![false; g.y_len()];
    for &y in images.iter().flatten() {
        matched[y] = true;
    }
    for y in 0..g.y_len() {
        if matched[y] {
            continue;
        }
        let x = first_x[y].ok_or(Error::UnmatchedUncoverable(y))?;
        parts[x].push(y);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    Ok(parts)
}
