use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{PairTable, Predicate};

/// Memory ceiling for the per-pair conflict table; larger ground sets fall
/// back to checking triples on demand.
const TRIPLE_TABLE_BYTES: usize = 400 << 20;

pub(crate) type Bits = Vec<u64>;

#[inline]
fn test(b: &[u64], i: usize) -> bool {
    b[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
fn set(b: &mut [u64], i: usize) {
    b[i >> 6] |= 1 << (i & 63);
}

#[inline]
fn clear(b: &mut [u64], i: usize) {
    b[i >> 6] &= !(1 << (i & 63));
}

fn first(b: &[u64]) -> Option<usize> {
    b.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn count(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn ones(b: &[u64]) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

enum Conflicts {
    /// d = 2: static rows of skew partners.
    Pairs(Vec<u64>),
    /// Triple predicates: row `(u, v)` holds every `w` completing a
    /// forbidden triple with `u` and `v`.
    Triples(Vec<u64>),
    /// Large ground sets and d ≥ 4: decided from the pair table on demand.
    OnDemand,
}

/// Shared, immutable search data over a fixed ground set.
pub(crate) struct Engine<'a> {
    table: &'a PairTable,
    predicate: Predicate,
    size: usize,
    words: usize,
    conflicts: Conflicts,
    deadline: Option<Instant>,
    aborted: AtomicBool,
    nodes: AtomicU64,
}

/// Per-node state: chosen members, live candidates and, for triple
/// predicates, each candidate's conflicts with the other candidates.
#[derive(Clone)]
pub(crate) struct Node {
    chosen: Vec<usize>,
    cand: Bits,
    conf: Bits,
}

struct Best {
    size: AtomicUsize,
    members: Mutex<Vec<usize>>,
}

impl Best {
    fn offer(&self, chosen: &[usize]) {
        if chosen.len() <= self.size.load(Ordering::Relaxed) {
            return;
        }
        let mut m = self.members.lock().expect("poisoned");
        if chosen.len() > m.len() {
            *m = chosen.to_vec();
            self.size.fetch_max(chosen.len(), Ordering::Relaxed);
        }
    }
}

impl<'a> Engine<'a> {
    pub fn new(
        table: &'a PairTable,
        predicate: Predicate,
        time_limit: Option<Duration>,
    ) -> Result<Self> {
        let arity = predicate.arity();
        if arity < 2 {
            return Err(Error::BadArity(arity));
        }
        let size = table.len();
        let words = size.div_ceil(64).max(1);
        let conflicts = if arity == 2 {
            let mut rows = vec![0u64; size * words];
            for u in 0..size {
                for v in 0..size {
                    if u != v && table.meet_dim(u, v) == 0 {
                        set(&mut rows[u * words..(u + 1) * words], v);
                    }
                }
            }
            Conflicts::Pairs(rows)
        } else if arity == 3 && size * size * words * 8 <= TRIPLE_TABLE_BYTES {
            Conflicts::Triples(triple_rows(table, predicate, size, words))
        } else {
            Conflicts::OnDemand
        };
        Ok(Engine {
            table,
            predicate,
            size,
            words,
            conflicts,
            deadline: time_limit.map(|t| Instant::now() + t),
            aborted: AtomicBool::new(false),
            nodes: AtomicU64::new(0),
        })
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn timed_out(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        if n & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted.store(true, Ordering::Relaxed);
                    return false;
                }
            }
        }
        true
    }

    pub fn root(&self) -> Node {
        let mut cand = vec![0u64; self.words];
        for i in 0..self.size {
            set(&mut cand, i);
        }
        let conf = match self.conflicts {
            Conflicts::Triples(_) => vec![0u64; self.size * self.words],
            _ => Vec::new(),
        };
        Node {
            chosen: Vec::new(),
            cand,
            conf,
        }
    }

    fn tri_row(&self, rows: &'a [u64], u: usize, v: usize) -> &'a [u64] {
        let at = (u * self.size + v) * self.words;
        &rows[at..at + self.words]
    }

    fn conf_row<'n>(&'n self, node: &'n Node, u: usize) -> Option<&'n [u64]> {
        match &self.conflicts {
            Conflicts::Pairs(rows) => Some(&rows[u * self.words..(u + 1) * self.words]),
            Conflicts::Triples(_) => Some(&node.conf[u * self.words..(u + 1) * self.words]),
            Conflicts::OnDemand => None,
        }
    }

    fn completes_forbidden(&self, chosen: &[usize], v: usize, w: usize) -> bool {
        let t = self.table;
        match self.predicate {
            Predicate::CoveringTriple => {
                chosen.iter().any(|&p| t.covering_pivot(p, v, w).is_some())
            }
            Predicate::ThreeCluster | Predicate::DCluster(3) => {
                chosen.iter().any(|&p| t.is_3_cluster(p, v, w))
            }
            Predicate::DCluster(2) => t.meet_dim(v, w) == 0,
            Predicate::DCluster(d) => {
                let r = d - 2;
                if chosen.len() < r {
                    return false;
                }
                let mut tuple = vec![0; d];
                crate::families::first_combination(chosen.len(), r, |s| {
                    for (slot, &i) in tuple.iter_mut().zip(s) {
                        *slot = chosen[i];
                    }
                    tuple[r] = v;
                    tuple[r + 1] = w;
                    t.is_d_cluster(&tuple)
                })
                .is_some()
            }
        }
    }

    /// Child node after adding `v`, the smallest candidate of `node`, with
    /// `rest` the candidates above `v`.
    fn child(&self, node: &Node, v: usize, rest: &[u64]) -> Node {
        let mut chosen = node.chosen.clone();
        let mut cand = rest.to_vec();
        let mut conf = Vec::new();
        match &self.conflicts {
            Conflicts::Pairs(rows) => {
                for (c, r) in cand
                    .iter_mut()
                    .zip(&rows[v * self.words..(v + 1) * self.words])
                {
                    *c &= !r;
                }
            }
            Conflicts::Triples(rows) => {
                for (c, r) in cand
                    .iter_mut()
                    .zip(&node.conf[v * self.words..(v + 1) * self.words])
                {
                    *c &= !r;
                }
                conf = vec![0u64; self.size * self.words];
                for u in ones(&cand).collect::<Vec<_>>() {
                    let at = u * self.words;
                    let row = self.tri_row(rows, u, v);
                    for j in 0..self.words {
                        conf[at + j] = node.conf[at + j] | row[j];
                    }
                }
            }
            Conflicts::OnDemand => {
                for w in ones(rest).collect::<Vec<_>>() {
                    if self.completes_forbidden(&node.chosen, v, w) {
                        clear(&mut cand, w);
                    }
                }
            }
        }
        chosen.push(v);
        Node { chosen, cand, conf }
    }

    /// Greedy clique cover of the candidates' conflict graph, abandoned once
    /// it exceeds `limit`. Members of a clique are pairwise incompatible, so
    /// at most one per clique can join.
    fn cover_bound(&self, node: &Node, cand: &[u64], limit: usize) -> usize {
        if matches!(self.conflicts, Conflicts::OnDemand) {
            return count(cand);
        }
        let w = self.words;
        let mut masks: Vec<u64> = Vec::new();
        let mut cliques = 0;
        for u in ones(cand) {
            let row = self.conf_row(node, u).expect("conflict rows");
            if let Some(c) = (0..cliques).find(|&c| test(&masks[c * w..(c + 1) * w], u)) {
                for j in 0..w {
                    masks[c * w + j] &= row[j];
                }
            } else {
                cliques += 1;
                if cliques > limit {
                    return cliques;
                }
                masks.extend(row.iter().zip(cand).map(|(r, c)| r & c));
            }
        }
        cliques
    }

    /// Candidates sorted by greedy clique class, each paired with the number
    /// of classes needed to cover it and every candidate before it.
    fn colour_order(&self, node: &Node, cand: &[u64]) -> Vec<(usize, usize)> {
        if matches!(self.conflicts, Conflicts::OnDemand) {
            return ones(cand).enumerate().map(|(i, v)| (v, i + 1)).collect();
        }
        let w = self.words;
        let mut masks: Vec<u64> = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut verts: Vec<(usize, usize)> = ones(cand)
            .map(|u| {
                let row = self.conf_row(node, u).expect("conflict rows");
                let deg: usize = row
                    .iter()
                    .zip(cand)
                    .map(|(r, c)| (r & c).count_ones() as usize)
                    .sum();
                (deg, u)
            })
            .collect();
        verts.sort_by_key(|&(deg, u)| (deg, u));
        for (_, u) in verts {
            let row = self.conf_row(node, u).expect("conflict rows");
            if let Some(c) = (0..classes.len()).find(|&c| test(&masks[c * w..(c + 1) * w], u)) {
                for j in 0..w {
                    masks[c * w + j] &= row[j];
                }
                classes[c].push(u);
            } else {
                masks.extend(row.iter().zip(cand).map(|(r, c)| r & c));
                classes.push(vec![u]);
            }
        }
        classes
            .into_iter()
            .enumerate()
            .flat_map(|(c, members)| members.into_iter().map(move |v| (v, c + 1)))
            .collect()
    }

    /// Drops every candidate whose addition alone already leaves too few
    /// compatible candidates to reach `target`. Returns false if the node
    /// itself cannot reach `target`.
    fn prune_failed(&self, node: &mut Node, target: usize) -> bool {
        if matches!(self.conflicts, Conflicts::OnDemand) || node.chosen.len() >= target {
            return true;
        }
        let need = target - node.chosen.len();
        let w = self.words;
        let mut live = vec![0u64; w];
        let mut masks: Vec<u64> = Vec::new();
        loop {
            let mut dropped = false;
            for v in ones(&node.cand).collect::<Vec<_>>() {
                let vrow = self.conf_row(node, v).expect("conflict rows");
                for j in 0..w {
                    live[j] = node.cand[j] & !vrow[j];
                }
                clear(&mut live, v);
                if count(&live) + 1 < need {
                    clear(&mut node.cand, v);
                    dropped = true;
                    continue;
                }
                // greedy clique cover of the survivors under the conflicts
                // they would have after adding v
                masks.clear();
                let mut cliques = 0;
                for u in ones(&live) {
                    let base = self.conf_row(node, u).expect("conflict rows");
                    let extra = match &self.conflicts {
                        Conflicts::Triples(rows) => Some(self.tri_row(rows, u, v)),
                        _ => None,
                    };
                    let row = |j: usize| base[j] | extra.map_or(0, |e| e[j]);
                    if let Some(c) = (0..cliques).find(|&c| test(&masks[c * w..(c + 1) * w], u)) {
                        for j in 0..w {
                            masks[c * w + j] &= row(j);
                        }
                    } else {
                        cliques += 1;
                        if cliques + 1 >= need {
                            break;
                        }
                        masks.extend((0..w).map(|j| row(j) & live[j]));
                    }
                }
                if cliques + 1 < need {
                    clear(&mut node.cand, v);
                    dropped = true;
                }
            }
            if count(&node.cand) < need {
                return false;
            }
            if !dropped {
                return true;
            }
        }
    }

    fn grow_max(&self, mut node: Node, best: &Best) {
        if !self.tick() {
            return;
        }
        best.offer(&node.chosen);
        if !self.prune_failed(&mut node, best.size.load(Ordering::Relaxed) + 1) {
            return;
        }
        let order = self.colour_order(&node, &node.cand);
        let mut cand = node.cand.clone();
        for (pos, &(v, bound)) in order.iter().enumerate().rev() {
            let have = best.size.load(Ordering::Relaxed);
            if node.chosen.len() + bound <= have {
                return;
            }
            if node.chosen.len() + bound == have + 1 {
                for child in self.tight_children(&node, &order[..=pos]) {
                    if node.chosen.len() + bound <= best.size.load(Ordering::Relaxed) {
                        return;
                    }
                    self.grow_max(child, best);
                    if self.timed_out() {
                        return;
                    }
                }
                return;
            }
            clear(&mut cand, v);
            let child = self.child(&node, v, &cand);
            self.grow_max(child, best);
            if self.timed_out() {
                return;
            }
        }
    }

    /// `order` is covered by exactly as many classes as members still
    /// needed, so every class contributes one member and it suffices to
    /// branch over the smallest class.
    fn tight_children<'s>(
        &'s self,
        node: &'s Node,
        order: &'s [(usize, usize)],
    ) -> impl Iterator<Item = Node> + 's {
        let mut smallest = (0, order.len());
        let mut start = 0;
        while start < order.len() {
            let class = order[start].1;
            let end = start + order[start..].iter().take_while(|e| e.1 == class).count();
            if end - start < smallest.1 - smallest.0 {
                smallest = (start, end);
            }
            start = end;
        }
        let mut rest = vec![0u64; self.words];
        for (i, &(u, _)) in order.iter().enumerate() {
            if i < smallest.0 || i >= smallest.1 {
                set(&mut rest, u);
            }
        }
        order[smallest.0..smallest.1]
            .iter()
            .map(move |&(v, _)| self.child(node, v, &rest))
    }

    /// Visits every family of exactly `target` members reachable from `node`;
    /// `visit` returns `false` to stop. Returns `false` if stopped early.
    pub fn grow_all(
        &self,
        mut node: Node,
        target: usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if !self.tick() {
            return false;
        }
        if node.chosen.len() == target {
            return visit(&node.chosen);
        }
        if !self.prune_failed(&mut node, target) {
            return true;
        }
        let order = self.colour_order(&node, &node.cand);
        let mut cand = node.cand.clone();
        for (pos, &(v, bound)) in order.iter().enumerate().rev() {
            if node.chosen.len() + bound < target {
                return true;
            }
            if node.chosen.len() + bound == target {
                for child in self.tight_children(&node, &order[..=pos]) {
                    if !self.grow_all(child, target, visit) {
                        return false;
                    }
                }
                return true;
            }
            clear(&mut cand, v);
            let child = self.child(&node, v, &cand);
            if !self.grow_all(child, target, visit) {
                return false;
            }
        }
        true
    }

    /// Lexicographically first family of exactly `target` members reachable
    /// from `node`.
    pub fn first_of_size(&self, node: Node, target: usize) -> Option<Vec<usize>> {
        if !self.tick() {
            return None;
        }
        if node.chosen.len() == target {
            return Some(node.chosen);
        }
        let need = target - node.chosen.len();
        let mut cand = node.cand.clone();
        while let Some(v) = first(&cand) {
            if self.cover_bound(&node, &cand, need - 1) < need {
                return None;
            }
            clear(&mut cand, v);
            let child = self.child(&node, v, &cand);
            if let Some(found) = self.first_of_size(child, target) {
                return Some(found);
            }
            if self.timed_out() {
                return None;
            }
        }
        None
    }

    /// Node with member 0 forced in.
    pub fn fixed_root(&self) -> Node {
        let mut root = self.root();
        clear(&mut root.cand, 0);
        let rest = root.cand.clone();
        self.child(&root, 0, &rest)
    }

    /// Largest family reachable from `start` that beats `incumbent`, or the
    /// incumbent itself.
    pub fn maximize(&self, start: Node, incumbent: Vec<usize>, parallel: bool) -> Vec<usize> {
        let best = Best {
            size: AtomicUsize::new(incumbent.len()),
            members: Mutex::new(incumbent),
        };
        if !parallel {
            self.grow_max(start, &best);
        } else if self.tick() {
            best.offer(&start.chosen);
            let order = self.colour_order(&start, &start.cand);
            (0..order.len()).into_par_iter().rev().for_each(|pos| {
                let (v, bound) = order[pos];
                if start.chosen.len() + bound <= best.size.load(Ordering::Relaxed) {
                    return;
                }
                let mut rest = vec![0u64; self.words];
                for &(u, _) in &order[..pos] {
                    set(&mut rest, u);
                }
                let child = self.child(&start, v, &rest);
                self.grow_max(child, &best);
            });
        }
        best.members.into_inner().expect("poisoned")
    }
}

fn triple_rows(table: &PairTable, predicate: Predicate, size: usize, words: usize) -> Vec<u64> {
    let forbidden = |a: usize, b: usize, c: usize| match predicate {
        Predicate::CoveringTriple => table.covering_pivot(a, b, c).is_some(),
        _ => table.is_3_cluster(a, b, c),
    };
    let hits: Vec<Vec<(usize, usize)>> = (0..size)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in a + 1..size {
                for c in b + 1..size {
                    if forbidden(a, b, c) {
                        out.push((b, c));
                    }
                }
            }
            out
        })
        .collect();
    let mut rows = vec![0u64; size * size * words];
    let mut mark = |u: usize, v: usize, w: usize| {
        let at = (u * size + v) * words;
        set(&mut rows[at..at + words], w);
    };
    for (a, list) in hits.into_iter().enumerate() {
        for (b, c) in list {
            mark(a, b, c);
            mark(b, a, c);
            mark(a, c, b);
            mark(c, a, b);
            mark(b, c, a);
            mark(c, b, a);
        }
    }
    rows
}
