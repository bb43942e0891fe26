//! Unpruned reference search: every subset of a small ground set is
//! generated and tested against forbidden tuples computed straight from
//! subspace arithmetic.

#![allow(dead_code)]

use clusterfree::families::{Family, Predicate};
use clusterfree::gfq::{make_field, FieldSpec};
use clusterfree::grassmann::Subspace;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn meet_all(s: &[&Subspace]) -> Subspace {
    s[1..]
        .iter()
        .fold(s[0].clone(), |acc, x| acc.intersect(x).unwrap())
}

fn join_all(s: &[&Subspace]) -> Subspace {
    s[1..]
        .iter()
        .fold(s[0].clone(), |acc, x| acc.sum(x).unwrap())
}

fn cluster(s: &[&Subspace]) -> bool {
    meet_all(s).is_zero() && join_all(s).dim() <= 2 * s[0].dim()
}

fn split_by(a: &Subspace, b: &Subspace, c: &Subspace) -> bool {
    let ab = a.intersect(b).unwrap();
    let ac = a.intersect(c).unwrap();
    ab.intersect(&ac).unwrap().is_zero() && &ab.sum(&ac).unwrap() == a
}

pub fn forbidden(s: &[&Subspace], predicate: Predicate) -> bool {
    match predicate {
        Predicate::CoveringTriple => {
            let (a, b, c) = (s[0], s[1], s[2]);
            cluster(s) && (split_by(a, b, c) || split_by(b, a, c) || split_by(c, a, b))
        }
        Predicate::ThreeCluster | Predicate::DCluster(_) => cluster(s),
    }
}

fn tuples(len: usize, r: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == r {
        out.push(prefix.clone());
        return;
    }
    let from = prefix.last().map_or(0, |&x| x + 1);
    for i in from..len {
        prefix.push(i);
        tuples(len, r, prefix, out);
        prefix.pop();
    }
}

/// Bitmasks of the forbidden tuples of `members`.
pub fn forbidden_masks(members: &[Subspace], predicate: Predicate) -> Vec<u32> {
    let mut all = Vec::new();
    tuples(members.len(), predicate.arity(), &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|t| {
            let s: Vec<&Subspace> = t.iter().map(|&i| &members[i]).collect();
            forbidden(&s, predicate)
        })
        .map(|t| t.iter().fold(0u32, |m, &i| m | 1 << i))
        .collect()
}

pub struct Oracle {
    pub optimum: usize,
    /// Index sets of every optimum family, in lexicographic order.
    pub maxima: Vec<Vec<usize>>,
}

/// Plain include/exclude recursion over all `2^len` subsets.
pub fn brute_force(members: &[Subspace], predicate: Predicate) -> Oracle {
    assert!(members.len() <= 20, "ground set too large for the oracle");
    let masks = forbidden_masks(members, predicate);
    let mut best = 0;
    let mut found: Vec<u32> = Vec::new();
    fn walk(i: usize, len: usize, set: u32, masks: &[u32], best: &mut usize, found: &mut Vec<u32>) {
        if i == len {
            if masks.iter().any(|&m| m & !set == 0) {
                return;
            }
            let size = set.count_ones() as usize;
            if size > *best {
                *best = size;
                found.clear();
            }
            if size == *best {
                found.push(set);
            }
            return;
        }
        walk(i + 1, len, set | 1 << i, masks, best, found);
        walk(i + 1, len, set, masks, best, found);
    }
    walk(0, members.len(), 0, &masks, &mut best, &mut found);
    let mut maxima: Vec<Vec<usize>> = found
        .into_iter()
        .map(|s| (0..members.len()).filter(|&i| s >> i & 1 == 1).collect())
        .collect();
    maxima.sort();
    Oracle {
        optimum: best,
        maxima,
    }
}

pub fn pick(ground: &Family, idx: &[usize]) -> Family {
    let members = idx.iter().map(|&i| ground.members()[i].clone()).collect();
    Family::new(
        ground.field(),
        ground.ambient_dim(),
        ground.member_dim(),
        members,
    )
    .unwrap()
}

fn sample(field: &FieldSpec, n: usize, k: usize, size: usize, seed: u64) -> Family {
    let mut all = Family::full(field, n, k).unwrap().members().to_vec();
    all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    all.truncate(size);
    Family::new(field, n, k, all).unwrap()
}

/// Named ground sets of at most 15 subspaces.
pub fn small_ground_sets() -> Vec<(String, Family)> {
    let f2 = make_field(2).unwrap();
    let f3 = make_field(3).unwrap();
    let mut out = vec![
        ("Gr(2,3,2)".to_string(), Family::full(&f2, 3, 2).unwrap()),
        ("Gr(3,3,2)".to_string(), Family::full(&f3, 3, 2).unwrap()),
        ("Gr(2,4,3)".to_string(), Family::full(&f2, 4, 3).unwrap()),
        (
            "Gr(2,5,2) through e1".to_string(),
            Family::star(&f2, 5, 2, &Subspace::coordinate(&f2, 5, &[0])).unwrap(),
        ),
        (
            "Gr(2,4,2) through e1+e2".to_string(),
            Family::star(
                &f2,
                4,
                2,
                &Subspace::from_vectors(&f2, 4, &[[1u8, 1, 0, 0]]).unwrap(),
            )
            .unwrap(),
        ),
    ];
    for seed in 1..=3 {
        out.push((
            format!("15 of Gr(2,4,2) seed {seed}"),
            sample(&f2, 4, 2, 15, seed),
        ));
        out.push((
            format!("15 of Gr(2,5,2) seed {seed}"),
            sample(&f2, 5, 2, 15, seed),
        ));
        out.push((
            format!("14 of Gr(2,6,3) seed {seed}"),
            sample(&f2, 6, 3, 14, seed),
        ));
    }
    out.push((
        "13 of Gr(3,4,2) seed 1".to_string(),
        sample(&f3, 4, 2, 13, 1),
    ));
    out
}

pub const PREDICATES: [Predicate; 5] = [
    Predicate::CoveringTriple,
    Predicate::ThreeCluster,
    Predicate::DCluster(2),
    Predicate::DCluster(3),
    Predicate::DCluster(4),
];
