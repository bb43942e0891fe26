use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Family, PairTable};
use crate::error::{Error, Result};
use crate::grassmann::Subspace;

/// Forbidden configuration a family must avoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    CoveringTriple,
    #[serde(rename = "3-cluster")]
    ThreeCluster,
    DCluster(usize),
}

impl Predicate {
    pub fn arity(self) -> usize {
        match self {
            Predicate::CoveringTriple | Predicate::ThreeCluster => 3,
            Predicate::DCluster(d) => d,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::CoveringTriple => write!(f, "covering-triple"),
            Predicate::ThreeCluster => write!(f, "3-cluster"),
            Predicate::DCluster(d) => write!(f, "{d}-cluster"),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "covering-triple" => Ok(Predicate::CoveringTriple),
            "3-cluster" => Ok(Predicate::ThreeCluster),
            _ => s
                .strip_suffix("-cluster")
                .and_then(|d| d.parse().ok())
                .filter(|&d| d >= 2)
                .map(Predicate::DCluster)
                .ok_or_else(|| Error::Parse(format!("unknown predicate {s:?}"))),
        }
    }
}

/// A forbidden tuple found in a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Members in family order.
    pub members: Vec<Subspace>,
    /// For covering triples, the member `A` with `A = (A∩B) ⊕ (A∩C)`.
    pub pivot: Option<Subspace>,
}

pub fn is_intersecting(fam: &Family) -> bool {
    let m = fam.members();
    (0..m.len()).all(|j| (0..j).all(|i| !m[i].is_skew(&m[j]).expect("same ambient")))
}

/// All lines (1-dimensional subspaces) contained in every member.
pub fn star_centers(fam: &Family) -> Result<Vec<Subspace>> {
    let mut it = fam.iter();
    let first = it.next().ok_or(Error::EmptyFamily)?;
    let mut common = first.clone();
    for s in it {
        if common.is_zero() {
            break;
        }
        common = common.intersect(s)?;
    }
    if common.is_zero() {
        return Ok(Vec::new());
    }
    let mut lines = common.subspaces_of_dim(1)?;
    lines.sort();
    Ok(lines)
}

pub fn is_star(fam: &Family) -> bool {
    star_centers(fam).is_ok_and(|c| !c.is_empty())
}

fn check_configuration(subspaces: &[&Subspace]) -> Result<()> {
    let first = subspaces[0];
    for s in &subspaces[1..] {
        if s.field() != first.field() || s.ambient_dim() != first.ambient_dim() {
            return Err(Error::MixedAmbient);
        }
        if s.dim() != first.dim() {
            return Err(Error::MixedDimension);
        }
    }
    for j in 0..subspaces.len() {
        for i in 0..j {
            if subspaces[i] == subspaces[j] {
                return Err(Error::NotDistinct);
            }
        }
    }
    Ok(())
}

fn covers_explicitly(a: &Subspace, b: &Subspace, c: &Subspace) -> Result<bool> {
    let ab = a.intersect(b)?;
    let ac = a.intersect(c)?;
    Ok(ab.dim() + ac.dim() == a.dim() && ab.is_skew(&ac)? && &ab.sum(&ac)? == a)
}

/// Ordered form fixes `a` as the pivot; the unordered form accepts any of
/// the three.
pub fn is_covering_triple(a: &Subspace, b: &Subspace, c: &Subspace, ordered: bool) -> Result<bool> {
    check_configuration(&[a, b, c])?;
    if ordered {
        covers_explicitly(a, b, c)
    } else {
        Ok(covers_explicitly(a, b, c)?
            || covers_explicitly(b, a, c)?
            || covers_explicitly(c, a, b)?)
    }
}

/// The first of `a`, `b`, `c` that is a covering pivot, if any.
pub fn covering_pivot(a: &Subspace, b: &Subspace, c: &Subspace) -> Result<Option<Subspace>> {
    check_configuration(&[a, b, c])?;
    for (p, x, y) in [(a, b, c), (b, a, c), (c, a, b)] {
        if covers_explicitly(p, x, y)? {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

pub fn is_3_cluster(a: &Subspace, b: &Subspace, c: &Subspace) -> Result<bool> {
    check_configuration(&[a, b, c])?;
    let meet = a.intersect(b)?.intersect(c)?;
    let join = a.sum(b)?.sum(c)?;
    Ok(meet.is_zero() && join.dim() <= 2 * a.dim())
}

pub fn is_d_cluster(subspaces: &[Subspace]) -> Result<bool> {
    if subspaces.len() < 2 {
        return Err(Error::BadArity(subspaces.len()));
    }
    let refs: Vec<&Subspace> = subspaces.iter().collect();
    check_configuration(&refs)?;
    let k = subspaces[0].dim();
    let mut meet = subspaces[0].clone();
    let mut join = subspaces[0].clone();
    for s in &subspaces[1..] {
        meet = meet.intersect(s)?;
        join = join.sum(s)?;
    }
    Ok(meet.is_zero() && join.dim() <= 2 * k)
}

/// Calls `visit` on every increasing `r`-subset of `0..n` in lexicographic
/// order until it returns `true`.
pub(crate) fn first_combination(
    n: usize,
    r: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if r > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if visit(&idx) {
            return Some(idx);
        }
        let i = (0..r).rev().find(|&i| idx[i] < n - r + i)?;
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lexicographically first forbidden tuple under the family order.
pub fn find_forbidden(fam: &Family, predicate: Predicate) -> Option<Witness> {
    let arity = predicate.arity();
    if fam.len() < arity || arity < 2 {
        return None;
    }
    let table = PairTable::new(fam.members());
    let hit = first_combination(fam.len(), arity, |t| match predicate {
        Predicate::CoveringTriple => table.covering_pivot(t[0], t[1], t[2]).is_some(),
        Predicate::ThreeCluster => table.is_3_cluster(t[0], t[1], t[2]),
        Predicate::DCluster(_) => table.is_d_cluster(t),
    })?;
    let pivot = match predicate {
        Predicate::CoveringTriple => table
            .covering_pivot(hit[0], hit[1], hit[2])
            .map(|p| fam.members()[p].clone()),
        _ => None,
    };
    Some(Witness {
        members: hit.iter().map(|&i| fam.members()[i].clone()).collect(),
        pivot,
    })
}
