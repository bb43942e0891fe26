//! Exact extremal search over Grassmannians and the one-to-`m` matching on
//! inclusion graphs.

mod bnb;
mod matching;

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{find_forbidden, is_star, Family, PairTable, Predicate};
use crate::gfq::FieldSpec;
use crate::grassmann::Subspace;
use crate::qarith::{gauss_binom, BigNat};

use bnb::Engine;
pub use matching::{
    build_inclusion_graph, inclusion_degrees, is_deficient, is_valid_matching, one_to_m_matching,
    partition_y, BipartiteGraph, MatchOutcome,
};

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    /// Force the first ground-set member into the family. Only sound when
    /// the ground set is a whole Grassmannian.
    pub fix_first: bool,
    pub time_limit: Option<Duration>,
    pub parallel: bool,
}

/// Outcome of a maximum search. `wall_time` is not serialized so that JSON
/// output stays byte-identical across runs.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub predicate: Predicate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub ground_size: usize,
    pub optimum: usize,
    #[serde(serialize_with = "family_rows")]
    pub witness: Family,
    #[serde(serialize_with = "decimal")]
    pub star_bound: BigNat,
    pub nodes_explored: u64,
    pub optimality_proved: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_maxima_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star_maxima_count: Option<usize>,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn family_rows<S: Serializer>(fam: &Family, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Vec<u8>>> = fam.iter().map(Subspace::rows).collect();
    rows.serialize(s)
}

fn decimal<S: Serializer>(x: &BigNat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A maximum family found by [`enumerate_maxima`].
#[derive(Debug, Clone)]
pub struct Maximum {
    pub family: Family,
    pub is_star: bool,
}

#[derive(Debug, Clone)]
pub struct Maxima {
    pub families: Vec<Maximum>,
    pub nodes_explored: u64,
    /// False if the time limit cut the enumeration short.
    pub complete: bool,
}

impl Maxima {
    pub fn star_count(&self) -> usize {
        self.families.iter().filter(|m| m.is_star).count()
    }
}

fn check_predicate(predicate: Predicate) -> Result<()> {
    match predicate {
        Predicate::DCluster(d) if d < 2 => Err(Error::BadArity(d)),
        _ => Ok(()),
    }
}

fn pick(ground: &Family, idx: &[usize]) -> Family {
    let members = idx.iter().map(|&i| ground.members()[i].clone()).collect();
    Family::new(
        ground.field(),
        ground.ambient_dim(),
        ground.member_dim(),
        members,
    )
    .expect("ground-set members")
}

fn post_check(fam: &Family, predicate: Predicate) {
    assert!(
        find_forbidden(fam, predicate).is_none(),
        "search produced a family containing a forbidden {predicate}"
    );
}

/// Maximum `predicate`-free subfamily of `ground`, starting from `incumbent`
/// (which must itself be a predicate-free subfamily of `ground`).
pub fn search_ground(
    ground: &Family,
    predicate: Predicate,
    options: SearchOptions,
    incumbent: Option<&Family>,
) -> Result<SearchReport> {
    check_predicate(predicate)?;
    let start = Instant::now();
    let (n, k) = (ground.ambient_dim(), ground.member_dim());
    let q = ground.field().q();
    let mut seed = Vec::new();
    if let Some(inc) = incumbent {
        for s in inc.iter() {
            seed.push(
                ground.position(s).ok_or_else(|| {
                    Error::BadArgs("incumbent is not inside the ground set".into())
                })?,
            );
        }
        if find_forbidden(inc, predicate).is_some() {
            return Err(Error::BadArgs(format!("incumbent contains a {predicate}")));
        }
    }
    let table = PairTable::new(ground.members());
    let engine = Engine::new(&table, predicate, options.time_limit)?;
    let root = if options.fix_first && !ground.is_empty() {
        engine.fixed_root()
    } else {
        engine.root()
    };
    let best = engine.maximize(root, seed, options.parallel);
    let proved = !engine.timed_out();
    let mut witness = best;
    if proved && !witness.is_empty() {
        // smallest witness in canonical order among all optima
        if let Some(f) = engine.first_of_size(engine.root(), witness.len()) {
            witness = f;
        }
    }
    let proved = proved && !engine.timed_out();
    let witness = pick(ground, &witness);
    post_check(&witness, predicate);
    Ok(SearchReport {
        q,
        n,
        k,
        predicate,
        d: match predicate {
            Predicate::DCluster(d) => Some(d),
            _ => None,
        },
        ground_size: ground.len(),
        optimum: witness.len(),
        witness,
        star_bound: star_bound(n, k, q as u64),
        nodes_explored: engine.nodes(),
        optimality_proved: proved,
        all_maxima_count: None,
        star_maxima_count: None,
        wall_time: start.elapsed(),
    })
}

fn star_bound(n: usize, k: usize, q: u64) -> BigNat {
    if k == 0 || n == 0 {
        return BigNat::from(0u8);
    }
    gauss_binom(n - 1, k - 1, q).expect("k <= n")
}

/// Maximum `predicate`-free family in `Gr(F_q, n, k)`, seeded with the star
/// at `⟨e1⟩`.
pub fn search_max(
    field: &FieldSpec,
    n: usize,
    k: usize,
    predicate: Predicate,
    options: SearchOptions,
) -> Result<SearchReport> {
    if k == 0 || k > n {
        return Err(Error::BadDimension(format!(
            "need 1 <= k <= n (n={n}, k={k})"
        )));
    }
    let ground = Family::full(field, n, k)?;
    let star = Family::star(field, n, k, &Subspace::coordinate(field, n, &[0]))?;
    search_ground(&ground, predicate, options, Some(&star))
}

/// Every `predicate`-free subfamily of `ground` with exactly `optimum`
/// members, in lexicographic order of member indices.
pub fn enumerate_maxima(
    ground: &Family,
    predicate: Predicate,
    optimum: usize,
    time_limit: Option<Duration>,
) -> Result<Maxima> {
    check_predicate(predicate)?;
    let table = PairTable::new(ground.members());
    let engine = Engine::new(&table, predicate, time_limit)?;
    let mut families = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let complete = engine.grow_all(engine.root(), optimum, &mut |f| {
        let mut f = f.to_vec();
        f.sort_unstable();
        found.push(f);
        true
    }) && !engine.timed_out();
    found.sort();
    for f in found {
        let family = pick(ground, &f);
        post_check(&family, predicate);
        let is_star = is_star(&family);
        families.push(Maximum { family, is_star });
    }
    Ok(Maxima {
        families,
        nodes_explored: engine.nodes(),
        complete,
    })
}

/// [`search_max`] followed by [`enumerate_maxima`] at the optimum found.
pub fn search_all_maxima(
    field: &FieldSpec,
    n: usize,
    k: usize,
    predicate: Predicate,
    options: SearchOptions,
) -> Result<(SearchReport, Maxima)> {
    let start = Instant::now();
    let mut report = search_max(field, n, k, predicate, options)?;
    let ground = Family::full(field, n, k)?;
    let remaining = options
        .time_limit
        .map(|t| t.saturating_sub(start.elapsed()));
    let maxima = enumerate_maxima(&ground, predicate, report.optimum, remaining)?;
    report.nodes_explored += maxima.nodes_explored;
    report.optimality_proved &= maxima.complete;
    report.all_maxima_count = Some(maxima.families.len());
    report.star_maxima_count = Some(maxima.star_count());
    report.wall_time = start.elapsed();
    Ok((report, maxima))
}
