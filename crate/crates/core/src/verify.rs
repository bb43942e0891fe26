//! Property suites over small parameter ranges, each producing a
//! [`VerifyReport`] of individual exact checks.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{
    check_common_form, check_layer_inequality, check_phi_lemma, covering_pivot, find_forbidden,
    phi_context, star_centers, Family, PhiContext, Predicate,
};
use crate::gfq::{make_field, FieldSpec, FqMatrix};
use crate::grassmann::{enum_grassmannian, enum_skew_to, Subspace};
use crate::qarith::{
    big_pow, gauss_binom, star_layer_size, verify_pascal, verify_star_identity, BigNat,
};
use crate::search::{
    build_inclusion_graph, inclusion_degrees, is_valid_matching, one_to_m_matching, partition_y,
    search_max, MatchOutcome, SearchOptions,
};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Counts,
    Identities,
    StarStructure,
    Phi,
    Matching,
    CrossIntersecting,
    Layers,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Counts,
        Suite::Identities,
        Suite::StarStructure,
        Suite::Phi,
        Suite::Matching,
        Suite::CrossIntersecting,
        Suite::Layers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Identities => "identities",
            Suite::StarStructure => "star-structure",
            Suite::Phi => "phi",
            Suite::Matching => "matching",
            Suite::CrossIntersecting => "cross-intersecting",
            Suite::Layers => "layers",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Outcome of one suite. `wall_time` is left out of the JSON form so that
/// reports can be compared byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerifyReport {
    pub fn new(suite: Suite) -> Self {
        VerifyReport {
            suite,
            records: Vec::new(),
            pass: true,
            wall_time: Duration::ZERO,
        }
    }

    pub fn record(
        &mut self,
        id: &str,
        params: impl fmt::Display,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        pass: bool,
    ) {
        self.pass &= pass;
        self.records.push(CheckRecord {
            id: id.to_string(),
            params: params.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    pub fn check_eq<T: fmt::Display + PartialEq>(
        &mut self,
        id: &str,
        params: impl fmt::Display,
        expected: T,
        actual: T,
    ) {
        let pass = expected == actual;
        self.record(id, params, expected, actual, pass);
    }

    /// `ok` out of `total` sub-checks passed.
    fn tally(&mut self, id: &str, params: impl fmt::Display, ok: usize, total: usize) {
        self.record(
            id,
            params,
            format!("{total}/{total}"),
            format!("{ok}/{total}"),
            ok == total,
        );
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// Parameter overrides; `None` picks the suite's default range.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub qs: Option<Vec<u32>>,
    pub n_max: Option<usize>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            qs: None,
            n_max: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl VerifyOptions {
    fn qs_or(&self, default: &[u32]) -> Vec<u32> {
        self.qs.clone().unwrap_or_else(|| default.to_vec())
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut report = VerifyReport::new(suite);
    match suite {
        Suite::Counts => counts(&mut report, opts)?,
        Suite::Identities => identities(&mut report, opts)?,
        Suite::StarStructure => star_structure(&mut report, opts)?,
        Suite::Phi => phi(&mut report, opts)?,
        Suite::Matching => matching(&mut report, opts)?,
        Suite::CrossIntersecting => cross_intersecting(&mut report, opts)?,
        Suite::Layers => layers(&mut report, opts)?,
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

fn random_subspace(
    field: &FieldSpec,
    n: usize,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Subspace> {
    let q = field.q();
    loop {
        let data = (0..m * n).map(|_| rng.gen_range(0..q) as u8).collect();
        let s = Subspace::row_space(&FqMatrix::new(field.clone(), m, n, data)?);
        if s.dim() == m {
            return Ok(s);
        }
    }
}

fn counts(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n_max = opts.n_max.unwrap_or(5);
    for q in opts.qs_or(&[2, 3]) {
        let field = make_field(q)?;
        let qq = u64::from(q);
        for n in 0..=n_max {
            for k in 0..=n {
                let got = enum_grassmannian(&field, n, k)?.count();
                report.check_eq(
                    "grassmannian-count",
                    format!("q={q} n={n} k={k}"),
                    gauss_binom(n, k, qq)?,
                    BigNat::from(got),
                );
            }
            for m in 0..=n {
                let w = random_subspace(&field, n, m, &mut rng)?;
                for i in 0..=n - m {
                    let got = enum_skew_to(&w, i)?.count();
                    let id = if i == n - m {
                        "complement-count"
                    } else {
                        "skew-count"
                    };
                    let expected = if i == n - m {
                        big_pow(qq, m * (n - m))
                    } else {
                        big_pow(qq, m * i) * gauss_binom(n - m, i, qq)?
                    };
                    report.check_eq(
                        id,
                        format!("q={q} n={n} m={m} i={i}"),
                        expected,
                        BigNat::from(got),
                    );
                }
            }
        }
    }
    Ok(())
}

fn identities(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    let n_max = opts.n_max.unwrap_or(20);
    for n in 2..=n_max {
        for k in 1..n {
            report.check_eq(
                "q-pascal",
                format!("n={n} k={k}"),
                true,
                verify_pascal(n, k)?,
            );
        }
    }
    for q in opts.qs_or(&[2, 3, 4, 5, 7, 8, 9]) {
        for n in 4..=n_max {
            for k in 2..=n / 2 {
                let id = verify_star_identity(n, k, u64::from(q))?;
                report.check_eq(
                    "star-count",
                    format!("q={q} n={n} k={k}"),
                    id.star_size,
                    id.layer_sum,
                );
            }
        }
    }
    Ok(())
}

fn structure_params(opts: &VerifyOptions) -> Vec<(u32, usize, usize)> {
    match opts.n_max {
        None => vec![(2, 5, 2), (2, 6, 2), (2, 6, 3)],
        Some(n_max) => {
            let mut out = Vec::new();
            for q in opts.qs_or(&[2]) {
                for n in 4..=n_max {
                    for k in 2..=n / 2 {
                        out.push((q, n, k));
                    }
                }
            }
            out
        }
    }
}

fn star_structure(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    for (q, n, k) in structure_params(opts) {
        let field = make_field(q)?;
        let qq = u64::from(q);
        let params = format!("q={q} n={n} k={k}");
        let e1 = Subspace::coordinate(&field, n, &[0]);
        let star = Family::star(&field, n, k, &e1)?;
        report.check_eq(
            "star-size",
            &params,
            gauss_binom(n - 1, k - 1, qq)?,
            BigNat::from(star.len()),
        );
        report.check_eq(
            "star-centers",
            &params,
            "<e1>".to_string(),
            match star_centers(&star)?.as_slice() {
                [c] if *c == e1 => "<e1>".to_string(),
                other => format!("{} centers", other.len()),
            },
        );
        let axes: Vec<usize> = (0..k).collect();
        let a = Subspace::coordinate(&field, n, &axes);
        for i in 1..=k {
            let got = star
                .iter()
                .filter(|b| a.intersect_dim(b).expect("same ambient") == i)
                .count();
            report.check_eq(
                "star-layer",
                format!("{params} i={i}"),
                star_layer_size(n, k, i, qq)?,
                BigNat::from(got),
            );
        }
        for pred in [Predicate::CoveringTriple, Predicate::ThreeCluster] {
            report.check_eq(
                "star-is-free",
                format!("{params} predicate={pred}"),
                "none".to_string(),
                match find_forbidden(&star, pred) {
                    None => "none".to_string(),
                    Some(w) => format!("{:?}", w.members),
                },
            );
        }
    }
    Ok(())
}

/// A named family used by the claiming-map suites.
pub struct Sample {
    pub name: String,
    pub family: Family,
}

fn greedy_free(field: &FieldSpec, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Family> {
    let mut pool: Vec<Subspace> = enum_grassmannian(field, n, k)?.collect();
    pool.shuffle(rng);
    let mut chosen: Vec<Subspace> = Vec::new();
    for c in pool {
        let mut ok = true;
        'pairs: for (x, a) in chosen.iter().enumerate() {
            for b in &chosen[x + 1..] {
                if covering_pivot(a, b, &c)?.is_some() {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            chosen.push(c);
        }
    }
    Family::new(field, n, k, chosen)
}

fn random_subfamily(fam: &Family, rng: &mut ChaCha8Rng) -> Family {
    let keep: Vec<bool> = (0..fam.len()).map(|_| rng.gen_bool(0.5)).collect();
    let mut i = 0;
    fam.filter(|_| {
        i += 1;
        keep[i - 1]
    })
}

/// Covering-triple-free families in the range `2 <= k <= n/2`: stars, random
/// halves of stars, random greedy maximal families and a search optimum.
pub fn sample_families(seed: u64) -> Result<Vec<Sample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |name: String, family: Family| out.push(Sample { name, family });
    for (q, n, k) in [(2, 4, 2), (2, 5, 2), (2, 6, 3), (3, 4, 2)] {
        let field = make_field(q)?;
        let star = Family::star(&field, n, k, &Subspace::coordinate(&field, n, &[0]))?;
        push(format!("star q={q} n={n} k={k}"), star.clone());
        push(
            format!("half-star q={q} n={n} k={k}"),
            random_subfamily(&star, &mut rng),
        );
    }
    for (q, n, k) in [(2, 4, 2), (2, 5, 2), (2, 6, 2), (3, 4, 2)] {
        let field = make_field(q)?;
        push(
            format!("greedy q={q} n={n} k={k}"),
            greedy_free(&field, n, k, &mut rng)?,
        );
    }
    let field = make_field(2)?;
    let opt = search_max(
        &field,
        4,
        2,
        Predicate::CoveringTriple,
        SearchOptions::default(),
    )?;
    push("optimum q=2 n=4 k=2".to_string(), opt.witness);
    Ok(out)
}

/// Every member for small families; otherwise a few spread-out members and
/// the first member that is skew to another.
fn pivots(fam: &Family) -> Vec<Subspace> {
    let m = fam.members();
    if m.len() <= 16 {
        return m.to_vec();
    }
    let mut idx = vec![0, m.len() / 2, m.len() - 1];
    if let Some(b) =
        (0..m.len()).find(|&b| m.iter().any(|c| c.is_skew(&m[b]).expect("same ambient")))
    {
        idx.push(b);
    }
    idx.sort_unstable();
    idx.dedup();
    idx.into_iter().map(|i| m[i].clone()).collect()
}

fn phi(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    for sample in sample_families(opts.seed)? {
        let fam = &sample.family;
        let k = fam.member_dim();
        report.check_eq(
            "sample-is-covering-triple-free",
            &sample.name,
            true,
            find_forbidden(fam, Predicate::CoveringTriple).is_none(),
        );
        let pivots = pivots(fam);
        let mut lemma_ok = 0;
        let (mut form_ok, mut form_total) = (0, 0);
        for a in &pivots {
            let ctx = phi_context(fam, a)?;
            lemma_ok += usize::from(check_phi_lemma(&ctx).all());
            for e in ctx.claimed_subspaces() {
                let edim = e.dim();
                if 2 * edim < k || edim + 1 > k || !e.is_skew(a)? {
                    continue;
                }
                let claimers = ctx.phi_inverse_indices(&e);
                if claimers.iter().any(|&b| ctx.is_isolated(b)) {
                    continue;
                }
                let mut ds = vec![e.clone()];
                ds.extend(e.subspaces_of_dim(k - edim)?);
                for d in ds {
                    form_total += 1;
                    form_ok += usize::from(matches!(check_common_form(&ctx, &e, &d), Ok(Some(_))));
                }
            }
        }
        report.tally("phi-lemma", &sample.name, lemma_ok, pivots.len());
        report.tally("common-form", &sample.name, form_ok, form_total);
    }
    Ok(())
}

fn matching_multiplicity(q: u64, k: usize, i: usize) -> usize {
    if 2 * i == k {
        1
    } else {
        q.pow((k - i) as u32) as usize
    }
}

fn matching(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    let params: Vec<(u32, usize, usize, usize)> = match opts.n_max {
        None => vec![
            (2, 4, 2, 1),
            (2, 5, 2, 1),
            (2, 6, 2, 1),
            (2, 6, 3, 1),
            (2, 7, 3, 1),
            (3, 4, 2, 1),
            (3, 5, 2, 1),
        ],
        Some(n_max) => {
            let mut out = Vec::new();
            for q in opts.qs_or(&[2]) {
                for n in 4..=n_max {
                    for k in 2..=n / 2 {
                        for i in 1..=k / 2 {
                            out.push((q, n, k, i));
                        }
                    }
                }
            }
            out
        }
    };
    for (q, n, k, i) in params {
        let field = make_field(q)?;
        let qq = u64::from(q);
        let p = format!("q={q} n={n} k={k} i={i}");
        let axes: Vec<usize> = (0..k).collect();
        let a = Subspace::coordinate(&field, n, &axes);
        let g = build_inclusion_graph(&field, n, k, i, &a)?;
        report.check_eq(
            "x-count",
            &p,
            big_pow(qq, k * i) * gauss_binom(n - k, i, qq)?,
            BigNat::from(g.x_len()),
        );
        report.check_eq(
            "y-count",
            &p,
            big_pow(qq, k * (k - i)) * gauss_binom(n - k, k - i, qq)?,
            BigNat::from(g.y_len()),
        );
        let (deg_d, deg_e) = inclusion_degrees(n, k, i, qq);
        let xdeg: Vec<usize> = g.adjacency().iter().map(Vec::len).collect();
        report.check_eq("x-degree", &p, deg_d.to_string(), uniform(&xdeg));
        report.check_eq("y-degree", &p, deg_e.to_string(), uniform(&g.y_degrees()));
        let m = matching_multiplicity(qq, k, i);
        match one_to_m_matching(&g, m)? {
            MatchOutcome::Matched(images) => {
                report.check_eq(
                    "matching",
                    format!("{p} m={m}"),
                    true,
                    is_valid_matching(&g, m, &images),
                );
                let parts = partition_y(&g, m, &images)?;
                let covered: usize = parts.iter().map(Vec::len).sum();
                let sound = parts.iter().enumerate().all(|(x, part)| {
                    part.len() >= m
                        && part.iter().all(|&y| {
                            g.y_vertices[y]
                                .contains(&g.x_vertices[x])
                                .expect("same ambient")
                        })
                });
                report.check_eq(
                    "partition",
                    format!("{p} m={m}"),
                    format!("{} sound", g.y_len()),
                    format!("{covered} {}", if sound { "sound" } else { "unsound" }),
                );
            }
            MatchOutcome::Deficient(s) => {
                report.record(
                    "matching",
                    format!("{p} m={m}"),
                    "matching",
                    format!("deficient set of {}", s.len()),
                    false,
                );
            }
        }
    }
    Ok(())
}

fn uniform(values: &[usize]) -> String {
    match values.first() {
        Some(&v) if values.iter().all(|&x| x == v) => v.to_string(),
        Some(_) => "mixed".to_string(),
        None => "empty".to_string(),
    }
}

fn is_intersecting_union(a: &[Subspace], b: &[Subspace]) -> bool {
    let all: Vec<&Subspace> = a.iter().chain(b).collect();
    all.iter().enumerate().all(|(x, u)| {
        all[x + 1..]
            .iter()
            .all(|w| !u.is_skew(w).expect("same ambient"))
    })
}

fn cross_intersecting(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    let params: Vec<(u32, usize, usize)> = match opts.n_max {
        None => vec![(2, 5, 2), (2, 6, 2)],
        Some(n_max) => {
            let mut out = Vec::new();
            for q in opts.qs_or(&[2]) {
                for n in 2..=n_max {
                    for k in 1..=n / 2 {
                        out.push((q, n, k));
                    }
                }
            }
            out
        }
    };
    for (q, n, k) in params {
        let field = make_field(q)?;
        let qq = u64::from(q);
        let e1 = Subspace::coordinate(&field, n, &[0]);
        let alpha = if 2 * k == n {
            BigNat::from(1u8)
        } else {
            big_pow(qq, n - k)
        };
        let bound_k = gauss_binom(n - 1, k - 1, qq)?;
        let bound_nk = gauss_binom(n - 1, k, qq)?;
        let upper: Vec<Subspace> = enum_grassmannian(&field, n, n - k)?.collect();
        let meeting_all = |gk: &[Subspace]| -> Vec<Subspace> {
            upper
                .iter()
                .filter(|u| gk.iter().all(|b| !u.is_skew(b).expect("same ambient")))
                .cloned()
                .collect()
        };

        let star_k: Vec<Subspace> = Family::star(&field, n, k, &e1)?.members().to_vec();
        let star_nk: Vec<Subspace> = Family::star(&field, n, n - k, &e1)?.members().to_vec();
        let hyper: Vec<usize> = (0..n - 1).collect();
        let h = Subspace::coordinate(&field, n, &hyper);
        let sub_star: Vec<Subspace> = star_k
            .iter()
            .filter(|b| h.contains(b).expect("same ambient"))
            .cloned()
            .collect();

        let constructions: Vec<(&str, Vec<Subspace>, Vec<Subspace>)> = vec![
            ("two-stars", star_k.clone(), star_nk),
            ("star-and-all-meeting", star_k.clone(), meeting_all(&star_k)),
            (
                "hyperplane-star-and-all-meeting",
                sub_star.clone(),
                meeting_all(&sub_star),
            ),
        ];
        for (name, gk, gnk) in constructions {
            let p = format!(
                "q={q} n={n} k={k} {name} |G_k|={} |G_n-k|={}",
                gk.len(),
                gnk.len()
            );
            report.check_eq(
                "cross-intersecting",
                &p,
                true,
                is_intersecting_union(&gk, &gnk),
            );
            let lhs = &alpha * BigNat::from(gk.len()) + BigNat::from(gnk.len());
            let rhs = &alpha * &bound_k + &bound_nk;
            report.record("ekr-inequality", &p, format!("<= {rhs}"), &lhs, lhs <= rhs);
            if lhs == rhs {
                let size = BigNat::from(gnk.len());
                report.record(
                    "ekr-equality",
                    &p,
                    format!(">= {bound_nk}"),
                    &size,
                    size >= bound_nk,
                );
            }
        }
    }
    Ok(())
}

/// `|{(B, D)}|` pairs with `B` in layer `i`, `D` a claimed subspace of
/// dimension `dim` skew to the pivot.
fn claim_pairs(ctx: &PhiContext, layer: usize, dim: usize) -> usize {
    let a = ctx.pivot();
    (0..ctx.family().len())
        .filter(|&b| ctx.is_isolated(b) || ctx.layer_of(b) == Some(layer))
        .map(|b| {
            ctx.claims_of_dim(b, dim)
                .iter()
                .filter(|d| d.is_skew(a).expect("same ambient"))
                .count()
        })
        .sum()
}

fn layers(report: &mut VerifyReport, opts: &VerifyOptions) -> Result<()> {
    for sample in sample_families(opts.seed)? {
        let fam = &sample.family;
        let (n, k) = (fam.ambient_dim(), fam.member_dim());
        let q = u64::from(fam.field().q());
        let field = fam.field().clone();
        let pivots = pivots(fam);
        let mut tallies = [(0usize, 0usize); 4];
        let mut bump = |slot: usize, ok: bool| {
            tallies[slot].0 += usize::from(ok);
            tallies[slot].1 += 1;
        };
        for a in &pivots {
            let ctx = phi_context(fam, a)?;
            for i in 1..=k / 2 {
                let ineq = check_layer_inequality(&ctx, i)?;
                bump(0, ineq.holds);

                let s = if 2 * i == k {
                    2 * claim_pairs(&ctx, i, i)
                } else {
                    claim_pairs(&ctx, i, k - i) + claim_pairs(&ctx, k - i, i)
                };
                let s = BigNat::from(s);
                bump(1, s >= BigNat::from(ineq.lhs) * big_pow(q, i * (k - i)));

                let g = build_inclusion_graph(&field, n, k, i, a)?;
                let inv = |d: &Subspace| ctx.phi_inverse_indices(d).len();
                let sum_x: usize = g.x_vertices.iter().map(inv).sum();
                let sum_y: usize = g.y_vertices.iter().map(inv).sum();
                let cap = gauss_binom(k - 1, i, q)? * BigNat::from(g.x_len())
                    + gauss_binom(k - 1, i - 1, q)? * BigNat::from(g.y_len());
                let total = BigNat::from(sum_x + sum_y);
                bump(2, total == s && total <= cap);

                let m = matching_multiplicity(q, k, i);
                let MatchOutcome::Matched(images) = one_to_m_matching(&g, m)? else {
                    bump(3, false);
                    continue;
                };
                let parts = partition_y(&g, m, &images)?;
                let top = gauss_binom(k - 1, i, q)?;
                let side = gauss_binom(k - 1, i - 1, q)?;
                for (x, part) in parts.iter().enumerate() {
                    let d_inv = inv(&g.x_vertices[x]);
                    let lhs = BigNat::from(
                        d_inv + part.iter().map(|&y| inv(&g.y_vertices[y])).sum::<usize>(),
                    );
                    let rhs = &top + BigNat::from(part.len()) * &side;
                    let ok = lhs <= rhs && (lhs != rhs || BigNat::from(d_inv) >= top);
                    bump(3, ok);
                }
            }
        }
        report.tally("layer-inequality", &sample.name, tallies[0].0, tallies[0].1);
        report.tally(
            "double-count-lower",
            &sample.name,
            tallies[1].0,
            tallies[1].1,
        );
        report.tally(
            "double-count-upper",
            &sample.name,
            tallies[2].0,
            tallies[2].1,
        );
        report.tally(
            "phi-inverse-pairing",
            &sample.name,
            tallies[3].0,
            tallies[3].1,
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn report_pass_flag() {
        let mut r = VerifyReport::new(Suite::Counts);
        r.check_eq("a", "x", 1, 1);
        assert!(r.pass);
        r.check_eq("b", "x", 1, 2);
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn small_counts_suite() {
        let opts = VerifyOptions {
            qs: Some(vec![2]),
            n_max: Some(3),
            ..Default::default()
        };
        let r = run_suite(Suite::Counts, &opts).unwrap();
        assert!(r.pass, "{:?}", r.failures().collect::<Vec<_>>());
    }
}
