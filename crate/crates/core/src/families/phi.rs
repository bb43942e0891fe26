use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use super::{find_forbidden, Family, PairTable, Predicate};
use crate::error::{Error, Result};
use crate::grassmann::Subspace;
use crate::qarith::{big_pow, gauss_binom, gauss_binom_or_zero, BigNat};

/// The claiming structure of a family relative to a pivot member `A`.
///
/// * isolated members (`F*`): skew to every other member;
/// * `layer(B)` is `dim(A∩B)` when `B` meets `A`, otherwise the smallest
///   nonzero `dim(B∩C)` over the other members `C`;
/// * the witness set `I_A(B)` is `{A}` when `B` meets `A`, otherwise the
///   members realizing that minimum;
/// * `B` claims every `(k - layer)`-dimensional `D ⊆ B` skew to some witness.
///   Isolated members claim every subspace of themselves; those claims are
///   only exposed per dimension.
pub struct PhiContext {
    family: Family,
    pivot: usize,
    table: PairTable,
    isolated: Vec<bool>,
    layer: Vec<Option<usize>>,
    witnesses: Vec<Vec<usize>>,
    claims: Vec<Vec<Subspace>>,
    claimers: HashMap<Subspace, Vec<usize>>,
    triple_free: OnceLock<bool>,
}

pub fn phi_context(fam: &Family, pivot: &Subspace) -> Result<PhiContext> {
    let a = fam.position(pivot).ok_or(Error::PivotNotMember)?;
    let m = fam.members();
    let k = fam.member_dim();
    let table = PairTable::new(m);
    let len = m.len();

    let isolated: Vec<bool> = (0..len)
        .map(|b| (0..len).all(|c| c == b || table.meet_dim(b, c) == 0))
        .collect();

    let mut layer = vec![None; len];
    let mut witnesses = vec![Vec::new(); len];
    let mut claims = vec![Vec::new(); len];
    let mut claimers: HashMap<Subspace, Vec<usize>> = HashMap::new();

    for b in 0..len {
        if isolated[b] {
            continue;
        }
        let (i, wit) = if table.meet_dim(a, b) > 0 {
            (table.meet_dim(a, b), vec![a])
        } else {
            let i = (0..len)
                .filter(|&c| c != b && table.meet_dim(b, c) > 0)
                .map(|c| table.meet_dim(b, c))
                .min()
                .expect("non-isolated member meets another member");
            let wit = (0..len)
                .filter(|&c| c != b && table.meet_dim(b, c) == i)
                .collect();
            (i, wit)
        };
        let claimed: Vec<Subspace> = m[b]
            .subspaces_of_dim(k - i)?
            .into_iter()
            .filter(|d| wit.iter().any(|&c| d.is_skew(&m[c]).expect("same ambient")))
            .collect();
        for d in &claimed {
            claimers.entry(d.clone()).or_default().push(b);
        }
        layer[b] = Some(i);
        witnesses[b] = wit;
        claims[b] = claimed;
    }

    Ok(PhiContext {
        family: fam.clone(),
        pivot: a,
        table,
        isolated,
        layer,
        witnesses,
        claims,
        claimers,
        triple_free: OnceLock::new(),
    })
}

impl PhiContext {
    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn pivot(&self) -> &Subspace {
        &self.family.members()[self.pivot]
    }

    pub fn pivot_index(&self) -> usize {
        self.pivot
    }

    pub fn is_isolated(&self, b: usize) -> bool {
        self.isolated[b]
    }

    /// Members skew to every other member.
    pub fn f_star(&self) -> Vec<Subspace> {
        self.indices_where(|b| self.isolated[b])
    }

    fn indices_where(&self, keep: impl Fn(usize) -> bool) -> Vec<Subspace> {
        (0..self.family.len())
            .filter(|&b| keep(b))
            .map(|b| self.family.members()[b].clone())
            .collect()
    }

    /// `i_A(B)`; `None` for isolated members.
    pub fn layer_of(&self, b: usize) -> Option<usize> {
        self.layer[b]
    }

    /// `I_A(B)` as member indices; empty for isolated members.
    pub fn witness_indices(&self, b: usize) -> &[usize] {
        &self.witnesses[b]
    }

    pub fn witness_set(&self, b: usize) -> Vec<Subspace> {
        self.witnesses[b]
            .iter()
            .map(|&c| self.family.members()[c].clone())
            .collect()
    }

    /// Claimed subspaces of a non-isolated member (empty for isolated ones;
    /// use [`PhiContext::claims_of_dim`] for those).
    pub fn claims(&self, b: usize) -> &[Subspace] {
        &self.claims[b]
    }

    pub fn claims_of_dim(&self, b: usize, d: usize) -> Vec<Subspace> {
        let member = &self.family.members()[b];
        if self.isolated[b] {
            if d > member.dim() {
                return Vec::new();
            }
            member.subspaces_of_dim(d).expect("d <= k")
        } else {
            self.claims[b]
                .iter()
                .filter(|s| s.dim() == d)
                .cloned()
                .collect()
        }
    }

    /// `|φ_A(B)|`.
    pub fn claim_count(&self, b: usize) -> BigNat {
        if self.isolated[b] {
            let q = u64::from(self.family.field().q());
            let k = self.family.member_dim();
            (0..=k).map(|d| gauss_binom(k, d, q).expect("d <= k")).sum()
        } else {
            BigNat::from(self.claims[b].len())
        }
    }

    pub fn claims_subspace(&self, b: usize, d: &Subspace) -> bool {
        if self.isolated[b] {
            self.family.members()[b].contains(d).unwrap_or(false)
        } else {
            self.claims[b].contains(d)
        }
    }

    /// Every subspace claimed by some non-isolated member.
    pub fn claimed_subspaces(&self) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = self.claimers.keys().cloned().collect();
        out.sort();
        out
    }

    /// Members claiming `d`, as sorted member indices.
    pub fn phi_inverse_indices(&self, d: &Subspace) -> Vec<usize> {
        let pivot = self.pivot();
        if d.ambient_dim() != pivot.ambient_dim() || !d.is_skew(pivot).unwrap_or(false) {
            return Vec::new();
        }
        let mut out: Vec<usize> = self.claimers.get(d).cloned().unwrap_or_default();
        for (b, member) in self.family.members().iter().enumerate() {
            if self.isolated[b] && member.contains(d).unwrap_or(false) {
                out.push(b);
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn table(&self) -> &PairTable {
        &self.table
    }

    pub fn is_covering_triple_free(&self) -> bool {
        *self
            .triple_free
            .get_or_init(|| find_forbidden(&self.family, Predicate::CoveringTriple).is_none())
    }
}

/// Members that claim `d`; empty unless `d` is skew to the pivot.
pub fn phi_inverse(ctx: &PhiContext, d: &Subspace) -> Vec<Subspace> {
    ctx.phi_inverse_indices(d)
        .into_iter()
        .map(|b| ctx.family.members()[b].clone())
        .collect()
}

/// Layers `1..=k`: layer `i` holds the members with `i_A(B) = i` together
/// with every isolated member.
pub fn layer_partition(ctx: &PhiContext) -> BTreeMap<usize, Vec<Subspace>> {
    let k = ctx.family.member_dim();
    (1..=k)
        .map(|i| {
            let layer = ctx.indices_where(|b| ctx.isolated[b] || ctx.layer[b] == Some(i));
            (i, layer)
        })
        .collect()
}

fn layer_len(ctx: &PhiContext, i: usize) -> usize {
    (0..ctx.family.len())
        .filter(|&b| ctx.isolated[b] || ctx.layer[b] == Some(i))
        .count()
}

/// Outcome of the per-member claiming properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiLemmaReport {
    /// `dim(B∩C) = i_A(B)` for every witness `C`.
    pub a: bool,
    /// `D` is claimed iff some witness `C` has `C∩D = 0` and `B = D ⊕ (B∩C)`.
    pub b: bool,
    /// For `B` skew to `A`: every member meeting `B` does so in at least
    /// `i_A(B)` dimensions, and `B = D ⊕ (B∩C)` whenever `D` is claimed and
    /// skew to `C`.
    pub c: bool,
    /// `|φ_A(B)| >= q^{i(k-i)}`, with equality only when all witnesses cut
    /// `B` in the same subspace.
    pub e: bool,
    /// Isolated members claim `[k, i]_q > q^{i(k-i)}` subspaces of each
    /// dimension `0 < i < k`.
    pub f: bool,
}

impl PhiLemmaReport {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.e && self.f
    }
}

fn direct_sum_is(b: &Subspace, d: &Subspace, part: &Subspace) -> bool {
    d.dim() + part.dim() == b.dim()
        && d.is_skew(part).expect("same ambient")
        && &d.sum(part).expect("same ambient") == b
}

pub fn check_phi_lemma(ctx: &PhiContext) -> PhiLemmaReport {
    let m = ctx.family.members();
    let k = ctx.family.member_dim();
    let q = u64::from(ctx.family.field().q());
    let t = ctx.table();
    let a_idx = ctx.pivot;
    let mut report = PhiLemmaReport {
        a: true,
        b: true,
        c: true,
        e: true,
        f: true,
    };

    for b in 0..m.len() {
        let member = &m[b];
        if ctx.isolated[b] {
            for i in 1..k {
                let count = BigNat::from(ctx.claims_of_dim(b, i).len());
                let expected = gauss_binom(k, i, q).expect("i < k");
                report.f &= count == expected && expected > big_pow(q, i * (k - i));
            }
            continue;
        }
        let i = ctx.layer[b].expect("non-isolated");
        let wit = &ctx.witnesses[b];

        report.a &= wit.iter().all(|&c| t.meet_dim(b, c) == i);

        let meets: Vec<&Subspace> = wit
            .iter()
            .map(|&c| if c == b { member } else { t.meet(b, c) })
            .collect();
        for d in member.subspaces_of_dim(k - i).expect("k - i <= k") {
            let characterized = wit.iter().zip(&meets).any(|(&c, bc)| {
                d.is_skew(&m[c]).expect("same ambient") && direct_sum_is(member, &d, bc)
            });
            report.b &= characterized == ctx.claims_subspace(b, &d);
        }
        if wit == &[a_idx] {
            let ba = meets[0];
            report.b &= ctx.claims[b].iter().all(|d| direct_sum_is(member, d, ba));
        }

        if t.meet_dim(a_idx, b) == 0 {
            for c in (0..m.len()).filter(|&c| c != b && t.meet_dim(b, c) > 0) {
                report.c &= t.meet_dim(b, c) >= i;
                let bc = t.meet(b, c);
                for d in &ctx.claims[b] {
                    if d.is_skew(&m[c]).expect("same ambient") {
                        report.c &= direct_sum_is(member, d, bc);
                    }
                }
            }
        }

        let floor = big_pow(q, i * (k - i));
        let count = BigNat::from(ctx.claims[b].len());
        report.e &= count >= floor;
        if count == floor {
            report.e &= meets.windows(2).all(|w| w[0] == w[1]);
        }
    }
    report
}

/// Looks for a member `C` with `B = D ⊕ (B∩C)` for every `B` claiming `D`.
///
/// Requires: `E` skew to the pivot, `k/2 <= dim E <= k-1`, `D = E` or `D` a
/// `(k - dim E)`-subspace of `E`, a covering-triple-free family, and a
/// nonempty set of claimers of `E` containing no isolated member. The
/// candidate built from a claimer `B*` of `E` and a witness of `B*` skew to
/// `E` is tried first; then every member in family order.
pub fn check_common_form(ctx: &PhiContext, e: &Subspace, d: &Subspace) -> Result<Option<Subspace>> {
    let k = ctx.family.member_dim();
    let pivot = ctx.pivot();
    let edim = e.dim();
    let violated = |msg: &str| Err(Error::HypothesisViolated(msg.to_string()));
    if e.ambient_dim() != pivot.ambient_dim() || d.ambient_dim() != pivot.ambient_dim() {
        return Err(Error::AmbientMismatch);
    }
    if !e.is_skew(pivot)? {
        return violated("E meets the pivot");
    }
    if 2 * edim < k || edim + 1 > k {
        return violated("dim E outside [k/2, k-1]");
    }
    if d != e && !(d.dim() == k - edim && e.contains(d)?) {
        return violated("D is neither E nor a (k - dim E)-subspace of E");
    }
    if !ctx.is_covering_triple_free() {
        return violated("family contains a covering triple");
    }
    let claim_e = ctx.phi_inverse_indices(e);
    if claim_e.is_empty() {
        return violated("no member claims E");
    }
    if claim_e.iter().any(|&b| ctx.isolated[b]) {
        return violated("an isolated member claims E");
    }

    let m = ctx.family.members();
    let claim_d = ctx.phi_inverse_indices(d);
    let works = |c: usize| {
        claim_d
            .iter()
            .all(|&b| b != c && direct_sum_is(&m[b], d, ctx.table.meet(b, c)))
    };
    let b_star = claim_e[0];
    let preferred = ctx.witnesses[b_star]
        .iter()
        .copied()
        .find(|&c| e.is_skew(&m[c]).expect("same ambient"));
    let found = preferred.into_iter().chain(0..m.len()).find(|&c| works(c));
    Ok(found.map(|c| m[c].clone()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerInequality {
    /// `|F_i| + |F_{k-i}|`, the middle layer counted twice when `2i = k`.
    pub lhs: usize,
    /// `q^{(k-i)^2} [n-k, k-i] [k-1, i-1] + q^{i^2} [n-k, i] [k-1, i]`.
    pub rhs: BigNat,
    pub holds: bool,
}

pub fn check_layer_inequality(ctx: &PhiContext, i: usize) -> Result<LayerInequality> {
    let k = ctx.family.member_dim();
    if i < 1 || 2 * i > k {
        return Err(Error::BadLayer {
            layer: i,
            max: k / 2,
        });
    }
    if !ctx.is_covering_triple_free() {
        return Err(Error::NotCoveringTripleFree);
    }
    let n = ctx.family.ambient_dim();
    let q = u64::from(ctx.family.field().q());
    let lhs = layer_len(ctx, i) + layer_len(ctx, k - i);
    let rhs = big_pow(q, (k - i) * (k - i))
        * gauss_binom_or_zero(n - k, k - i, q)
        * gauss_binom(k - 1, i - 1, q)?
        + big_pow(q, i * i) * gauss_binom_or_zero(n - k, i, q) * gauss_binom(k - 1, i, q)?;
    let holds = BigNat::from(lhs) <= rhs;
    Ok(LayerInequality { lhs, rhs, holds })
}
