//! Families of equal-dimension subspaces, the forbidden configurations they
//! may avoid, and the claiming maps used to compare a family with a star.

mod pairs;
mod phi;
mod predicates;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gfq::FieldSpec;
use crate::grassmann::{enum_grassmannian, Subspace};

pub use pairs::PairTable;
pub use phi::{
    check_common_form, check_layer_inequality, check_phi_lemma, layer_partition, phi_context,
    phi_inverse, LayerInequality, PhiContext, PhiLemmaReport,
};
pub(crate) use predicates::first_combination;
pub use predicates::{
    covering_pivot, find_forbidden, is_3_cluster, is_covering_triple, is_d_cluster,
    is_intersecting, is_star, star_centers, Predicate, Witness,
};

/// A duplicate-free family of `k`-dimensional subspaces of `F_q^n`, kept in
/// canonical-key order.
#[derive(Clone, Debug)]
pub struct Family {
    field: FieldSpec,
    n: usize,
    k: usize,
    members: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.k == other.k
            && self.members == other.members
    }
}

impl Eq for Family {}

fn check_member(field: &FieldSpec, n: usize, k: usize, s: &Subspace) -> Result<()> {
    if s.field() != field || s.ambient_dim() != n {
        return Err(Error::MixedAmbient);
    }
    if s.dim() != k {
        return Err(Error::MixedDimension);
    }
    Ok(())
}

impl Family {
    /// Canonicalizes and silently merges repeated subspaces.
    pub fn new(field: &FieldSpec, n: usize, k: usize, subspaces: Vec<Subspace>) -> Result<Self> {
        for s in &subspaces {
            check_member(field, n, k, s)?;
        }
        let mut members = subspaces;
        members.sort();
        members.dedup();
        Ok(Self::from_sorted(field.clone(), n, k, members))
    }

    /// Like [`Family::new`] but a repeated subspace is an error.
    pub fn new_strict(
        field: &FieldSpec,
        n: usize,
        k: usize,
        subspaces: Vec<Subspace>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for (pos, s) in subspaces.iter().enumerate() {
            check_member(field, n, k, s)?;
            if seen.insert(s.clone(), pos).is_some() {
                return Err(Error::DuplicateMember(pos));
            }
        }
        Self::new(field, n, k, subspaces)
    }

    fn from_sorted(field: FieldSpec, n: usize, k: usize, members: Vec<Subspace>) -> Self {
        let index = members
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Family {
            field,
            n,
            k,
            members,
            index,
        }
    }

    pub fn empty(field: &FieldSpec, n: usize, k: usize) -> Self {
        Self::from_sorted(field.clone(), n, k, Vec::new())
    }

    /// Every `k`-space containing `center` (a nonzero subspace, usually a line).
    pub fn star(field: &FieldSpec, n: usize, k: usize, center: &Subspace) -> Result<Self> {
        if center.is_zero() {
            return Err(Error::BadArgs("star center must be nonzero".into()));
        }
        if center.ambient_dim() != n || center.field() != field {
            return Err(Error::MixedAmbient);
        }
        let members = enum_grassmannian(field, n, k)?
            .filter(|s| s.contains(center).expect("same ambient"))
            .collect();
        Self::new(field, n, k, members)
    }

    /// The whole Grassmannian `Gr(F_q, n, k)`.
    pub fn full(field: &FieldSpec, n: usize, k: usize) -> Result<Self> {
        Self::new(field, n, k, enum_grassmannian(field, n, k)?.collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn member_dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.members.iter()
    }

    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.index.contains_key(s)
    }

    /// Sub-family of the members selected by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Subspace) -> bool) -> Family {
        let members = self.members.iter().filter(|s| keep(s)).cloned().collect();
        Self::from_sorted(self.field.clone(), self.n, self.k, members)
    }

    pub fn with_member(&self, s: Subspace) -> Result<Family> {
        let mut members = self.members.clone();
        members.push(s);
        Self::new(&self.field, self.n, self.k, members)
    }
}

pub fn family_new(
    field: &FieldSpec,
    n: usize,
    k: usize,
    subspaces: Vec<Subspace>,
) -> Result<Family> {
    Family::new(field, n, k, subspaces)
}
