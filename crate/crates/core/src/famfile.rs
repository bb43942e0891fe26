//! JSON family files: `{"q":2,"n":4,"k":2,"subspaces":[[[1,0,0,0],[0,1,0,0]], ...]}`.
//!
//! Each subspace is given by any spanning set of exactly `k` independent rows;
//! coordinates are field element indices `0..q`. Subspaces are canonicalized on
//! load and a subspace listed twice is an error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::Family;
use crate::gfq::{make_field, Elem, FqMatrix};
use crate::grassmann::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub subspaces: Vec<Vec<Vec<u32>>>,
}

impl FamilyFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_family(fam: &Family) -> Self {
        FamilyFile {
            q: fam.field().q(),
            n: fam.ambient_dim(),
            k: fam.member_dim(),
            subspaces: fam
                .iter()
                .map(|s| {
                    s.rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(u32::from).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn to_family(&self) -> Result<Family> {
        let field = make_field(self.q)?;
        if self.k > self.n {
            return Err(Error::BadDimension(format!(
                "k = {} exceeds n = {}",
                self.k, self.n
            )));
        }
        let mut members = Vec::with_capacity(self.subspaces.len());
        for (pos, basis) in self.subspaces.iter().enumerate() {
            if basis.len() != self.k {
                return Err(Error::Parse(format!(
                    "subspace {pos} has {} rows, expected {}",
                    basis.len(),
                    self.k
                )));
            }
            let mut data: Vec<Elem> = Vec::with_capacity(self.k * self.n);
            for row in basis {
                if row.len() != self.n {
                    return Err(Error::Parse(format!(
                        "subspace {pos} has a row of length {}, expected {}",
                        row.len(),
                        self.n
                    )));
                }
                for &x in row {
                    if x >= self.q {
                        return Err(Error::Parse(format!(
                            "subspace {pos}: entry {x} is not an element of F_{}",
                            self.q
                        )));
                    }
                    data.push(x as Elem);
                }
            }
            let s = Subspace::row_space(&FqMatrix::new(field.clone(), self.k, self.n, data)?);
            if s.dim() != self.k {
                return Err(Error::Parse(format!("subspace {pos} has dependent rows")));
            }
            members.push(s);
        }
        Family::new_strict(&field, self.n, self.k, members)
    }
}

pub fn load_family(text: &str) -> Result<Family> {
    FamilyFile::parse(text)?.to_family()
}

pub fn save_family(fam: &Family) -> String {
    FamilyFile::from_family(fam).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text =
            r#"{"q":2,"n":4,"k":2,"subspaces":[[[1,1,0,0],[0,1,0,0]],[[0,0,1,0],[0,0,0,1]]]}"#;
        let fam = load_family(text).unwrap();
        assert_eq!(fam.len(), 2);
        let again = load_family(&save_family(&fam)).unwrap();
        assert_eq!(fam, again);
        assert_eq!(
            save_family(&fam),
            r#"{"q":2,"n":4,"k":2,"subspaces":[[[0,0,1,0],[0,0,0,1]],[[1,0,0,0],[0,1,0,0]]]}"#
        );
    }

    #[test]
    fn rejects_bad_files() {
        let dup =
            r#"{"q":2,"n":4,"k":2,"subspaces":[[[1,1,0,0],[0,1,0,0]],[[1,0,0,0],[0,1,0,0]]]}"#;
        assert_eq!(load_family(dup).unwrap_err(), Error::DuplicateMember(1));
        for bad in [
            r#"{"q":2,"n":4,"k":2,"subspaces":[[[1,0,0,0],[1,0,0,0]]]}"#,
            r#"{"q":2,"n":4,"k":2,"subspaces":[[[1,0,0],[0,1,0]]]}"#,
            r#"{"q":2,"n":4,"k":2,"subspaces":[[[2,0,0,0],[0,1,0,0]]]}"#,
            r#"{"q":2,"n":4,"k":2,"subspaces":[[[1,0,0,0]]]}"#,
            r#"{"q":2,"n":4,"k":2}"#,
            r#"{"q":6,"n":4,"k":2,"subspaces":[]}"#,
            "not json",
        ] {
            assert!(load_family(bad).is_err(), "{bad}");
        }
        let empty = load_family(r#"{"q":3,"n":4,"k":2,"subspaces":[]}"#).unwrap();
        assert!(empty.is_empty());
    }
}
