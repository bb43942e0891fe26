use crate::grassmann::Subspace;

/// Pairwise intersections of a list of equal-dimension subspaces, so triple
/// conditions can be decided from cached pair data plus at most one rank
/// computation.
pub struct PairTable {
    members: Vec<Subspace>,
    k: usize,
    meet_dims: Vec<u8>,
    meets: Vec<Subspace>,
}

fn tri_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

impl PairTable {
    /// All members must share field, ambient dimension and dimension.
    pub fn new(members: &[Subspace]) -> Self {
        let n = members.len();
        let k = members.first().map_or(0, Subspace::dim);
        let mut meet_dims = vec![0u8; n * n];
        let mut meets = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for b in 0..n {
            meet_dims[b * n + b] = k as u8;
            for a in 0..b {
                let m = members[a].intersect(&members[b]).expect("same ambient");
                meet_dims[a * n + b] = m.dim() as u8;
                meet_dims[b * n + a] = m.dim() as u8;
                meets.push(m);
            }
        }
        PairTable {
            members: members.to_vec(),
            k,
            meet_dims,
            meets,
        }
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

    pub fn member_dim(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn meet_dim(&self, i: usize, j: usize) -> usize {
        self.meet_dims[i * self.members.len() + j] as usize
    }

    /// `members[i] ∩ members[j]` for `i != j`.
    pub fn meet(&self, i: usize, j: usize) -> &Subspace {
        &self.meets[tri_index(i, j)]
    }

    /// `A = (A∩B) ⊕ (A∩C)` with `A = members[a]`. The intersections lie in
    /// `A`, so once their dimensions add up to `k` a trivial meet forces the
    /// sum to be all of `A`.
    pub fn covers(&self, a: usize, b: usize, c: usize) -> bool {
        if self.meet_dim(a, b) + self.meet_dim(a, c) != self.k {
            return false;
        }
        if self.meet_dim(a, b) == 0 || self.meet_dim(a, c) == 0 {
            return true;
        }
        self.meet(a, b)
            .is_skew(self.meet(a, c))
            .expect("same ambient")
    }

    /// First of `a`, `b`, `c` (in argument order) that serves as a pivot.
    pub fn covering_pivot(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        if self.covers(a, b, c) {
            Some(a)
        } else if self.covers(b, a, c) {
            Some(b)
        } else if self.covers(c, a, b) {
            Some(c)
        } else {
            None
        }
    }

    pub fn triple_meet_is_zero(&self, a: usize, b: usize, c: usize) -> bool {
        if self.meet_dim(a, b) == 0 || self.meet_dim(a, c) == 0 || self.meet_dim(b, c) == 0 {
            return true;
        }
        self.meet(a, b)
            .is_skew(&self.members[c])
            .expect("same ambient")
    }

    pub fn join_dim(&self, idx: &[usize]) -> usize {
        let mut it = idx.iter();
        let Some(&first) = it.next() else {
            return 0;
        };
        let mut m = self.members[first].basis().clone();
        for &i in it {
            m = m.stack(self.members[i].basis()).expect("same ambient");
        }
        m.rank()
    }

    pub fn is_3_cluster(&self, a: usize, b: usize, c: usize) -> bool {
        self.triple_meet_is_zero(a, b, c) && self.join_dim(&[a, b, c]) <= 2 * self.k
    }

    pub fn is_d_cluster(&self, idx: &[usize]) -> bool {
        match idx.len() {
            0 | 1 => false,
            2 => self.meet_dim(idx[0], idx[1]) == 0,
            3 => self.is_3_cluster(idx[0], idx[1], idx[2]),
            _ => {
                if self.join_dim(idx) > 2 * self.k {
                    return false;
                }
                let mut meet = self.meet(idx[0], idx[1]).clone();
                for &i in &idx[2..] {
                    if meet.is_zero() {
                        break;
                    }
                    meet = meet.intersect(&self.members[i]).expect("same ambient");
                }
                meet.is_zero()
            }
        }
    }
}
