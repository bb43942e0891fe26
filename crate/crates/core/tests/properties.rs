//! Randomized properties. The generator seed defaults to
//! `clusterfree::verify::DEFAULT_SEED`; set `CLUSTERFREE_SEED` to change it.

use clusterfree::families::{is_3_cluster, is_covering_triple, Family, Predicate};
use clusterfree::gfq::{make_field, Elem, FieldSpec, FqMatrix};
use clusterfree::grassmann::Subspace;
use clusterfree::search::{
    is_deficient, is_valid_matching, one_to_m_matching, search_ground, BipartiteGraph,
    MatchOutcome, SearchOptions,
};
use clusterfree::verify::DEFAULT_SEED;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    let seed = std::env::var("CLUSTERFREE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

const SMALL_Q: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];
const LARGE_Q: [u32; 10] = [16, 25, 27, 32, 49, 64, 81, 125, 128, 256];

fn matrix(field: &FieldSpec, rows: usize, cols: usize, raw: &[u32]) -> FqMatrix {
    let q = field.q();
    let data: Vec<Elem> = raw
        .iter()
        .take(rows * cols)
        .map(|&x| (x % q) as Elem)
        .collect();
    FqMatrix::new(field.clone(), rows, cols, data).unwrap()
}

/// An invertible `n×n` matrix: the identity with random entries below the
/// diagonal, times one with random entries above it and random non-zero
/// diagonal.
fn invertible(field: &FieldSpec, n: usize, raw: &[u32]) -> FqMatrix {
    let q = field.q();
    let mut lower = FqMatrix::identity(field.clone(), n).entries().to_vec();
    let mut upper = lower.clone();
    let mut it = raw.iter().cycle();
    for r in 0..n {
        for c in 0..n {
            let x = (*it.next().unwrap() % q) as Elem;
            if c < r {
                lower[r * n + c] = x;
            } else if c > r {
                upper[r * n + c] = x;
            } else {
                upper[r * n + c] = (x % (q as Elem - 1)) + 1;
            }
        }
    }
    let l = FqMatrix::new(field.clone(), n, n, lower).unwrap();
    let u = FqMatrix::new(field.clone(), n, n, upper).unwrap();
    l.mul(&u).unwrap()
}

fn subspace(field: &FieldSpec, n: usize, rows: usize, raw: &[u32]) -> Subspace {
    Subspace::row_space(&matrix(field, rows, n, raw))
}

/// A `k`-space, or `None` if the random rows happen to be dependent.
fn k_space(field: &FieldSpec, n: usize, k: usize, raw: &[u32]) -> Option<Subspace> {
    let s = subspace(field, n, k, raw);
    (s.dim() == k).then_some(s)
}

fn raw(len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..1 << 16, len)
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn dimension_is_modular(qi in 0..SMALL_Q.len(), n in 1usize..7, a in 0usize..7, b in 0usize..7, r in raw(100)) {
        let f = make_field(SMALL_Q[qi]).unwrap();
        let u = subspace(&f, n, a.min(n), &r);
        let w = subspace(&f, n, b.min(n), &r[50..]);
        let sum = u.sum(&w).unwrap().dim();
        let meet = u.intersect(&w).unwrap().dim();
        prop_assert_eq!(sum + meet, u.dim() + w.dim());
        prop_assert!(u.intersect(&w).unwrap().contains(&Subspace::zero(&f, n)).unwrap());
        prop_assert!(u.sum(&w).unwrap().contains(&u).unwrap());
    }

    #[test]
    fn canonical_form_ignores_basis(qi in 0..SMALL_Q.len(), n in 1usize..7, k in 0usize..7, r in raw(100)) {
        let f = make_field(SMALL_Q[qi]).unwrap();
        let k = k.min(n);
        let m = matrix(&f, k, n, &r);
        let g = invertible(&f, k, &r[50..]);
        let a = Subspace::row_space(&m);
        let b = Subspace::row_space(&g.mul(&m).unwrap());
        prop_assert_eq!(a.key(), b.key());
        prop_assert_eq!(&a, &b);
    }

    #[test]
    fn rref_is_idempotent(qi in 0..SMALL_Q.len(), rows in 0usize..6, cols in 1usize..7, r in raw(40)) {
        let f = make_field(SMALL_Q[qi]).unwrap();
        let m = matrix(&f, rows, cols, &r);
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.rank, twice.rank);
        let kernel = m.kernel_basis();
        prop_assert_eq!(once.rank + kernel.rows(), cols);
        for v in kernel.row_vecs() {
            prop_assert!(m.apply(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn larger_field_axioms(qi in 0..LARGE_Q.len(), a in 0u32..256, b in 0u32..256, c in 0u32..256) {
        let q = LARGE_Q[qi];
        let f = make_field(q).unwrap();
        let (a, b, c) = ((a % q) as Elem, (b % q) as Elem, (c % q) as Elem);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        } else {
            prop_assert!(f.inv(a).is_err());
        }
        // x^q = x
        let mut p = 1;
        for _ in 0..q {
            p = f.mul(p, a);
        }
        prop_assert_eq!(p, a);
    }

    #[test]
    fn predicates_survive_coordinate_change(
        qi in 0..3usize,
        shape in prop::sample::select(vec![(4usize, 2usize), (5, 2), (6, 3)]),
        r in raw(200),
    ) {
        let f = make_field(SMALL_Q[qi]).unwrap();
        let (n, k) = shape;
        let (Some(a), Some(b), Some(c)) = (
            k_space(&f, n, k, &r),
            k_space(&f, n, k, &r[40..]),
            k_space(&f, n, k, &r[80..]),
        ) else {
            return Ok(());
        };
        prop_assume!(a != b && b != c && a != c);
        let t = invertible(&f, n, &r[120..]);
        let (ta, tb, tc) = (a.transform(&t).unwrap(), b.transform(&t).unwrap(), c.transform(&t).unwrap());
        prop_assert_eq!(a.intersect_dim(&b).unwrap(), ta.intersect_dim(&tb).unwrap());
        prop_assert_eq!(
            is_covering_triple(&a, &b, &c, false).unwrap(),
            is_covering_triple(&ta, &tb, &tc, false).unwrap()
        );
        prop_assert_eq!(is_3_cluster(&a, &b, &c).unwrap(), is_3_cluster(&ta, &tb, &tc).unwrap());
        if is_covering_triple(&a, &b, &c, false).unwrap() {
            prop_assert!(is_3_cluster(&a, &b, &c).unwrap());
        }
    }

    #[test]
    fn matching_outcome_is_checkable(
        x in 1usize..8,
        y in 0usize..16,
        m in 1usize..4,
        edges in prop::collection::vec(any::<bool>(), 128),
    ) {
        let adjacency: Vec<Vec<usize>> = (0..x)
            .map(|i| (0..y).filter(|&j| edges[i * 16 + j]).collect())
            .collect();
        let g = BipartiteGraph::from_adjacency(y, adjacency).unwrap();
        match one_to_m_matching(&g, m).unwrap() {
            MatchOutcome::Matched(images) => {
                prop_assert!(is_valid_matching(&g, m, &images));
            }
            MatchOutcome::Deficient(s) => {
                prop_assert!(is_deficient(&g, m, &s));
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn cluster_free_is_at_most_covering_free(
        shape in prop::sample::select(vec![(4usize, 2usize), (5, 2), (6, 3)]),
        size in 6usize..20,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 20),
    ) {
        let f = make_field(2).unwrap();
        let (n, k) = shape;
        let all = Family::full(&f, n, k).unwrap();
        let members: Vec<Subspace> = picks[..size].iter().map(|i| i.get(all.members()).clone()).collect();
        let ground = Family::new(&f, n, k, members).unwrap();
        let opt = |p| search_ground(&ground, p, SearchOptions::default(), None).unwrap().optimum;
        prop_assert!(opt(Predicate::ThreeCluster) <= opt(Predicate::CoveringTriple));
        prop_assert!(opt(Predicate::DCluster(3)) == opt(Predicate::ThreeCluster));
    }
}
