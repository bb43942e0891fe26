use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, stored as its index in `0..q`.
///
/// The index of an element of `F_{p^m}` is the base-`p` reading of its
/// coefficient vector over the defining polynomial, low degree first, so `0`
/// and `1` are the additive and multiplicative identities.
pub type Elem = u8;

/// Monic defining polynomials `x^m + a_{m-1} x^{m-1} + ... + a_0`, stored as
/// `(q, p, [a_0, ..., a_{m-1}])`. All of them are Conway polynomials, so the
/// class of `x` is primitive.
const DEFINING_POLYS: &[(u32, u32, &[u32])] = &[
    (4, 2, &[1, 1]),
    (8, 2, &[1, 1, 0]),
    (16, 2, &[1, 1, 0, 0]),
    (32, 2, &[1, 0, 1, 0, 0]),
    (64, 2, &[1, 1, 0, 1, 1, 0]),
    (128, 2, &[1, 1, 0, 0, 0, 0, 0]),
    (256, 2, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (9, 3, &[2, 2]),
    (27, 3, &[1, 2, 0]),
    (81, 3, &[2, 0, 0, 2]),
    (243, 3, &[1, 2, 0, 0, 0]),
    (25, 5, &[2, 4]),
    (125, 5, &[3, 3, 0]),
    (49, 7, &[3, 6]),
    (121, 11, &[2, 7]),
    (169, 13, &[2, 12]),
];

struct Tables {
    q: u32,
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// Arithmetic tables for `F_q`, `q = p^m <= 256`.
///
/// Cloning is cheap: the tables live behind an `Arc` and are never mutated.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.q == other.0.q
    }
}

impl Eq for FieldSpec {}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let mut factors = Vec::new();
    let mut r = order;
    let mut d = 2;
    while d * d <= r {
        if r.is_multiple_of(d) {
            factors.push(d);
            while r.is_multiple_of(d) {
                r /= d;
            }
        }
        d += 1;
    }
    if r > 1 {
        factors.push(r);
    }
    let pow = |mut b: u32, mut e: u32| {
        let mut acc = 1u32;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow(g, order / f) != 1))
        .expect("every prime field has a primitive root")
}

fn digits(e: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    let mut e = e;
    for _ in 0..m {
        out.push(e % p);
        e /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Builds `F_q`. Same `q` always yields identical tables.
pub fn make_field(q: u32) -> Result<FieldSpec> {
    if q > 256 {
        return Err(Error::Unsupported(q));
    }
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let (p, m) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let qu = q as usize;

    let mut add = vec![0; qu * qu];
    let mut neg = vec![0; qu];
    for a in 0..q {
        let da = digits(a, p, m);
        let nd: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
        neg[a as usize] = undigits(&nd, p) as Elem;
        for b in 0..q {
            let db = digits(b, p, m);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a as usize * qu + b as usize] = undigits(&s, p) as Elem;
        }
    }

    // exp/log over a primitive element
    let (generator_step, modulus): (Box<dyn Fn(u32) -> u32>, Vec<u32>) = if m == 1 {
        let g = smallest_primitive_root(p);
        (Box::new(move |e| e * g % p), vec![(p - g) % p])
    } else {
        let poly = DEFINING_POLYS
            .iter()
            .find(|(qq, _, _)| *qq == q)
            .map(|(_, _, c)| c.to_vec())
            .ok_or(Error::Unsupported(q))?;
        let pc = poly.clone();
        (
            Box::new(move |e| {
                // multiply by x modulo the defining polynomial
                let d = digits(e, p, m);
                let top = d[m as usize - 1];
                let mut out = vec![0u32; m as usize];
                for j in (1..m as usize).rev() {
                    out[j] = d[j - 1];
                }
                for (j, c) in pc.iter().enumerate() {
                    out[j] = (out[j] + (p - c % p) * top) % p;
                }
                undigits(&out, p)
            }),
            poly,
        )
    };

    let mut exp = vec![0u32; qu - 1];
    let mut log = vec![u32::MAX; qu];
    let mut cur = 1u32;
    for (j, slot) in exp.iter_mut().enumerate() {
        assert!(
            log[cur as usize] == u32::MAX,
            "defining polynomial for q={q} is not primitive"
        );
        *slot = cur;
        log[cur as usize] = j as u32;
        cur = generator_step(cur);
    }
    assert_eq!(cur, 1, "generator order mismatch for q={q}");

    let mut mul = vec![0; qu * qu];
    let mut inv = vec![0; qu];
    for a in 1..qu {
        let la = log[a];
        inv[a] = exp[((qu as u32 - 1 - la) % (qu as u32 - 1)) as usize] as Elem;
        for b in 1..qu {
            let s = (la + log[b]) % (qu as u32 - 1);
            mul[a * qu + b] = exp[s as usize] as Elem;
        }
    }

    Ok(FieldSpec(Arc::new(Tables {
        q,
        p,
        m,
        modulus,
        add,
        mul,
        neg,
        inv,
    })))
}

impl FieldSpec {
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Low coefficients of the defining polynomial (for `m = 1`, the
    /// constant `-g` of `x - g` with `g` the chosen primitive root).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|e| e as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.0.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.0.inv[a as usize])
        }
    }

    /// Inverse of a known nonzero element.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        self.0.inv[a as usize]
    }
}

pub fn f_add(f: &FieldSpec, a: Elem, b: Elem) -> Elem {
    f.add(a, b)
}

pub fn f_mul(f: &FieldSpec, a: Elem, b: Elem) -> Elem {
    f.mul(a, b)
}

pub fn f_inv(f: &FieldSpec, a: Elem) -> Result<Elem> {
    f.inv(a)
}
