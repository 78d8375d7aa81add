//! Shared helpers for integration tests: random generators and an
//! exhaustive model of modules over small finite rings.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::Rng;
use tiltlab_core::ring::{Domain, Poly};
use tiltlab_core::{Elem, FpModule, RingMatrix, RingSpec};

pub fn rand_int(rng: &mut StdRng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn rand_poly(rng: &mut StdRng, p: u64, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
    Poly::new(p, coeffs)
}

/// A random element of a base ring (integers bounded, polynomials of low degree).
pub fn rand_elem(rng: &mut StdRng, ring: &RingSpec) -> Elem {
    match ring {
        RingSpec::Integers => ring.from_i64(rand_int(rng, 12)),
        RingSpec::PolyOverPrimeField(p) => Elem::Poly(rand_poly(rng, *p, 2)),
        RingSpec::Product(a, b) => Elem::pair(rand_elem(rng, a), rand_elem(rng, b)),
        _ => {
            let elems = ring.elements().expect("finite ring");
            elems[rng.gen_range(0..elems.len())].clone()
        }
    }
}

pub fn rand_matrix(rng: &mut StdRng, ring: &RingSpec, rows: usize, cols: usize) -> RingMatrix {
    let rows_v: Vec<Vec<Elem>> = (0..rows)
        .map(|_| (0..cols).map(|_| rand_elem(rng, ring)).collect())
        .collect();
    RingMatrix::from_rows(ring, rows_v, cols).unwrap()
}

pub fn rand_module(rng: &mut StdRng, ring: &RingSpec, max_gens: usize, max_rels: usize) -> FpModule {
    let g = rng.gen_range(1..=max_gens);
    let r = rng.gen_range(0..=max_rels);
    FpModule::new(ring, g, rand_matrix(rng, ring, g, r)).unwrap()
}

/// Determinant over a Euclidean domain by fraction-free elimination.
pub fn det(d: Domain, m: &RingMatrix) -> Elem {
    let n = m.rows();
    let mut a = m.row_vecs();
    let mut sign = false;
    let mut prev = d.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return d.zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = d.sub(&d.mul(&a[k][k], &a[i][j]), &d.mul(&a[i][k], &a[k][j]));
                a[i][j] = d.exact_div(&x, &prev);
            }
            a[i][k] = d.zero();
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { d.one() } else { a[n - 1][n - 1].clone() };
    if sign {
        d.neg(&det)
    } else {
        det
    }
}

/// A finite ring as addition and multiplication tables on element indices.
pub struct FiniteRing {
    pub spec: RingSpec,
    pub elems: Vec<Elem>,
    index: HashMap<Elem, usize>,
    pub add: Vec<Vec<u16>>,
    pub mul: Vec<Vec<u16>>,
    pub zero: u16,
}

impl FiniteRing {
    pub fn new(spec: &RingSpec) -> Self {
        let elems = spec.elements().expect("finite ring");
        let index: HashMap<Elem, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let q = elems.len();
        let table = |f: &dyn Fn(&Elem, &Elem) -> Elem| -> Vec<Vec<u16>> {
            (0..q)
                .map(|i| (0..q).map(|j| index[&f(&elems[i], &elems[j])] as u16).collect())
                .collect()
        };
        let add = table(&|a, b| spec.add(a, b));
        let mul = table(&|a, b| spec.mul(a, b));
        let zero = index[&spec.zero()] as u16;
        FiniteRing {
            spec: spec.clone(),
            elems,
            index,
            add,
            mul,
            zero,
        }
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn idx(&self, e: &Elem) -> u16 {
        self.index[e] as u16
    }

    /// `Σ_i c_i v_i` for coefficient indices `c` and vectors `v`.
    fn combo(&self, coeffs: &[u16], vecs: &[&[u16]], len: usize) -> Vec<u16> {
        let mut out = vec![self.zero; len];
        for (c, v) in coeffs.iter().zip(vecs) {
            for (o, x) in out.iter_mut().zip(v.iter()) {
                *o = self.add[*o as usize][self.mul[*c as usize][*x as usize] as usize];
            }
        }
        out
    }
}

/// A finitely presented module over a finite ring, enumerated: every vector of
/// `R^h` carries the id of its coset modulo the relation span.
pub struct FiniteModule {
    pub h: usize,
    pub class_of: Vec<u32>,
    /// One representative vector per class.
    pub reps: Vec<Vec<u16>>,
}

fn encode(v: &[u16], q: usize) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * q + x as usize)
}

fn decode(mut code: usize, q: usize, h: usize) -> Vec<u16> {
    (0..h)
        .map(|_| {
            let x = (code % q) as u16;
            code /= q;
            x
        })
        .collect()
}

impl FiniteModule {
    pub fn new(ring: &FiniteRing, m: &FpModule) -> Self {
        let q = ring.size();
        let h = m.ngens;
        let total = q.pow(h as u32);
        let rel: Vec<Vec<u16>> = (0..m.nrelations())
            .map(|j| m.relations.column(j).iter().map(|e| ring.idx(e)).collect())
            .collect();
        // relation span by closure under addition and scalar multiples
        let mut in_span = vec![false; total];
        in_span[encode(&vec![ring.zero; h], q)] = true;
        let mut span: Vec<Vec<u16>> = vec![vec![ring.zero; h]];
        let mut frontier = span.clone();
        while let Some(v) = frontier.pop() {
            for r in &rel {
                for c in 0..q as u16 {
                    let w = ring.combo(&[ring.idx(&ring.spec.one()), c], &[&v, r], h);
                    let code = encode(&w, q);
                    if !in_span[code] {
                        in_span[code] = true;
                        span.push(w.clone());
                        frontier.push(w);
                    }
                }
            }
        }
        let mut class_of = vec![u32::MAX; total];
        let mut reps = Vec::new();
        let one = ring.idx(&ring.spec.one());
        for code in 0..total {
            if class_of[code] != u32::MAX {
                continue;
            }
            let v = decode(code, q, h);
            let id = reps.len() as u32;
            for s in &span {
                let w = ring.combo(&[one, one], &[&v, s], h);
                class_of[encode(&w, q)] = id;
            }
            reps.push(v);
        }
        FiniteModule { h, class_of, reps }
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    fn class(&self, ring: &FiniteRing, v: &[u16]) -> u32 {
        self.class_of[encode(v, ring.size())]
    }
}

/// Number of tuples `(t_1..t_g)` of elements of the target satisfying the
/// relations of `m`, i.e. `|Hom(M, target)|`; `None` if the search exceeds `budget`.
fn count_maps(
    ring: &FiniteRing,
    m: &FpModule,
    candidates: &[Vec<u16>],
    is_zero: &dyn Fn(&[u16]) -> bool,
    len: usize,
    budget: u64,
) -> Option<u64> {
    let g = m.ngens;
    let n = candidates.len() as u64;
    if n.checked_pow(g as u32)? > budget {
        return None;
    }
    let rel: Vec<Vec<u16>> = (0..m.nrelations())
        .map(|j| m.relations.column(j).iter().map(|e| ring.idx(e)).collect())
        .collect();
    let mut count = 0u64;
    let mut choice = vec![0usize; g];
    loop {
        let imgs: Vec<&[u16]> = choice.iter().map(|&c| candidates[c].as_slice()).collect();
        if rel.iter().all(|r| is_zero(&ring.combo(r, &imgs, len))) {
            count += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == g {
                return Some(count);
            }
            choice[i] += 1;
            if choice[i] < candidates.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `|Hom(M, N)|` by enumerating generator images in `N`.
pub fn brute_hom_count(ring: &FiniteRing, m: &FpModule, n: &FpModule, budget: u64) -> Option<u64> {
    let fin = FiniteModule::new(ring, n);
    let zero_class = fin.class(ring, &vec![ring.zero; fin.h]);
    count_maps(ring, m, &fin.reps, &|v| fin.class(ring, v) == zero_class, fin.h, budget)
}

/// `|M ⊗ N|` as the number of R-bilinear forms `M × N → R`, enumerated as
/// `Hom(M, Hom(N, R))`. Over a finite Frobenius ring `|Hom(X, R)| = |X|`.
pub fn brute_tensor_count(ring: &FiniteRing, m: &FpModule, n: &FpModule, budget: u64) -> Option<u64> {
    let q = ring.size();
    let h = n.ngens;
    let total = (q as u64).checked_pow(h as u32)?;
    if total > budget {
        return None;
    }
    let rel: Vec<Vec<u16>> = (0..n.nrelations())
        .map(|j| n.relations.column(j).iter().map(|e| ring.idx(e)).collect())
        .collect();
    // functionals t on R^h vanishing on the relations of N
    let dual: Vec<Vec<u16>> = (0..total as usize)
        .map(|code| decode(code, q, h))
        .filter(|t| {
            rel.iter().all(|r| {
                let mut acc = ring.zero;
                for (a, b) in t.iter().zip(r) {
                    acc = ring.add[acc as usize][ring.mul[*a as usize][*b as usize] as usize];
                }
                acc == ring.zero
            })
        })
        .collect();
    count_maps(ring, m, &dual, &|v| v.iter().all(|&x| x == ring.zero), h, budget)
}

/// Module order from the presentation-based invariants.
pub fn order(m: &FpModule) -> u64 {
    m.cardinality().expect("finite module").try_into().expect("small module")
}
