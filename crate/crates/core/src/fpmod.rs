//! Finitely presented modules `R^ngens / (column span of relations)`.
//!
//! Isomorphism classes are decided through invariant factors over the
//! covering principal ideal domain: a module over D/(m) is a D-module killed
//! by m, so appending the modulus relations and taking the Smith form over D
//! gives a complete invariant. Homology computations (Hom, Ext¹, Tor₁) split
//! the coefficient module into cyclic pieces D/(d) and work over the residue
//! ring D/(d), where kernels come from Howell forms.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::normal_forms::{columns_to_matrix, kernel, smith_diagonal};
use crate::ring::{Base, Domain, Elem, Poly, RingSpec, Side};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpModule {
    pub ring: RingSpec,
    pub ngens: usize,
    /// `ngens` rows; each column is one relation.
    pub relations: RingMatrix,
}

/// Isomorphism invariants over the covering PID (componentwise for products).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalInvariants {
    Pid {
        free_rank: usize,
        torsion_factors: Vec<Elem>,
    },
    Product(Box<CanonicalInvariants>, Box<CanonicalInvariants>),
}

impl CanonicalInvariants {
    pub fn is_zero(&self) -> bool {
        match self {
            CanonicalInvariants::Pid {
                free_rank,
                torsion_factors,
            } => *free_rank == 0 && torsion_factors.is_empty(),
            CanonicalInvariants::Product(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn free_rank(&self) -> usize {
        match self {
            CanonicalInvariants::Pid { free_rank, .. } => *free_rank,
            CanonicalInvariants::Product(a, b) => a.free_rank().max(b.free_rank()),
        }
    }

    /// Drops free summands of the covering domain (stable comparison).
    pub fn without_free(&self) -> CanonicalInvariants {
        match self {
            CanonicalInvariants::Pid { torsion_factors, .. } => CanonicalInvariants::Pid {
                free_rank: 0,
                torsion_factors: torsion_factors.clone(),
            },
            CanonicalInvariants::Product(a, b) => {
                CanonicalInvariants::Product(Box::new(a.without_free()), Box::new(b.without_free()))
            }
        }
    }

    /// Canonical literal strings of the torsion factors (`"a|b"` pairs for products).
    pub fn torsion_strings(&self, ring: &RingSpec) -> Vec<String> {
        match (self, ring.components()) {
            (CanonicalInvariants::Pid { torsion_factors, .. }, _) => {
                let cover = ring.covering().unwrap();
                torsion_factors.iter().map(|d| cover.format_elem(d)).collect()
            }
            (CanonicalInvariants::Product(a, b), Some((ra, rb))) => {
                let mut out: Vec<String> = a.torsion_strings(ra).into_iter().map(|s| format!("L:{s}")).collect();
                out.extend(b.torsion_strings(rb).into_iter().map(|s| format!("R:{s}")));
                out
            }
            _ => unreachable!("invariants do not match ring shape"),
        }
    }

    /// Human-readable decomposition such as `Z^1 + Z/(2)`.
    pub fn describe(&self, ring: &RingSpec) -> String {
        match (self, ring.components()) {
            (CanonicalInvariants::Pid { free_rank, torsion_factors }, _) => {
                let cover = ring.covering().unwrap();
                let mut parts = Vec::new();
                if *free_rank > 0 {
                    parts.push(format!("{cover}^{free_rank}"));
                }
                for d in torsion_factors {
                    parts.push(format!("{cover}/({})", cover.format_elem(d)));
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
            (CanonicalInvariants::Product(a, b), Some((ra, rb))) => {
                format!("[{}] x [{}]", a.describe(ra), b.describe(rb))
            }
            _ => unreachable!("invariants do not match ring shape"),
        }
    }

    /// Number of elements, when finite.
    pub fn cardinality(&self, ring: &RingSpec) -> Option<BigInt> {
        match (self, ring.components()) {
            (CanonicalInvariants::Pid { free_rank, torsion_factors }, _) => {
                if *free_rank > 0 {
                    return None;
                }
                Some(torsion_factors.iter().map(elem_norm).product())
            }
            (CanonicalInvariants::Product(a, b), Some((ra, rb))) => {
                Some(a.cardinality(ra)? * b.cardinality(rb)?)
            }
            _ => None,
        }
    }
}

/// |D/(d)| for a nonzero d.
fn elem_norm(d: &Elem) -> BigInt {
    match d {
        Elem::Int(n) => n.clone(),
        Elem::Poly(f) => BigInt::from(f.quotient_size()),
        Elem::Pair(..) => unreachable!(),
    }
}

/// The ring D/(d) for a nonzero non-unit canonical `d`, or D itself for `d = 0`.
pub(crate) fn residue_ring(domain: Domain, d: &Elem) -> RingSpec {
    match (domain, d) {
        (Domain::Integers, _) if d.is_zero() => RingSpec::Integers,
        (Domain::Integers, Elem::Int(n)) => RingSpec::IntegersModN(n.clone()),
        (Domain::Poly(p), _) if d.is_zero() => RingSpec::PolyOverPrimeField(p),
        (Domain::Poly(p), Elem::Poly(f)) => RingSpec::PolyQuotient {
            p,
            modulus: f.monic(),
        },
        _ => unreachable!(),
    }
}

impl FpModule {
    pub fn new(ring: &RingSpec, ngens: usize, relations: RingMatrix) -> Result<Self> {
        if relations.ring != *ring {
            return Err(Error::RingMismatch(ring.to_string(), relations.ring.to_string()));
        }
        if relations.rows() != ngens {
            return Err(Error::ShapeMismatch(format!(
                "relation matrix has {} rows for {ngens} generators",
                relations.rows()
            )));
        }
        Ok(FpModule {
            ring: ring.clone(),
            ngens,
            relations,
        })
    }

    pub fn free(ring: &RingSpec, n: usize) -> Self {
        FpModule {
            ring: ring.clone(),
            ngens: n,
            relations: RingMatrix::zeros(ring, n, 0),
        }
    }

    pub fn zero(ring: &RingSpec) -> Self {
        FpModule::free(ring, 0)
    }

    /// `R / (gens)`, one generator and one relation per ideal generator.
    pub fn cyclic(ring: &RingSpec, gens: &[Elem]) -> Self {
        FpModule {
            ring: ring.clone(),
            ngens: 1,
            relations: RingMatrix::from_raw(ring, 1, gens.len(), gens.to_vec()),
        }
    }

    /// Direct sum of cyclic modules `R/(d_i)`.
    pub fn diagonal(ring: &RingSpec, ds: &[Elem]) -> Self {
        let n = ds.len();
        let mut rel = RingMatrix::zeros(ring, n, n);
        for (i, d) in ds.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        FpModule {
            ring: ring.clone(),
            ngens: n,
            relations: rel,
        }
    }

    /// Parses the `a,b;c,d` text format of the relation matrix.
    pub fn from_text(ring: &RingSpec, ngens: usize, relations: &str) -> Result<Self> {
        let rel = if relations.trim().is_empty() {
            RingMatrix::zeros(ring, ngens, 0)
        } else {
            RingMatrix::parse(ring, relations)?
        };
        FpModule::new(ring, ngens, rel)
    }

    pub fn nrelations(&self) -> usize {
        self.relations.cols()
    }

    fn check(&self, other: &FpModule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    /// Appends relation columns.
    pub fn with_relations(&self, extra: Vec<Vec<Elem>>) -> FpModule {
        let mut cols: Vec<Vec<Elem>> = (0..self.nrelations()).map(|j| self.relations.column(j)).collect();
        cols.extend(extra);
        FpModule {
            ring: self.ring.clone(),
            ngens: self.ngens,
            relations: columns_to_matrix(&self.ring, self.ngens, cols),
        }
    }

    /// `M / span(e_j)` for the given generator indices.
    pub fn kill_generators(&self, gens: &[usize]) -> FpModule {
        let ring = &self.ring;
        let extra = gens
            .iter()
            .map(|&j| (0..self.ngens).map(|i| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        self.with_relations(extra)
    }

    /// `M / I M` for the ideal generated by `gens`.
    pub fn quotient_by_ideal(&self, gens: &[Elem]) -> FpModule {
        let ring = &self.ring;
        let mut extra = Vec::new();
        for x in gens {
            for j in 0..self.ngens {
                extra.push((0..self.ngens).map(|i| if i == j { x.clone() } else { ring.zero() }).collect());
            }
        }
        self.with_relations(extra)
    }

    pub fn component(&self, side: Side) -> FpModule {
        FpModule {
            ring: self.ring.component(side).clone(),
            ngens: self.ngens,
            relations: self.relations.component(side),
        }
    }

    /// Rebuilds a product-ring module from its two components.
    pub fn join(ring: &RingSpec, left: &FpModule, right: &FpModule) -> FpModule {
        let (rl, rr) = ring.components().expect("join needs a product ring");
        // generator i is (l_i, r_i); a side with fewer generators pads with zero
        let n = left.ngens.max(right.ngens);
        let mut cols: Vec<Vec<Elem>> = Vec::new();
        let lift = |v: Vec<Elem>, side: Side| -> Vec<Elem> {
            let mut out = vec![ring.zero(); n];
            for (o, x) in out.iter_mut().zip(v) {
                *o = match side {
                    Side::Left => Elem::pair(x, rr.zero()),
                    Side::Right => Elem::pair(rl.zero(), x),
                };
            }
            out
        };
        for (m, side, one) in [(left, Side::Left, rl.one()), (right, Side::Right, rr.one())] {
            for j in 0..m.nrelations() {
                cols.push(lift(m.relations.column(j), side));
            }
            for i in m.ngens..n {
                let mut v = vec![ring.zero(); n];
                v[i] = match side {
                    Side::Left => Elem::pair(one.clone(), rr.zero()),
                    Side::Right => Elem::pair(rl.zero(), one.clone()),
                };
                cols.push(v);
            }
        }
        FpModule {
            ring: ring.clone(),
            ngens: n,
            relations: columns_to_matrix(ring, n, cols),
        }
    }

    fn per_component(
        &self,
        other: &FpModule,
        f: impl Fn(&FpModule, &FpModule) -> Result<FpModule>,
    ) -> Result<Option<FpModule>> {
        self.check(other)?;
        if !self.ring.is_product() {
            return Ok(None);
        }
        let l = f(&self.component(Side::Left), &other.component(Side::Left))?;
        let r = f(&self.component(Side::Right), &other.component(Side::Right))?;
        Ok(Some(FpModule::join(&self.ring, &l, &r)))
    }

    pub fn canonical_invariants(&self) -> CanonicalInvariants {
        match self.ring.components() {
            Some(_) => CanonicalInvariants::Product(
                Box::new(self.component(Side::Left).canonical_invariants()),
                Box::new(self.component(Side::Right).canonical_invariants()),
            ),
            None => {
                let base = self.ring.base().unwrap();
                let diag = smith_diagonal(base.domain, self.relations.row_vecs(), self.nrelations(), &base.modulus);
                let free_rank = diag.iter().filter(|d| d.is_zero()).count();
                let torsion_factors = diag
                    .into_iter()
                    .filter(|d| !d.is_zero() && !base.domain.is_unit(d))
                    .collect();
                CanonicalInvariants::Pid {
                    free_rank,
                    torsion_factors,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_invariants().is_zero()
    }

    pub fn is_isomorphic(&self, other: &FpModule) -> Result<bool> {
        self.check(other)?;
        Ok(self.canonical_invariants() == other.canonical_invariants())
    }

    /// Equal invariants after discarding free summands.
    pub fn is_stably_equivalent(&self, other: &FpModule) -> Result<bool> {
        self.check(other)?;
        Ok(self.canonical_invariants().without_free() == other.canonical_invariants().without_free())
    }

    pub fn cardinality(&self) -> Option<BigInt> {
        self.canonical_invariants().cardinality(&self.ring)
    }

    /// A presentation with one generator per invariant factor (for display).
    pub fn minimize(&self) -> FpModule {
        match self.ring.components() {
            Some(_) => FpModule::join(
                &self.ring,
                &self.component(Side::Left).minimize(),
                &self.component(Side::Right).minimize(),
            ),
            None => {
                let base = self.ring.base().unwrap();
                match self.canonical_invariants() {
                    CanonicalInvariants::Pid {
                        free_rank,
                        torsion_factors,
                    } => {
                        let mut ds: Vec<Elem> = torsion_factors.iter().map(|d| base.reduce(d)).collect();
                        ds.extend((0..free_rank).map(|_| base.zero()));
                        FpModule::diagonal(&self.ring, &ds)
                    }
                    CanonicalInvariants::Product(..) => unreachable!(),
                }
            }
        }
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        self.check(other)?;
        Ok(FpModule {
            ring: self.ring.clone(),
            ngens: self.ngens + other.ngens,
            relations: self.relations.block_diag(&other.relations)?,
        })
    }

    /// Generators are pairs `e_i ⊗ f_k` (index `i * ngens(N) + k`).
    pub fn tensor(&self, other: &FpModule) -> Result<FpModule> {
        self.check(other)?;
        let ring = &self.ring;
        let a = self.relations.kron(&RingMatrix::identity(ring, other.ngens))?;
        let b = RingMatrix::identity(ring, self.ngens).kron(&other.relations)?;
        let rel = a.hstack(&b)?;
        FpModule::new(ring, self.ngens * other.ngens, rel)
    }

    /// `Hom(M, N)` as the kernel of `N^ngens(M) -> N^nrelations(M)`.
    pub fn hom(&self, other: &FpModule) -> Result<FpModule> {
        if let Some(m) = self.per_component(other, |a, b| a.hom(b))? {
            return Ok(m);
        }
        let zero = RingMatrix::zeros(&self.ring, self.ngens, 0);
        homology(other, &zero, &self.relations.transpose())
    }

    /// Relation matrix of a free resolution step: generators of the kernel of
    /// the relation map `R^nrelations -> R^ngens`.
    pub fn second_syzygy_matrix(&self) -> RingMatrix {
        kernel(&self.relations)
    }

    pub fn ext1(&self, other: &FpModule) -> Result<FpModule> {
        if let Some(m) = self.per_component(other, |a, b| a.ext1(b))? {
            return Ok(m);
        }
        let a2 = self.second_syzygy_matrix();
        homology(other, &self.relations.transpose(), &a2.transpose())
    }

    pub fn tor1(&self, other: &FpModule) -> Result<FpModule> {
        if let Some(m) = self.per_component(other, |a, b| a.tor1(b))? {
            return Ok(m);
        }
        let a2 = self.second_syzygy_matrix();
        homology(other, &a2, &self.relations)
    }

    /// Annihilator generator from the invariants (zero if there is a free summand).
    pub fn annihilator_generator(&self) -> Elem {
        match self.ring.components() {
            Some(_) => Elem::pair(
                self.component(Side::Left).annihilator_generator(),
                self.component(Side::Right).annihilator_generator(),
            ),
            None => {
                let base = self.ring.base().unwrap();
                match self.canonical_invariants() {
                    CanonicalInvariants::Pid {
                        free_rank,
                        torsion_factors,
                    } => {
                        if free_rank > 0 {
                            base.zero()
                        } else {
                            torsion_factors.last().map_or_else(|| base.one(), |d| base.reduce(d))
                        }
                    }
                    CanonicalInvariants::Product(..) => unreachable!(),
                }
            }
        }
    }

    /// The first syzygy (image of the relation map) as a module in its own right.
    pub fn syzygy(&self) -> FpModule {
        let k = kernel(&self.relations);
        FpModule {
            ring: self.ring.clone(),
            ngens: self.nrelations(),
            relations: k,
        }
    }

    /// Projectivity: torsion-free over a PID; over D/(m), free over every
    /// local factor D/(q^e), i.e. all q-parts of the invariants are 0 or q^e.
    pub fn is_projective(&self) -> Result<bool> {
        if self.ring.is_product() {
            return Ok(self.component(Side::Left).is_projective()?
                && self.component(Side::Right).is_projective()?);
        }
        let base = self.ring.base().unwrap();
        let CanonicalInvariants::Pid { torsion_factors, .. } = self.canonical_invariants() else {
            unreachable!()
        };
        if base.is_domain_itself() {
            return Ok(torsion_factors.is_empty());
        }
        let primes = base.modulus_primes()?;
        Ok(torsion_factors.iter().all(|d| {
            primes.iter().all(|(q, e)| {
                let v = base.domain.valuation(q, d);
                v == 0 || v == *e
            })
        }))
    }
}

/// Homology at the middle of `N^a --F--> N^b --G--> N^c` where the maps are
/// given by matrices over the base ring acting on coordinate vectors.
fn homology(n: &FpModule, f: &RingMatrix, g: &RingMatrix) -> Result<FpModule> {
    let ring = &n.ring;
    let base = ring.base().expect("homology is computed per component");
    let b = g.cols();
    debug_assert_eq!(f.rows(), b);
    let CanonicalInvariants::Pid {
        free_rank,
        torsion_factors,
    } = n.canonical_invariants()
    else {
        unreachable!()
    };
    let mut pieces: Vec<Elem> = torsion_factors;
    pieces.extend((0..free_rank).map(|_| base.zero()));
    let mut out = FpModule::zero(ring);
    for d in pieces {
        let piece = cyclic_homology(&base, ring, &d, f, g)?;
        out = out.direct_sum(&piece)?;
    }
    Ok(out)
}

/// Homology of the complex with coefficients in D/(d), returned as an R-module.
fn cyclic_homology(base: &Base, ring: &RingSpec, d: &Elem, f: &RingMatrix, g: &RingMatrix) -> Result<FpModule> {
    let s = residue_ring(base.domain, d);
    let fs = f.change_ring(&s)?;
    let gs = g.change_ring(&s)?;
    let b = g.cols();
    let z = kernel(&gs);
    let k = z.cols();
    if k == 0 {
        return Ok(FpModule::zero(ring));
    }
    let w = z.hstack(&fs)?;
    let rel = kernel(&w).top_rows(k);
    debug_assert_eq!(w.rows(), b);
    let mut cols: Vec<Vec<Elem>> = (0..rel.cols())
        .map(|j| rel.column(j).into_iter().map(|x| base.reduce(&x)).collect())
        .collect();
    let dr = base.reduce(d);
    if !dr.is_zero() {
        for i in 0..k {
            cols.push((0..k).map(|r| if r == i { dr.clone() } else { base.zero() }).collect());
        }
    }
    Ok(FpModule {
        ring: ring.clone(),
        ngens: k,
        relations: columns_to_matrix(ring, k, cols),
    })
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{} gens | {}> over {}",
            self.ngens,
            self.relations.to_text(),
            self.ring
        )
    }
}

/// JSON wire form: `{ "ring": "<ring>", "ngens": k, "relations": [[...], ...] }`,
/// relations as `ngens` rows of element literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub ring: String,
    pub ngens: usize,
    pub relations: Vec<Vec<Literal>>,
}

/// An element literal in JSON: either a bare integer or a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn parse(&self, ring: &RingSpec) -> Result<Elem> {
        match self {
            Literal::Int(n) => Ok(ring.from_i64(*n)),
            Literal::Text(s) => ring.parse_elem(s),
        }
    }
}

impl ModuleJson {
    pub fn to_module(&self) -> Result<FpModule> {
        let ring: RingSpec = self.ring.parse()?;
        if self.relations.len() != self.ngens {
            return Err(Error::ShapeMismatch(format!(
                "{} relation rows for {} generators",
                self.relations.len(),
                self.ngens
            )));
        }
        let cols = self.relations.first().map_or(0, Vec::len);
        let rows = self
            .relations
            .iter()
            .map(|r| r.iter().map(|x| x.parse(&ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let rel = RingMatrix::from_rows(&ring, rows, cols)?;
        FpModule::new(&ring, self.ngens, rel)
    }

    pub fn from_module(m: &FpModule) -> Self {
        ModuleJson {
            ring: m.ring.to_string(),
            ngens: m.ngens,
            relations: m
                .relations
                .to_string_rows()
                .into_iter()
                .map(|r| r.into_iter().map(Literal::Text).collect())
                .collect(),
        }
    }
}

/// The `D`-elements of a polynomial quotient are kept monic; helper for tests.
#[allow(dead_code)]
pub(crate) fn poly_elem(p: u64, coeffs: &[i64]) -> Elem {
    Elem::Poly(Poly::from_signed(p, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn cyc(ring: &RingSpec, d: i64) -> FpModule {
        FpModule::cyclic(ring, &[ring.from_i64(d)])
    }

    fn inv(ring: &RingSpec, m: &FpModule) -> (usize, Vec<String>) {
        let i = m.canonical_invariants();
        (i.free_rank(), i.torsion_strings(ring))
    }

    #[test]
    fn invariants_examples() {
        let r = z();
        assert_eq!(inv(&r, &cyc(&r, 2)), (0, vec!["2".to_string()]));
        let m = FpModule::from_text(&r, 2, "4;6").unwrap();
        assert_eq!(inv(&r, &m), (1, vec!["2".to_string()]));
        assert_eq!(inv(&r, &FpModule::free(&r, 3)), (3, vec![]));
    }

    #[test]
    fn isomorphism_examples() {
        let r = z();
        let z2z3 = cyc(&r, 2).direct_sum(&cyc(&r, 3)).unwrap();
        assert!(z2z3.is_isomorphic(&cyc(&r, 6)).unwrap());
        let z2z2 = cyc(&r, 2).direct_sum(&cyc(&r, 2)).unwrap();
        assert!(!cyc(&r, 4).is_isomorphic(&z2z2).unwrap());
        let m = FpModule::from_text(&r, 2, "4;6").unwrap();
        let zz2 = FpModule::free(&r, 1).direct_sum(&cyc(&r, 2)).unwrap();
        assert!(m.is_isomorphic(&zz2).unwrap());
        let z4 = RingSpec::integers_mod(4).unwrap();
        assert!(matches!(cyc(&r, 2).is_isomorphic(&cyc(&z4, 2)), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn tensor_examples() {
        let r = z();
        assert!(cyc(&r, 4).tensor(&cyc(&r, 6)).unwrap().is_isomorphic(&cyc(&r, 2)).unwrap());
        let m = FpModule::from_text(&r, 2, "4;6").unwrap();
        assert!(m.tensor(&FpModule::free(&r, 1)).unwrap().is_isomorphic(&m).unwrap());
        let s = cyc(&r, 2).direct_sum(&cyc(&r, 3)).unwrap();
        assert_eq!(inv(&r, &s).1, vec!["6".to_string()]);
    }

    #[test]
    fn hom_examples() {
        let r = z();
        assert!(cyc(&r, 2).hom(&cyc(&r, 4)).unwrap().is_isomorphic(&cyc(&r, 2)).unwrap());
        let n = FpModule::from_text(&r, 2, "4;6").unwrap();
        assert!(FpModule::free(&r, 1).hom(&n).unwrap().is_isomorphic(&n).unwrap());
        assert!(cyc(&r, 2).hom(&FpModule::free(&r, 1)).unwrap().is_zero());
    }

    #[test]
    fn ext_tor_examples() {
        let r = z();
        let e = cyc(&r, 2).ext1(&FpModule::free(&r, 1)).unwrap();
        assert!(e.is_isomorphic(&cyc(&r, 2)).unwrap());
        assert!(FpModule::free(&r, 2).ext1(&cyc(&r, 5)).unwrap().is_zero());
        let t = cyc(&r, 4).tor1(&cyc(&r, 6)).unwrap();
        assert!(t.is_isomorphic(&cyc(&r, 2)).unwrap());
    }

    #[test]
    fn ext_over_self_injective_ring_vanishes() {
        // Z/4 is self-injective: Ext^1(Z/2, Z/4) = 0 over Z/4, unlike over Z
        let z4 = RingSpec::integers_mod(4).unwrap();
        let e = cyc(&z4, 2).ext1(&FpModule::free(&z4, 1)).unwrap();
        assert!(e.is_zero());
        // Tor_1^{Z/4}(Z/2, Z/2) = Z/2
        let t = cyc(&z4, 2).tor1(&cyc(&z4, 2)).unwrap();
        assert!(t.is_isomorphic(&cyc(&z4, 2)).unwrap());
    }

    #[test]
    fn projectivity() {
        let z6 = RingSpec::integers_mod(6).unwrap();
        // Z/2 is a direct summand of Z/6
        assert!(cyc(&z6, 2).is_projective().unwrap());
        let z4 = RingSpec::integers_mod(4).unwrap();
        assert!(!cyc(&z4, 2).is_projective().unwrap());
        assert!(FpModule::free(&z4, 2).is_projective().unwrap());
        assert!(!cyc(&z(), 3).is_projective().unwrap());
    }

    #[test]
    fn product_ring_modules() {
        let r: RingSpec = "Z x Z/4".parse().unwrap();
        let m = FpModule::cyclic(&r, &[r.parse_elem("(2,2)").unwrap()]);
        let i = m.canonical_invariants();
        assert_eq!(i.torsion_strings(&r), vec!["L:2", "R:2"]);
        let joined = FpModule::join(&r, &m.component(Side::Left), &m.component(Side::Right));
        assert!(joined.is_isomorphic(&m).unwrap());
        let h = m.hom(&m).unwrap();
        assert!(h.is_isomorphic(&m).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let r: RingSpec = "Z/12".parse().unwrap();
        let m = FpModule::from_text(&r, 2, "4,0;6,3").unwrap();
        let j = ModuleJson::from_module(&m);
        assert_eq!(j.to_module().unwrap(), m);
        let raw = ModuleJson {
            ring: "Z".into(),
            ngens: 1,
            relations: vec![vec![Literal::Int(2), Literal::Text("-4".into())]],
        };
        assert_eq!(raw.to_module().unwrap().relations.to_text(), "2,-4");
    }
}
