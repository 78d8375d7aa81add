//! Prime spectra, Thomason sets and finitely generated Gabriel topologies.
//!
//! A Thomason set is carried by a finite basis of ideals and stands for the
//! union of the closed sets `V(I)`; a Gabriel topology with a finite basis is
//! the filter of ideals containing a finite product of basis ideals. For
//! finitely generated `J`, `J` lies in the topology exactly when `V(J)` is
//! contained in the Thomason set of the basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::fpmod::FpModule;
use crate::ideals::Ideal;
use crate::ring::{Base, Elem, RingSpec, Side};

/// A prime ideal, given by a generator over the covering domain of one base
/// component: zero (only when that component is a domain) or an irreducible
/// dividing the modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub ring: RingSpec,
    /// `None` for base rings; for products the component carrying the prime
    /// (the other component is the whole ring).
    pub side: Option<Side>,
    pub generator: Elem,
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Left component before right, then by generator.
impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |p: &PrimeIdeal| (p.side.map(|s| s == Side::Right), p.generator.clone());
        key(self).cmp(&key(other))
    }
}

fn base_of(ring: &RingSpec, side: Option<Side>) -> Base {
    match side {
        None => ring.base().expect("base ring"),
        Some(s) => ring.component(s).base().expect("base ring"),
    }
}

impl PrimeIdeal {
    /// Certifies primality of the given generator (over the covering domain
    /// of the selected component).
    pub fn new(ring: &RingSpec, side: Option<Side>, generator: Elem) -> Result<Self> {
        if ring.is_product() != side.is_some() {
            return Err(Error::Semantic(format!("prime of {ring} needs a component tag exactly for products")));
        }
        let base = base_of(ring, side);
        let d = base.domain;
        let g = d.canonical(&generator);
        if g.is_zero() {
            if !base.is_domain_itself() {
                return Err(Error::Semantic("(0) is not prime in a proper quotient".into()));
            }
        } else {
            let (_, factors) = d.factor(&g)?;
            if factors.len() != 1 || factors[0].1 != 1 {
                return Err(Error::Semantic(format!("{} is not irreducible", fmt_elem(&g))));
            }
            if !base.is_domain_itself() && !d.divides(&g, &base.modulus) {
                return Err(Error::Semantic(format!(
                    "{} does not contain the modulus",
                    fmt_elem(&g)
                )));
            }
        }
        Ok(PrimeIdeal {
            ring: ring.clone(),
            side,
            generator: g,
        })
    }

    /// Parses `(q)` for base rings and `L:(q)` / `R:(q)` for products.
    pub fn parse(ring: &RingSpec, text: &str) -> Result<Self> {
        let t = text.trim();
        let (side, rest) = if let Some(r) = t.strip_prefix("L:") {
            (Some(Side::Left), r)
        } else if let Some(r) = t.strip_prefix("R:") {
            (Some(Side::Right), r)
        } else {
            (None, t)
        };
        let comp = match side {
            Some(s) => ring.component(s).clone(),
            None => ring.clone(),
        };
        let ideal = Ideal::parse(&comp, rest)?;
        let cover = comp.covering().expect("base ring");
        let g = ideal.cover_generator();
        PrimeIdeal::new(ring, side, cover.reduce(&g)?)
    }

    fn base(&self) -> Base {
        base_of(&self.ring, self.side)
    }

    /// `I ⊆ p`.
    pub fn contains_ideal(&self, ideal: &Ideal) -> bool {
        let comp = match self.side {
            Some(s) => ideal.component(s),
            None => ideal.clone(),
        };
        let g = comp.cover_generator();
        self.base().domain.divides(&self.generator, &g)
    }

    /// `p ⊆ q`.
    pub fn is_subset(&self, q: &PrimeIdeal) -> bool {
        self.side == q.side && (q.generator == self.generator || self.generator.is_zero())
    }

    /// The prime as an ideal of the ring.
    pub fn as_ideal(&self) -> Ideal {
        let g = self.base().reduce(&self.generator);
        let g = match self.side {
            None => g,
            Some(Side::Left) => Elem::pair(g, self.ring.component(Side::Right).one()),
            Some(Side::Right) => Elem::pair(self.ring.component(Side::Left).one(), g),
        };
        Ideal::principal(&self.ring, g)
    }

    /// `R / p` as a cyclic module.
    pub fn residue_module(&self) -> FpModule {
        FpModule::cyclic(&self.ring, &self.as_ideal().generators)
    }

    fn component_text(&self) -> String {
        format!("({})", fmt_elem(&self.generator))
    }
}

fn fmt_elem(e: &Elem) -> String {
    match e {
        Elem::Int(n) => n.to_string(),
        Elem::Poly(f) => f.to_string(),
        Elem::Pair(a, b) => format!("({},{})", fmt_elem(a), fmt_elem(b)),
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            None => write!(f, "{}", self.component_text()),
            Some(Side::Left) => write!(f, "L:{}", self.component_text()),
            Some(Side::Right) => write!(f, "R:{}", self.component_text()),
        }
    }
}

fn tag_all(ring: &RingSpec, side: Side, primes: Vec<PrimeIdeal>) -> Vec<PrimeIdeal> {
    primes
        .into_iter()
        .map(|p| PrimeIdeal {
            ring: ring.clone(),
            side: Some(side),
            generator: p.generator,
        })
        .collect()
}

/// Primes of a base ring dividing the covering element `g` (a divisor of the
/// modulus, or anything over a domain); `g = 0` over a domain gives `(0)`.
fn primes_over(ring: &RingSpec, g: &Elem) -> Result<Vec<PrimeIdeal>> {
    let base = ring.base().expect("base ring");
    let d = base.domain;
    if g.is_zero() {
        return Ok(vec![PrimeIdeal {
            ring: ring.clone(),
            side: None,
            generator: d.zero(),
        }]);
    }
    let (_, factors) = d.factor(g)?;
    Ok(factors
        .into_iter()
        .map(|(q, _)| PrimeIdeal {
            ring: ring.clone(),
            side: None,
            generator: q,
        })
        .collect())
}

/// Minimal primes over `I`. Over a domain the zero ideal yields the generic
/// prime `(0)`; the unit ideal yields none.
pub fn minimal_primes(ideal: &Ideal) -> Result<Vec<PrimeIdeal>> {
    let ring = &ideal.ring;
    let mut out = match ring.components() {
        Some(_) => {
            let mut l = tag_all(ring, Side::Left, minimal_primes(&ideal.component(Side::Left))?);
            l.extend(tag_all(ring, Side::Right, minimal_primes(&ideal.component(Side::Right))?));
            l
        }
        None => primes_over(ring, &ideal.cover_generator())?,
    };
    out.sort();
    Ok(out)
}

/// All primes of a ring with finite spectrum.
pub fn spectrum(ring: &RingSpec) -> Result<Vec<PrimeIdeal>> {
    if !has_finite_spectrum(ring) {
        return Err(Error::InfiniteSpectrum(ring.to_string()));
    }
    minimal_primes(&Ideal::zero(ring))
}

fn has_finite_spectrum(ring: &RingSpec) -> bool {
    match ring.components() {
        Some((a, b)) => has_finite_spectrum(a) && has_finite_spectrum(b),
        None => !ring.base().unwrap().is_domain_itself(),
    }
}

/// Associated primes (equal to the vaguely associated ones, all supported
/// rings being noetherian), read off the invariant factors.
pub fn vass(m: &FpModule) -> Result<Vec<PrimeIdeal>> {
    let ring = &m.ring;
    let mut out = match ring.components() {
        Some(_) => {
            let mut l = tag_all(ring, Side::Left, vass(&m.component(Side::Left))?);
            l.extend(tag_all(ring, Side::Right, vass(&m.component(Side::Right))?));
            l
        }
        None => {
            let base = ring.base().unwrap();
            let d = base.domain;
            let crate::fpmod::CanonicalInvariants::Pid {
                free_rank,
                torsion_factors,
            } = m.canonical_invariants()
            else {
                unreachable!()
            };
            let mut out = Vec::new();
            if free_rank > 0 {
                out.extend(primes_over(ring, &d.zero())?);
            }
            for t in &torsion_factors {
                out.extend(primes_over(ring, t)?);
            }
            out
        }
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// `p ∈ supp M`, i.e. `ann M ⊆ p`.
pub fn supp_contains(m: &FpModule, p: &PrimeIdeal) -> Result<bool> {
    if m.ring != p.ring {
        return Err(Error::RingMismatch(m.ring.to_string(), p.ring.to_string()));
    }
    let ann = Ideal::principal(&m.ring, m.annihilator_generator());
    Ok(p.contains_ideal(&ann))
}

/// Union of `V(I)` over the basis ideals (empty basis: the empty set).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThomasonSet {
    pub ring: RingSpec,
    pub basis: Vec<Ideal>,
}

impl ThomasonSet {
    pub fn new(ring: &RingSpec, basis: Vec<Ideal>) -> Result<Self> {
        for i in &basis {
            if i.ring != *ring {
                return Err(Error::RingMismatch(ring.to_string(), i.ring.to_string()));
            }
        }
        Ok(ThomasonSet {
            ring: ring.clone(),
            basis,
        })
    }

    pub fn empty(ring: &RingSpec) -> Self {
        ThomasonSet {
            ring: ring.clone(),
            basis: Vec::new(),
        }
    }

    pub fn contains(&self, p: &PrimeIdeal) -> Result<bool> {
        if p.ring != self.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), p.ring.to_string()));
        }
        Ok(self.basis.iter().any(|i| p.contains_ideal(i)))
    }

    /// `V(J) ⊆ X`: every minimal prime over `J` lies in the set.
    pub fn theta_contains(&self, j: &Ideal) -> Result<bool> {
        for p in minimal_primes(j)? {
            if !self.contains(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_subset(&self, other: &ThomasonSet) -> Result<bool> {
        for i in &self.basis {
            if !other.theta_contains(i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_set(&self, other: &ThomasonSet) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// A prime of `self` outside `other`, if any.
    pub fn prime_outside(&self, other: &ThomasonSet) -> Result<Option<PrimeIdeal>> {
        for i in &self.basis {
            for p in minimal_primes(i)? {
                if !other.contains(&p)? {
                    return Ok(Some(p));
                }
            }
        }
        Ok(None)
    }

    /// Primes of the set, when the spectrum is finite.
    pub fn primes(&self) -> Result<Vec<PrimeIdeal>> {
        let mut out = Vec::new();
        for p in spectrum(&self.ring)? {
            if self.contains(&p)? {
                out.push(p);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ThomasonSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.basis.iter().map(|i| format!("V{i}")).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// Gabriel topology generated by a finite basis of finitely generated ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GabrielTopologyFG {
    pub ring: RingSpec,
    pub basis: Vec<Ideal>,
    pub faithful: bool,
}

pub const DEFAULT_ORACLE_BOUND: usize = 6;

impl GabrielTopologyFG {
    pub fn new(ring: &RingSpec, basis: Vec<Ideal>) -> Result<Self> {
        for i in &basis {
            if i.ring != *ring {
                return Err(Error::RingMismatch(ring.to_string(), i.ring.to_string()));
            }
        }
        let faithful = basis.iter().all(Ideal::is_faithful);
        Ok(GabrielTopologyFG {
            ring: ring.clone(),
            basis,
            faithful,
        })
    }

    /// The topology `{R}`.
    pub fn trivial(ring: &RingSpec) -> Self {
        GabrielTopologyFG::new(ring, vec![Ideal::unit(ring)]).expect("same ring")
    }

    pub fn xi(&self) -> ThomasonSet {
        ThomasonSet {
            ring: self.ring.clone(),
            basis: self.basis.clone(),
        }
    }

    pub fn contains(&self, j: &Ideal) -> Result<bool> {
        self.xi().theta_contains(j)
    }

    /// Searches products of at most `bound` basis ideals (with repetition)
    /// for one contained in `J`.
    pub fn contains_by_products(&self, j: &Ideal, bound: usize) -> Result<bool> {
        let ring = &self.ring;
        if j.ring != *ring {
            return Err(Error::RingMismatch(ring.to_string(), j.ring.to_string()));
        }
        let basis: Vec<Ideal> = self.basis.iter().map(Ideal::canonicalize).collect();
        // depth-first over nondecreasing index sequences
        fn go(basis: &[Ideal], j: &Ideal, acc: &Ideal, start: usize, left: usize) -> Result<bool> {
            if acc.is_subset(j)? {
                return Ok(true);
            }
            if left == 0 {
                return Ok(false);
            }
            for i in start..basis.len() {
                let next = acc.product(&basis[i])?.canonicalize();
                if go(basis, j, &next, i, left - 1)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        go(&basis, j, &Ideal::unit(ring), 0, bound)
    }

    /// Membership by the prime test, cross-checked against the product
    /// search; a disagreement is an error.
    pub fn contains_checked(&self, j: &Ideal, bound: usize) -> Result<bool> {
        let by_primes = self.contains(j)?;
        let by_products = self.contains_by_products(j, bound)?;
        if by_primes != by_products {
            return Err(Error::OracleDisagreement(format!(
                "{j}: prime test says {by_primes}, products of at most {bound} basis ideals say {by_products}"
            )));
        }
        Ok(by_primes)
    }
}

impl fmt::Display for GabrielTopologyFG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis.iter().map(Ideal::to_string).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// No associated prime of the ring lies in the set.
pub fn admissible(x: &ThomasonSet) -> Result<bool> {
    for p in vass(&FpModule::free(&x.ring, 1))? {
        if x.contains(&p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All Gabriel topologies of tilting classes of a ring with finite spectrum:
/// one per admissible specialization-closed set of primes, with basis the
/// primes of the set (the unit ideal for the empty set).
pub fn enumerate_tilting_classes(ring: &RingSpec) -> Result<Vec<GabrielTopologyFG>> {
    let spec = spectrum(ring)?;
    let ass = vass(&FpModule::free(ring, 1))?;
    let candidates: Vec<PrimeIdeal> = spec.into_iter().filter(|p| !ass.contains(p)).collect();
    if candidates.len() > 20 {
        return Err(Error::SizeLimitExceeded {
            needed: 1u128 << candidates.len(),
            limit: 1 << 20,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << candidates.len()) {
        let chosen: Vec<&PrimeIdeal> = (0..candidates.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &candidates[i])
            .collect();
        // closed under specialization within the candidates
        let closed = chosen
            .iter()
            .all(|p| candidates.iter().all(|q| !p.is_subset(q) || chosen.contains(&q)));
        if !closed {
            continue;
        }
        let basis = if chosen.is_empty() {
            vec![Ideal::unit(ring)]
        } else {
            chosen.iter().map(|p| p.as_ideal()).collect()
        };
        let g = GabrielTopologyFG::new(ring, basis)?;
        if admissible(&g.xi())? {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn strs(ps: &[PrimeIdeal]) -> Vec<String> {
        ps.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn minimal_primes_examples() {
        let r = z();
        assert_eq!(strs(&minimal_primes(&Ideal::from_i64(&r, &[12])).unwrap()), ["(2)", "(3)"]);
        assert_eq!(strs(&minimal_primes(&Ideal::zero(&r)).unwrap()), ["(0)"]);
        let p: RingSpec = "Z x Z/4".parse().unwrap();
        let i = Ideal::parse(&p, "((2,0))").unwrap();
        assert_eq!(strs(&minimal_primes(&i).unwrap()), ["L:(2)", "R:(2)"]);
        assert!(minimal_primes(&Ideal::unit(&r)).unwrap().is_empty());
    }

    #[test]
    fn thomason_membership() {
        let r = z();
        let x = ThomasonSet::new(&r, vec![Ideal::from_i64(&r, &[2])]).unwrap();
        assert!(x.contains(&PrimeIdeal::parse(&r, "(2)").unwrap()).unwrap());
        assert!(!x.contains(&PrimeIdeal::parse(&r, "(3)").unwrap()).unwrap());
        let x = ThomasonSet::new(&r, vec![Ideal::from_i64(&r, &[4, 6])]).unwrap();
        assert!(x.contains(&PrimeIdeal::parse(&r, "(2)").unwrap()).unwrap());
        assert!(PrimeIdeal::parse(&r, "(4)").is_err());
    }

    #[test]
    fn vass_examples() {
        let r = z();
        assert_eq!(strs(&vass(&FpModule::free(&r, 1)).unwrap()), ["(0)"]);
        let z12 = FpModule::cyclic(&r, &[r.from_i64(12)]);
        assert_eq!(strs(&vass(&z12).unwrap()), ["(2)", "(3)"]);
        let r12 = RingSpec::integers_mod(12).unwrap();
        assert_eq!(strs(&vass(&FpModule::free(&r12, 1)).unwrap()), ["(2)", "(3)"]);
    }

    #[test]
    fn theta_and_gabriel() {
        let r = z();
        let i = |g: i64| Ideal::from_i64(&r, &[g]);
        let x = ThomasonSet::new(&r, vec![i(2)]).unwrap();
        assert!(x.theta_contains(&i(4)).unwrap());
        assert!(!x.theta_contains(&i(6)).unwrap());
        assert!(x.theta_contains(&i(1)).unwrap());
        assert!(ThomasonSet::empty(&r).theta_contains(&i(1)).unwrap());

        let g = GabrielTopologyFG::new(&r, vec![i(2)]).unwrap();
        assert!(g.contains_checked(&i(4), DEFAULT_ORACLE_BOUND).unwrap());
        assert!(!g.contains_checked(&i(6), DEFAULT_ORACLE_BOUND).unwrap());
        let g = GabrielTopologyFG::new(&r, vec![i(2), i(3)]).unwrap();
        assert!(g.contains_checked(&i(6), DEFAULT_ORACLE_BOUND).unwrap());
        // 2^7 needs seven copies of (2): the bounded search falls short
        let g = GabrielTopologyFG::new(&r, vec![i(2)]).unwrap();
        assert!(matches!(g.contains_checked(&i(128), 6), Err(Error::OracleDisagreement(_))));
    }

    #[test]
    fn xi_examples() {
        let r = z();
        let g = GabrielTopologyFG::trivial(&r);
        assert!(!g.xi().contains(&PrimeIdeal::parse(&r, "(2)").unwrap()).unwrap());
        let g = GabrielTopologyFG::new(&r, vec![Ideal::from_i64(&r, &[2]), Ideal::from_i64(&r, &[3])]).unwrap();
        let x = g.xi();
        assert!(x.contains(&PrimeIdeal::parse(&r, "(3)").unwrap()).unwrap());
        assert!(!x.contains(&PrimeIdeal::parse(&r, "(5)").unwrap()).unwrap());
    }

    #[test]
    fn admissibility() {
        let r = z();
        assert!(admissible(&ThomasonSet::new(&r, vec![Ideal::from_i64(&r, &[2])]).unwrap()).unwrap());
        let r12 = RingSpec::integers_mod(12).unwrap();
        assert!(!admissible(&ThomasonSet::new(&r12, vec![Ideal::from_i64(&r12, &[2])]).unwrap()).unwrap());
        assert!(admissible(&ThomasonSet::empty(&r12)).unwrap());
    }

    #[test]
    fn classification() {
        for spec in ["Z/12", "Z/6", "GF(2)[x]/(x^2)", "Z/4 x Z/9"] {
            let ring: RingSpec = spec.parse().unwrap();
            let classes = enumerate_tilting_classes(&ring).unwrap();
            assert_eq!(classes.len(), 1, "{spec}");
            assert!(classes[0].basis[0].is_unit_ideal());
        }
        for spec in ["Z", "GF(3)[x]", "Z x Z/4"] {
            let ring: RingSpec = spec.parse().unwrap();
            assert!(matches!(enumerate_tilting_classes(&ring), Err(Error::InfiniteSpectrum(_))));
        }
    }

    #[test]
    fn support() {
        let r = z();
        let z4 = FpModule::cyclic(&r, &[r.from_i64(4)]);
        assert!(supp_contains(&z4, &PrimeIdeal::parse(&r, "(2)").unwrap()).unwrap());
        assert!(!supp_contains(&z4, &PrimeIdeal::parse(&r, "(3)").unwrap()).unwrap());
        let m = FpModule::free(&r, 1).direct_sum(&z4).unwrap();
        assert!(supp_contains(&m, &PrimeIdeal::parse(&r, "(7)").unwrap()).unwrap());
    }
}
