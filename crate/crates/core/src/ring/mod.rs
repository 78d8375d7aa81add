//! Computable commutative base rings and their elements.
//!
//! Every supported ring is either a residue ring D/(m) of a covering
//! Euclidean domain D (Z or GF(p)[x], with m = 0 allowed) or a binary product
//! of two such rings.

mod domain;
mod factor;
mod parse;
pub mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

pub use domain::{Base, Domain};
pub use factor::{factor_integer, factor_poly, is_irreducible, set_trial_bound, trial_bound, DEFAULT_TRIAL_BOUND};
pub use parse::{parse_element, parse_ring, ParsePosition};
pub use poly::Poly;

use crate::error::{Error, Result};

/// Bare element payload; its meaning depends on the ring it lives in.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Poly(Poly),
    Pair(Box<Elem>, Box<Elem>),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Int(n) => n.is_zero(),
            Elem::Poly(f) => f.is_zero(),
            Elem::Pair(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new(a), Box::new(b))
    }

    /// Component of a pair; panics otherwise.
    pub fn component(&self, side: Side) -> &Elem {
        match (self, side) {
            (Elem::Pair(a, _), Side::Left) => a,
            (Elem::Pair(_, b), Side::Right) => b,
            _ => panic!("component of a non-pair element"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// The supported base rings.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RingSpec {
    Integers,
    IntegersModN(BigInt),
    PolyOverPrimeField(u64),
    PolyQuotient { p: u64, modulus: Poly },
    Product(Box<RingSpec>, Box<RingSpec>),
}

impl RingSpec {
    pub fn integers_mod(n: impl Into<BigInt>) -> Result<Self> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(Error::Semantic(format!("modulus {n} must be at least 2")));
        }
        Ok(RingSpec::IntegersModN(n))
    }

    pub fn poly(p: u64) -> Result<Self> {
        if !poly::is_prime_u64(p) {
            return Err(Error::Semantic(format!("{p} is not prime")));
        }
        Ok(RingSpec::PolyOverPrimeField(p))
    }

    /// GF(p)[x]/(f); the modulus is made monic.
    pub fn poly_quotient(p: u64, modulus: Poly) -> Result<Self> {
        if !poly::is_prime_u64(p) {
            return Err(Error::Semantic(format!("{p} is not prime")));
        }
        if modulus.characteristic() != p {
            return Err(Error::Semantic("modulus has the wrong characteristic".into()));
        }
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::Semantic(format!("modulus {modulus} must be non-constant")));
        }
        Ok(RingSpec::PolyQuotient {
            p,
            modulus: modulus.monic(),
        })
    }

    pub fn product(left: RingSpec, right: RingSpec) -> Result<Self> {
        if left.is_product() || right.is_product() {
            return Err(Error::Semantic("products may only be nested to depth 1".into()));
        }
        Ok(RingSpec::Product(Box::new(left), Box::new(right)))
    }

    pub fn is_product(&self) -> bool {
        matches!(self, RingSpec::Product(..))
    }

    /// The residue-ring view of a non-product ring.
    pub fn base(&self) -> Option<Base> {
        Some(match self {
            RingSpec::Integers => Base::new(Domain::Integers, Elem::Int(BigInt::zero())),
            RingSpec::IntegersModN(n) => Base::new(Domain::Integers, Elem::Int(n.clone())),
            RingSpec::PolyOverPrimeField(p) => Base::new(Domain::Poly(*p), Elem::Poly(Poly::zero(*p))),
            RingSpec::PolyQuotient { p, modulus } => {
                Base::new(Domain::Poly(*p), Elem::Poly(modulus.clone()))
            }
            RingSpec::Product(..) => return None,
        })
    }

    pub fn components(&self) -> Option<(&RingSpec, &RingSpec)> {
        match self {
            RingSpec::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn component(&self, side: Side) -> &RingSpec {
        let (a, b) = self.components().expect("component of a non-product ring");
        match side {
            Side::Left => a,
            Side::Right => b,
        }
    }

    /// The covering Euclidean domain as a ring (Z for Z/n, GF(p)[x] for quotients).
    pub fn covering(&self) -> Option<RingSpec> {
        match self {
            RingSpec::Integers | RingSpec::IntegersModN(_) => Some(RingSpec::Integers),
            RingSpec::PolyOverPrimeField(p) | RingSpec::PolyQuotient { p, .. } => {
                Some(RingSpec::PolyOverPrimeField(*p))
            }
            RingSpec::Product(..) => None,
        }
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self, RingSpec::Integers | RingSpec::PolyOverPrimeField(_))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RingSpec::Integers | RingSpec::PolyOverPrimeField(_) => false,
            RingSpec::IntegersModN(_) | RingSpec::PolyQuotient { .. } => true,
            RingSpec::Product(a, b) => a.is_finite() && b.is_finite(),
        }
    }

    pub fn cardinality(&self) -> Option<BigInt> {
        match self {
            RingSpec::Product(a, b) => Some(a.cardinality()? * b.cardinality()?),
            other => other.base()?.cardinality(),
        }
    }

    /// All canonical elements of a finite ring.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            RingSpec::Product(a, b) => {
                let (ea, eb) = (a.elements()?, b.elements()?);
                Some(
                    ea.iter()
                        .flat_map(|x| eb.iter().map(move |y| Elem::pair(x.clone(), y.clone())))
                        .collect(),
                )
            }
            other => other.base()?.elements(),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            RingSpec::Product(a, b) => Elem::pair(a.zero(), b.zero()),
            other => other.base().unwrap().zero(),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match self {
            RingSpec::Product(a, b) => Elem::pair(a.from_i64(n), b.from_i64(n)),
            other => {
                let base = other.base().unwrap();
                base.reduce(&base.domain.from_i64(n))
            }
        }
    }

    fn lift2(&self, a: &Elem, b: &Elem, f: &dyn Fn(&Base, &Elem, &Elem) -> Elem) -> Elem {
        match self {
            RingSpec::Product(ra, rb) => Elem::pair(
                ra.lift2(a.component(Side::Left), b.component(Side::Left), f),
                rb.lift2(a.component(Side::Right), b.component(Side::Right), f),
            ),
            other => f(&other.base().unwrap(), a, b),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.lift2(a, b, &|base, x, y| base.add(x, y))
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.lift2(a, b, &|base, x, y| base.sub(x, y))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.lift2(a, b, &|base, x, y| base.mul(x, y))
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.sub(&self.zero(), a)
    }

    pub fn pow(&self, a: &Elem, e: u32) -> Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Canonical form of a payload; errors if the payload shape does not fit.
    pub fn reduce(&self, a: &Elem) -> Result<Elem> {
        match (self, a) {
            (RingSpec::Product(ra, rb), Elem::Pair(x, y)) => {
                Ok(Elem::pair(ra.reduce(x)?, rb.reduce(y)?))
            }
            (RingSpec::Integers | RingSpec::IntegersModN(_), Elem::Int(_)) => {
                Ok(self.base().unwrap().reduce(a))
            }
            (RingSpec::PolyOverPrimeField(p) | RingSpec::PolyQuotient { p, .. }, Elem::Poly(f))
                if f.characteristic() == *p =>
            {
                Ok(self.base().unwrap().reduce(a))
            }
            (_, Elem::Int(n)) => Ok(self.from_bigint(n)),
            _ => Err(Error::Semantic(format!("element {a:?} does not belong to {self}"))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            RingSpec::Product(a, b) => Elem::pair(a.from_bigint(n), b.from_bigint(n)),
            RingSpec::Integers | RingSpec::IntegersModN(_) => {
                self.base().unwrap().reduce(&Elem::Int(n.clone()))
            }
            RingSpec::PolyOverPrimeField(p) | RingSpec::PolyQuotient { p, .. } => {
                let c = (n % BigInt::from(*p) + BigInt::from(*p)) % BigInt::from(*p);
                let c: u64 = c.try_into().unwrap();
                self.base().unwrap().reduce(&Elem::Poly(Poly::constant(*p, c)))
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match self {
            RingSpec::Product(ra, rb) => {
                ra.is_unit(a.component(Side::Left)) && rb.is_unit(a.component(Side::Right))
            }
            other => other.base().unwrap().is_unit(a),
        }
    }

    /// `a != 0` and `a*c = 0` for some `c != 0`.
    pub fn is_zero_divisor(&self, a: &Elem) -> bool {
        if a.is_zero() {
            return false;
        }
        match self {
            RingSpec::Product(ra, rb) => {
                let (x, y) = (a.component(Side::Left), a.component(Side::Right));
                x.is_zero() || y.is_zero() || ra.is_zero_divisor(x) || rb.is_zero_divisor(y)
            }
            other => {
                let base = other.base().unwrap();
                !base.is_domain_itself() && !base.is_unit(a)
            }
        }
    }

    /// `a` is zero or a zero divisor.
    pub fn is_regular(&self, a: &Elem) -> bool {
        !a.is_zero() && !self.is_zero_divisor(a)
    }

    /// Generator of the annihilator of a single element.
    pub fn annihilator_of(&self, a: &Elem) -> Elem {
        match self {
            RingSpec::Product(ra, rb) => Elem::pair(
                ra.annihilator_of(a.component(Side::Left)),
                rb.annihilator_of(a.component(Side::Right)),
            ),
            other => other.base().unwrap().annihilator(a),
        }
    }

    pub fn format_elem(&self, a: &Elem) -> String {
        match (self, a) {
            (RingSpec::Product(ra, rb), Elem::Pair(x, y)) => {
                format!("({},{})", ra.format_elem(x), rb.format_elem(y))
            }
            (_, Elem::Int(n)) => n.to_string(),
            (_, Elem::Poly(f)) => f.to_string(),
            (_, other) => format!("{other:?}"),
        }
    }

    pub fn element(&self, value: Elem) -> Result<RingElement> {
        Ok(RingElement {
            value: self.reduce(&value)?,
            ring: self.clone(),
        })
    }

    pub fn int(&self, n: i64) -> RingElement {
        RingElement {
            value: self.from_i64(n),
            ring: self.clone(),
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        parse_element(self, text)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersModN(n) => write!(f, "Z/{n}"),
            RingSpec::PolyOverPrimeField(p) => write!(f, "GF({p})[x]"),
            RingSpec::PolyQuotient { p, modulus } => write!(f, "GF({p})[x]/({modulus})"),
            RingSpec::Product(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ring(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// An element together with the ring it belongs to.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElement {
    pub ring: RingSpec,
    pub value: Elem,
}

impl RingElement {
    pub fn parse(ring: &RingSpec, text: &str) -> Result<Self> {
        Ok(RingElement {
            ring: ring.clone(),
            value: parse_element(ring, text)?,
        })
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            value,
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.wrap(self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.wrap(self.ring.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.wrap(self.ring.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.wrap(self.ring.neg(&self.value))
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }

    pub fn is_zero_divisor(&self) -> bool {
        self.ring.is_zero_divisor(&self.value)
    }

    /// Factors over Z or GF(p)[x]: returns the unit and canonical prime powers.
    pub fn factor(&self) -> Result<Factorization> {
        if !self.ring.is_euclidean() {
            return Err(Error::UnsupportedRing {
                op: "factor",
                ring: self.ring.to_string(),
            });
        }
        if self.value.is_zero() {
            return Err(Error::ZeroInput);
        }
        let domain = self.ring.base().unwrap().domain;
        let (unit, factors) = domain.factor(&self.value)?;
        Ok(Factorization {
            ring: self.ring.clone(),
            unit,
            factors,
        })
    }
}

/// `a op b`, the single entry point for element arithmetic; `b` is ignored for `Neg`.
pub fn arith(a: &RingElement, b: &RingElement, op: ArithOp) -> Result<RingElement> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Neg => {
            a.check(b)?;
            Ok(a.neg())
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format_elem(&self.value))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub ring: RingSpec,
    pub unit: Elem,
    pub factors: Vec<(Elem, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Elem {
        let domain = self.ring.base().unwrap().domain;
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (q, e)| domain.mul(&acc, &domain.pow(q, *e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(ring: &RingSpec, s: &str) -> RingElement {
        RingElement::parse(ring, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let z = RingSpec::Integers;
        assert_eq!(arith(&el(&z, "4"), &el(&z, "6"), ArithOp::Mul).unwrap().to_string(), "24");
        let z4 = RingSpec::integers_mod(4).unwrap();
        assert!(arith(&el(&z4, "2"), &el(&z4, "2"), ArithOp::Add).unwrap().is_zero());
        let prod = RingSpec::product(RingSpec::Integers, z4.clone()).unwrap();
        let r = arith(&el(&prod, "(3,1)"), &el(&prod, "(2,2)"), ArithOp::Mul).unwrap();
        assert_eq!(r.to_string(), "(6,2)");
    }

    #[test]
    fn mismatched_rings_rejected() {
        let z = RingSpec::Integers;
        let z4 = RingSpec::integers_mod(4).unwrap();
        assert!(matches!(
            el(&z, "1").add(&el(&z4, "1")),
            Err(Error::RingMismatch(..))
        ));
    }

    #[test]
    fn units_and_zero_divisors() {
        let z12 = RingSpec::integers_mod(12).unwrap();
        assert!(el(&z12, "5").is_unit());
        assert!(el(&z12, "4").is_zero_divisor());
        assert!(!el(&RingSpec::Integers, "2").is_zero_divisor());
        let prod = RingSpec::product(RingSpec::Integers, RingSpec::Integers).unwrap();
        assert!(el(&prod, "(1,0)").is_zero_divisor());
        assert!(!el(&prod, "(2,3)").is_zero_divisor());
    }

    #[test]
    fn unit_xor_zero_divisor_in_zn() {
        for n in 2..40 {
            let r = RingSpec::integers_mod(n).unwrap();
            for a in 1..n {
                let e = r.int(a);
                assert!(e.is_unit() ^ e.is_zero_divisor(), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f = el(&RingSpec::Integers, "12").factor().unwrap();
        assert_eq!(
            f.factors,
            vec![(Elem::Int(2.into()), 2), (Elem::Int(3.into()), 1)]
        );
        let gf2 = RingSpec::poly(2).unwrap();
        let f = el(&gf2, "x^2+x").factor().unwrap();
        assert_eq!(
            f.factors.iter().map(|(q, e)| (gf2.format_elem(q), *e)).collect::<Vec<_>>(),
            vec![("x".to_string(), 1), ("x+1".to_string(), 1)]
        );
        assert!(matches!(
            el(&RingSpec::integers_mod(6).unwrap(), "2").factor(),
            Err(Error::UnsupportedRing { .. })
        ));
        assert!(matches!(el(&RingSpec::Integers, "0").factor(), Err(Error::ZeroInput)));
    }
}
