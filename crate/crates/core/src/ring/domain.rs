//! Euclidean arithmetic on the two covering domains (Z and GF(p)[x]) and on
//! their residue rings D/(m).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::{factor_integer, factor_poly};
use super::poly::Poly;
use super::Elem;
use crate::error::Result;

/// One of the Euclidean domains every supported ring is a quotient of.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Domain {
    Integers,
    Poly(u64),
}

fn int(e: &Elem) -> &BigInt {
    match e {
        Elem::Int(n) => n,
        other => panic!("expected integer element, got {other:?}"),
    }
}

fn poly(e: &Elem) -> &Poly {
    match e {
        Elem::Poly(f) => f,
        other => panic!("expected polynomial element, got {other:?}"),
    }
}

impl Domain {
    pub fn zero(self) -> Elem {
        match self {
            Domain::Integers => Elem::Int(BigInt::zero()),
            Domain::Poly(p) => Elem::Poly(Poly::zero(p)),
        }
    }

    pub fn one(self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Elem {
        match self {
            Domain::Integers => Elem::Int(BigInt::from(n)),
            Domain::Poly(p) => Elem::Poly(Poly::from_signed(p, &[n])),
        }
    }

    pub fn add(self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Domain::Integers => Elem::Int(int(a) + int(b)),
            Domain::Poly(_) => Elem::Poly(poly(a).add(poly(b))),
        }
    }

    pub fn sub(self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Domain::Integers => Elem::Int(int(a) - int(b)),
            Domain::Poly(_) => Elem::Poly(poly(a).sub(poly(b))),
        }
    }

    pub fn mul(self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Domain::Integers => Elem::Int(int(a) * int(b)),
            Domain::Poly(_) => Elem::Poly(poly(a).mul(poly(b))),
        }
    }

    pub fn neg(self, a: &Elem) -> Elem {
        match self {
            Domain::Integers => Elem::Int(-int(a)),
            Domain::Poly(_) => Elem::Poly(poly(a).neg()),
        }
    }

    /// Euclidean division with canonical remainder: `0 <= r < |b|` over Z,
    /// `deg r < deg b` over GF(p)[x].
    pub fn div_rem(self, a: &Elem, b: &Elem) -> (Elem, Elem) {
        match self {
            Domain::Integers => {
                let (q, r) = int(a).div_mod_floor(int(b));
                if r.is_negative() {
                    // b negative: shift remainder into [0, |b|)
                    (Elem::Int(q + 1), Elem::Int(r - int(b)))
                } else {
                    (Elem::Int(q), Elem::Int(r))
                }
            }
            Domain::Poly(_) => {
                let (q, r) = poly(a).div_rem(poly(b));
                (Elem::Poly(q), Elem::Poly(r))
            }
        }
    }

    pub fn rem(self, a: &Elem, b: &Elem) -> Elem {
        self.div_rem(a, b).1
    }

    /// `b | a`; zero divides only zero.
    pub fn divides(self, b: &Elem, a: &Elem) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        self.rem(a, b).is_zero()
    }

    /// Exact quotient `a / b`, assuming `b | a` and `b != 0`.
    pub fn exact_div(self, a: &Elem, b: &Elem) -> Elem {
        let (q, r) = self.div_rem(a, b);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Returns `(c, u)` with `u` a unit, `u * a = c` and `c` the canonical
    /// associate (nonnegative integer, monic polynomial, or zero).
    pub fn normalize(self, a: &Elem) -> (Elem, Elem) {
        match self {
            Domain::Integers => {
                if int(a).is_negative() {
                    (Elem::Int(-int(a)), Elem::Int(BigInt::from(-1)))
                } else {
                    (a.clone(), self.one())
                }
            }
            Domain::Poly(p) => {
                let f = poly(a);
                if f.is_zero() {
                    return (a.clone(), self.one());
                }
                let inv = super::poly::inv_mod(f.leading(), p);
                (Elem::Poly(f.scale(inv)), Elem::Poly(Poly::constant(p, inv)))
            }
        }
    }

    pub fn canonical(self, a: &Elem) -> Elem {
        self.normalize(a).0
    }

    pub fn is_unit(self, a: &Elem) -> bool {
        match self {
            Domain::Integers => int(a).abs().is_one(),
            Domain::Poly(_) => {
                let f = poly(a);
                !f.is_zero() && f.is_constant()
            }
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(self, a: &Elem) -> Elem {
        debug_assert!(self.is_unit(a));
        match self {
            Domain::Integers => a.clone(),
            Domain::Poly(p) => {
                Elem::Poly(Poly::constant(p, super::poly::inv_mod(poly(a).leading(), p)))
            }
        }
    }

    /// Compares Euclidean sizes (absolute value / degree); zero is smallest.
    pub fn size_cmp(self, a: &Elem, b: &Elem) -> Ordering {
        match self {
            Domain::Integers => int(a).abs().cmp(&int(b).abs()),
            Domain::Poly(_) => poly(a).degree().cmp(&poly(b).degree()),
        }
    }

    /// Extended gcd: `(g, s, t)` with `s*a + t*b = g`, `g` canonical.
    pub fn xgcd(self, a: &Elem, b: &Elem) -> (Elem, Elem, Elem) {
        match self {
            Domain::Integers => {
                let e = int(a).extended_gcd(int(b));
                let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
                if g.is_negative() {
                    g = -g;
                    s = -s;
                    t = -t;
                }
                (Elem::Int(g), Elem::Int(s), Elem::Int(t))
            }
            Domain::Poly(_) => {
                let (g, s, t) = poly(a).xgcd(poly(b));
                (Elem::Poly(g), Elem::Poly(s), Elem::Poly(t))
            }
        }
    }

    pub fn gcd(self, a: &Elem, b: &Elem) -> Elem {
        match self {
            Domain::Integers => Elem::Int(int(a).gcd(int(b))),
            Domain::Poly(_) => Elem::Poly(poly(a).gcd(poly(b))),
        }
    }

    pub fn gcd_all<'a>(self, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.gcd(&acc, x))
    }

    /// Factors a nonzero element into `(unit, [(canonical prime, exponent)])`.
    pub fn factor(self, a: &Elem) -> Result<(Elem, Vec<(Elem, u32)>)> {
        match self {
            Domain::Integers => {
                let n = int(a);
                let fs = factor_integer(n)?;
                let unit = if n.is_negative() { -1 } else { 1 };
                Ok((
                    Elem::Int(BigInt::from(unit)),
                    fs.into_iter().map(|(q, e)| (Elem::Int(q), e)).collect(),
                ))
            }
            Domain::Poly(p) => {
                let (u, fs) = factor_poly(poly(a))?;
                Ok((
                    Elem::Poly(Poly::constant(p, u)),
                    fs.into_iter().map(|(q, e)| (Elem::Poly(q), e)).collect(),
                ))
            }
        }
    }

    pub fn pow(self, a: &Elem, e: u32) -> Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Exponent of the prime `q` in `a != 0`.
    pub fn valuation(self, q: &Elem, a: &Elem) -> u32 {
        debug_assert!(!a.is_zero());
        let mut rest = a.clone();
        let mut v = 0;
        loop {
            let (d, r) = self.div_rem(&rest, q);
            if !r.is_zero() {
                return v;
            }
            rest = d;
            v += 1;
        }
    }
}

/// A residue ring D/(m) of a covering domain; `m = 0` means D itself.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Base {
    pub domain: Domain,
    pub modulus: Elem,
}

impl Base {
    pub fn new(domain: Domain, modulus: Elem) -> Self {
        let modulus = domain.canonical(&modulus);
        Base { domain, modulus }
    }

    pub fn is_domain_itself(&self) -> bool {
        self.modulus.is_zero()
    }

    pub fn zero(&self) -> Elem {
        self.domain.zero()
    }

    pub fn one(&self) -> Elem {
        self.reduce(&self.domain.one())
    }

    /// Canonical residue of a covering-domain element.
    pub fn reduce(&self, a: &Elem) -> Elem {
        if self.modulus.is_zero() {
            a.clone()
        } else {
            self.domain.rem(a, &self.modulus)
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&self.domain.add(a, b))
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&self.domain.sub(a, b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&self.domain.mul(a, b))
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        self.reduce(&self.domain.neg(a))
    }

    /// gcd of `a` with the modulus, i.e. the canonical generator of `(a)`
    /// pulled back to the covering domain.
    pub fn ideal_generator(&self, a: &Elem) -> Elem {
        self.domain.gcd(a, &self.modulus)
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.domain.is_unit(&self.ideal_generator(a))
    }

    /// Generator of the annihilator of `a`, as an element of the covering domain.
    pub fn annihilator(&self, a: &Elem) -> Elem {
        if a.is_zero() {
            return self.one();
        }
        if self.modulus.is_zero() {
            return self.zero();
        }
        let g = self.ideal_generator(a);
        self.reduce(&self.domain.exact_div(&self.modulus, &g))
    }

    /// Returns `(c, u)` with `u` a unit of D/(m) and `u*a = c` the canonical
    /// associate `gcd(a, m)` (or the canonical associate in D when `m = 0`).
    pub fn normalize(&self, a: &Elem) -> (Elem, Elem) {
        let d = self.domain;
        if self.modulus.is_zero() || a.is_zero() {
            return d.normalize(a);
        }
        let g = self.ideal_generator(a);
        let a_red = d.exact_div(a, &g);
        let h = d.exact_div(&self.modulus, &g);
        // inverse of a/g modulo h
        let u0 = if d.is_unit(&h) {
            d.zero()
        } else {
            let (one, s, _) = d.xgcd(&a_red, &h);
            debug_assert!(d.is_unit(&one));
            d.rem(&s, &h)
        };
        // largest divisor of m coprime to h
        let mut coprime = self.modulus.clone();
        loop {
            let c = d.gcd(&coprime, &h);
            if d.is_unit(&c) {
                break;
            }
            coprime = d.exact_div(&coprime, &c);
        }
        // CRT: u = u0 mod h, u = 1 mod coprime
        let u = if d.is_unit(&coprime) {
            u0
        } else {
            let (_, s, _) = d.xgcd(&h, &coprime);
            let k = d.rem(&d.mul(&d.sub(&d.one(), &u0), &s), &coprime);
            d.add(&u0, &d.mul(&h, &k))
        };
        let u = self.reduce(&u);
        let u = if u.is_zero() { self.one() } else { u };
        debug_assert!(self.is_unit(&u));
        (self.mul(&u, a), u)
    }

    /// Inverse of a unit of D/(m).
    pub fn unit_inverse(&self, a: &Elem) -> Elem {
        if self.modulus.is_zero() {
            return self.domain.unit_inverse(a);
        }
        let (g, s, _) = self.domain.xgcd(a, &self.modulus);
        debug_assert!(self.domain.is_unit(&g));
        let ginv = self.domain.unit_inverse(&g);
        self.mul(&s, &ginv)
    }

    /// `b | a` inside D/(m).
    pub fn divides(&self, b: &Elem, a: &Elem) -> bool {
        let gb = self.ideal_generator(b);
        self.domain.divides(&gb, &self.reduce(a))
    }

    /// Some `q` with `q*b = a` in D/(m), assuming `b | a`.
    pub fn quotient(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.modulus.is_zero() {
            if b.is_zero() {
                return a.is_zero().then(|| self.zero());
            }
            let (q, r) = self.domain.div_rem(a, b);
            return r.is_zero().then_some(q);
        }
        let (c, u) = self.normalize(b);
        if c.is_zero() {
            return self.reduce(a).is_zero().then(|| self.zero());
        }
        let (q, r) = self.domain.div_rem(&self.reduce(a), &c);
        r.is_zero().then(|| self.mul(&q, &u))
    }

    /// Canonical residue of `a` modulo the canonical pivot `d` (a divisor of m):
    /// returns `(q, r)` with `a = q*d + r` in the covering domain.
    pub fn reduce_mod_pivot(&self, a: &Elem, d: &Elem) -> (Elem, Elem) {
        self.domain.div_rem(a, d)
    }

    /// Unimodular 2x2 transform `[[s, t], [u, v]]` sending `(a, b)` to `(g, 0)`.
    pub fn gcdex(&self, a: &Elem, b: &Elem) -> [Elem; 4] {
        let d = self.domain;
        let (g, s, t) = d.xgcd(a, b);
        let u = d.neg(&d.exact_div(b, &g));
        let v = d.exact_div(a, &g);
        [self.reduce(&s), self.reduce(&t), self.reduce(&u), self.reduce(&v)]
    }

    /// Number of elements when finite.
    pub fn cardinality(&self) -> Option<BigInt> {
        if self.modulus.is_zero() {
            return None;
        }
        Some(match &self.modulus {
            Elem::Int(n) => n.clone(),
            Elem::Poly(f) => BigInt::from(f.quotient_size()),
            Elem::Pair(..) => unreachable!(),
        })
    }

    /// All canonical residues, for finite rings of manageable size.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        let n: u64 = self.cardinality()?.try_into().ok()?;
        Some(match (&self.domain, &self.modulus) {
            (Domain::Integers, _) => (0..n).map(|i| Elem::Int(BigInt::from(i))).collect(),
            (Domain::Poly(p), Elem::Poly(f)) => {
                let deg = f.degree().unwrap_or(0);
                (0..n).map(|i| Elem::Poly(Poly::from_index(*p, i, deg))).collect()
            }
            _ => unreachable!(),
        })
    }

    /// Prime factorization of the modulus (empty for D itself).
    pub fn modulus_primes(&self) -> Result<Vec<(Elem, u32)>> {
        if self.modulus.is_zero() {
            return Ok(vec![]);
        }
        Ok(self.domain.factor(&self.modulus)?.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: i64) -> Base {
        Base::new(Domain::Integers, Elem::Int(BigInt::from(n)))
    }

    fn i(n: i64) -> Elem {
        Elem::Int(BigInt::from(n))
    }

    #[test]
    fn normalization_unit_over_zn() {
        for n in [2, 4, 6, 12, 30, 36, 60] {
            let b = zn(n);
            for a in 1..n {
                let (c, u) = b.normalize(&i(a));
                assert!(b.is_unit(&u), "n={n} a={a}");
                assert_eq!(c, b.ideal_generator(&i(a)), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn normalization_unit_over_poly_quotient() {
        let p = 3;
        let f = Poly::from_signed(p, &[0, 0, 1, 1]); // x^2 (x+1)
        let b = Base::new(Domain::Poly(p), Elem::Poly(f.clone()));
        for a in b.elements().unwrap().into_iter().filter(|a| !a.is_zero()) {
            let (c, u) = b.normalize(&a);
            assert!(b.is_unit(&u));
            assert_eq!(c, b.ideal_generator(&a));
        }
    }

    #[test]
    fn gcdex_is_unimodular() {
        let b = zn(12);
        let [s, t, u, v] = b.gcdex(&i(8), &i(6));
        let det = b.sub(&b.mul(&s, &v), &b.mul(&t, &u));
        assert!(b.is_unit(&det));
        assert!(b.add(&b.mul(&u, &i(8)), &b.mul(&v, &i(6))).is_zero());
    }

    #[test]
    fn negative_divisor_remainder() {
        let d = Domain::Integers;
        let (q, r) = d.div_rem(&i(7), &i(-3));
        assert_eq!(r, i(1));
        assert_eq!(d.add(&d.mul(&q, &i(-3)), &r), i(7));
    }
}
