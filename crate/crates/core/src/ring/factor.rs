//! Factorization of integers (trial division) and of polynomials over GF(p)
//! (square-free, distinct-degree and equal-degree splitting).

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::poly::Poly;
use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

static TRIAL_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_TRIAL_BOUND);

/// Sets the process-wide trial-division bound used by integer factorization.
pub fn set_trial_bound(bound: u64) {
    TRIAL_BOUND.store(bound.max(2), Ordering::Relaxed);
}

pub fn trial_bound() -> u64 {
    TRIAL_BOUND.load(Ordering::Relaxed)
}

/// Factors `|n|` into primes by trial division up to the configured bound.
///
/// A cofactor left over after the bound is accepted as prime only when it is
/// below the square of the bound.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let bound = trial_bound();
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= bound {
        let dd = BigInt::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        if e > 0 {
            out.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let b = BigInt::from(d);
        if &b * &b <= rest {
            return Err(Error::FactorizationBound(n.to_string()));
        }
        match out.iter_mut().find(|(q, _)| *q == rest) {
            Some(entry) => entry.1 += 1,
            None => out.push((rest, 1)),
        }
    }
    out.sort();
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairs `(g, e)` with
/// `f = prod g^e` and each `g` square-free (not necessarily irreducible).
fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let p = f.characteristic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f is a p-th power.
        let root = pth_root(f);
        for (g, e) in squarefree(&root) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_one() {
        let root = pth_root(&c.monic());
        for (g, e) in squarefree(&root) {
            out.push((g, e * p as u32));
        }
    }
    out
}

fn pth_root(f: &Poly) -> Poly {
    let p = f.characteristic() as usize;
    let coeffs = f.coeffs().iter().step_by(p).copied().collect();
    Poly::new(f.characteristic(), coeffs)
}

/// Distinct-degree split of a monic square-free polynomial.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.characteristic();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::x(p);
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&BigUint::from(p), &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Splits a product of distinct irreducibles all of degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut StdRng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return vec![f.clone()];
    }
    let p = f.characteristic();
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let a = Poly::new(p, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let q = BigUint::from(p).pow(d as u32);
            let e = (q - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&Poly::one(p))
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Factors a nonzero polynomial into monic irreducibles; returns the unit
/// (leading coefficient) and the sorted list of `(prime, exponent)`.
pub fn factor_poly(f: &Poly) -> Result<(u64, Vec<(Poly, u32)>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let unit = f.leading();
    let monic = f.monic();
    let mut rng = StdRng::seed_from_u64(0x7469_6c74);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sf, e) in squarefree(&monic) {
        for (block, d) in distinct_degree(&sf) {
            for irr in equal_degree(&block, d, &mut rng) {
                let irr = irr.monic();
                match out.iter_mut().find(|(q, _)| *q == irr) {
                    Some(entry) => entry.1 += e,
                    None => out.push((irr, e)),
                }
            }
        }
    }
    out.sort();
    Ok((unit, out))
}

pub fn is_irreducible(f: &Poly) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return false;
    }
    match factor_poly(f) {
        Ok((_, fs)) => fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remultiply(p: u64, unit: u64, fs: &[(Poly, u32)]) -> Poly {
        fs.iter()
            .fold(Poly::constant(p, unit), |acc, (g, e)| acc.mul(&g.pow(*e)))
    }

    #[test]
    fn integer_factorization() {
        let f = factor_integer(&BigInt::from(12)).unwrap();
        assert_eq!(f, vec![(BigInt::from(2), 2), (BigInt::from(3), 1)]);
        let f = factor_integer(&BigInt::from(-97)).unwrap();
        assert_eq!(f, vec![(BigInt::from(97), 1)]);
        assert!(factor_integer(&BigInt::from(1)).unwrap().is_empty());
        assert!(matches!(factor_integer(&BigInt::zero()), Err(Error::ZeroInput)));
    }

    #[test]
    fn gf2_product_of_linears() {
        // x^2 + x = x (x + 1)
        let f = Poly::new(2, vec![0, 1, 1]);
        let (u, fs) = factor_poly(&f).unwrap();
        assert_eq!(u, 1);
        assert_eq!(
            fs,
            vec![(Poly::new(2, vec![0, 1]), 1), (Poly::new(2, vec![1, 1]), 1)]
        );
    }

    #[test]
    fn gf3_x2_plus_1_irreducible() {
        let f = Poly::new(3, vec![1, 0, 1]);
        // exhaustive root check over GF(3): a quadratic without roots is irreducible
        assert!((0..3).all(|r| f.eval(r) != 0));
        let (_, fs) = factor_poly(&f).unwrap();
        assert_eq!(fs, vec![(f.clone(), 1)]);
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        for p in [2u64, 3, 5] {
            let a = Poly::from_signed(p, &[1, 1]);
            let b = Poly::from_signed(p, &[1, 0, 1]);
            let f = a.pow(p as u32 + 1).mul(&b.pow(2)).scale(p - 1);
            let (u, fs) = factor_poly(&f).unwrap();
            assert_eq!(remultiply(p, u, &fs), f);
            assert!(fs.iter().all(|(g, _)| g.is_monic() && is_irreducible(g)));
        }
    }

    #[test]
    fn equal_degree_splitting_finds_all_quadratics() {
        // product of all monic irreducible quadratics over GF(3): x^9 - x divided by linears
        let p = 3;
        let x9 = Poly::monomial(p, 1, 9).sub(&Poly::x(p));
        let lin = Poly::monomial(p, 1, 3).sub(&Poly::x(p));
        let quad = x9.div_rem(&lin).0;
        let (_, fs) = factor_poly(&quad).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|(g, e)| g.degree() == Some(2) && *e == 1));
    }
}
