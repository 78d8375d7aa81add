//! Matrix normal forms and linear algebra over the supported rings.
//!
//! Smith normal form is available over the Euclidean rings Z and GF(p)[x].
//! Kernels and linear solving go through a single echelon routine: Howell
//! form over Z/n and GF(p)[x]/(f), Hermite form over Z and GF(p)[x]. Product
//! rings are handled componentwise.

mod echelon;
mod smith;

pub(crate) use echelon::{echelon, Echelon};
pub(crate) use smith::smith_diagonal;

use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::{Base, Elem, RingSpec, Side};

/// `U * A * V = D` with `D` diagonal, `d_1 | d_2 | ...` canonical, `U`, `V` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: RingMatrix,
    pub u: RingMatrix,
    pub v: RingMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &RingMatrix) -> Result<SmithDecomposition> {
    if !a.ring.is_euclidean() {
        return Err(Error::UnsupportedRing {
            op: "smith_normal_form",
            ring: a.ring.to_string(),
        });
    }
    let domain = a.ring.base().unwrap().domain;
    let run = smith::smith_with_transforms(domain, a.row_vecs(), a.cols());
    let flat = |m: Vec<Vec<Elem>>, r: usize, c: usize| {
        RingMatrix::from_raw(&a.ring, r, c, m.into_iter().flatten().collect())
    };
    Ok(SmithDecomposition {
        d: flat(run.a, a.rows(), a.cols()),
        u: flat(run.u.unwrap(), a.rows(), a.rows()),
        v: flat(run.v.unwrap(), a.cols(), a.cols()),
    })
}

/// Howell form over Z/n or GF(p)[x]/(f): the canonical generating rows of the
/// row span (zero matrix gives no rows).
pub fn howell_form(a: &RingMatrix) -> Result<RingMatrix> {
    let supported = matches!(a.ring, RingSpec::IntegersModN(_) | RingSpec::PolyQuotient { .. });
    if !supported {
        return Err(Error::UnsupportedRing {
            op: "howell_form",
            ring: a.ring.to_string(),
        });
    }
    let base = a.ring.base().unwrap();
    let e = echelon(&base, a.row_vecs(), a.cols());
    let n = e.rows.len();
    Ok(RingMatrix::from_raw(&a.ring, n, a.cols(), e.rows.into_iter().flatten().collect()))
}

/// Echelon form of `[A^T | I]`: rows are `(A y, y)` for `y` in a basis-like
/// generating set, saturated so that the rows with vanishing first block span
/// the kernel.
fn augmented_echelon(base: &Base, a: &RingMatrix) -> Echelon {
    let (g, c) = (a.rows(), a.cols());
    let rows = (0..c)
        .map(|i| {
            let mut r: Vec<Elem> = a.column(i);
            r.extend((0..c).map(|j| if i == j { base.one() } else { base.zero() }));
            r
        })
        .collect();
    echelon(base, rows, g + c)
}

fn base_kernel(base: &Base, a: &RingMatrix) -> Vec<Vec<Elem>> {
    let g = a.rows();
    let e = augmented_echelon(base, a);
    e.rows
        .into_iter()
        .zip(e.pivots)
        .filter(|(_, p)| *p >= g)
        .map(|(r, _)| r[g..].to_vec())
        .collect()
}

/// Generators (as columns) of `{x : A x = 0}`.
pub fn kernel(a: &RingMatrix) -> RingMatrix {
    let ring = &a.ring;
    let c = a.cols();
    match ring.components() {
        Some(_) => {
            let kl = kernel(&a.component(Side::Left));
            let kr = kernel(&a.component(Side::Right));
            let (zl, zr) = (ring.component(Side::Left).zero(), ring.component(Side::Right).zero());
            let mut cols: Vec<Vec<Elem>> = Vec::new();
            for j in 0..kl.cols() {
                cols.push(kl.column(j).into_iter().map(|x| Elem::pair(x, zr.clone())).collect());
            }
            for j in 0..kr.cols() {
                cols.push(kr.column(j).into_iter().map(|x| Elem::pair(zl.clone(), x)).collect());
            }
            columns_to_matrix(ring, c, cols)
        }
        None => {
            let base = ring.base().unwrap();
            columns_to_matrix(ring, c, base_kernel(&base, a))
        }
    }
}

pub(crate) fn columns_to_matrix(ring: &RingSpec, rows: usize, cols: Vec<Vec<Elem>>) -> RingMatrix {
    let k = cols.len();
    let mut m = RingMatrix::zeros(ring, rows, k);
    for (j, col) in cols.into_iter().enumerate() {
        for (i, x) in col.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

fn base_solve(base: &Base, a: &RingMatrix, b: &[Elem]) -> Option<Vec<Elem>> {
    let g = a.rows();
    let e = augmented_echelon(base, a);
    // rows are (A y, y); reducing (-b, 0) to (0, x) gives A x = b with x canonical mod ker A
    let mut v: Vec<Elem> = b.iter().map(|x| base.neg(x)).collect();
    v.extend((0..a.cols()).map(|_| base.zero()));
    let reduced = e.reduce(base, &v, g)?;
    Some(reduced[g..].to_vec())
}

/// Some `x` with `A x = b`, canonical modulo the kernel of `A`, or `None`.
pub fn solve(a: &RingMatrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    if b.len() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let ring = &a.ring;
    let b = b.iter().map(|x| ring.reduce(x)).collect::<Result<Vec<_>>>()?;
    Ok(match ring.components() {
        Some(_) => {
            let side = |s: Side| {
                let bs: Vec<Elem> = b.iter().map(|x| x.component(s).clone()).collect();
                solve(&a.component(s), &bs)
            };
            match (side(Side::Left)?, side(Side::Right)?) {
                (Some(l), Some(r)) => Some(l.into_iter().zip(r).map(|(x, y)| Elem::pair(x, y)).collect()),
                _ => None,
            }
        }
        None => base_solve(&ring.base().unwrap(), a, &b),
    })
}

/// Whether `v` lies in the column span of `a`.
pub fn column_span_contains(a: &RingMatrix, v: &[Elem]) -> Result<bool> {
    Ok(solve(a, v)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn ints(ring: &RingSpec, xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| ring.from_i64(x)).collect()
    }

    #[test]
    fn smith_examples() {
        let a = RingMatrix::from_i64(&z(), &[&[4], &[6]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.d.to_text(), "2;0");
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);

        let id = RingMatrix::identity(&z(), 2);
        assert_eq!(smith_normal_form(&id).unwrap().d, id);

        let a = RingMatrix::from_i64(&z(), &[&[2, 0], &[0, 3]]);
        assert_eq!(smith_normal_form(&a).unwrap().d.to_text(), "1,0;0,6");
    }

    #[test]
    fn smith_rejects_non_euclidean() {
        let r = RingSpec::integers_mod(6).unwrap();
        let a = RingMatrix::from_i64(&r, &[&[2]]);
        assert!(matches!(smith_normal_form(&a), Err(Error::UnsupportedRing { .. })));
    }

    #[test]
    fn howell_examples() {
        let z4 = RingSpec::integers_mod(4).unwrap();
        let h = howell_form(&RingMatrix::from_i64(&z4, &[&[2]])).unwrap();
        assert_eq!(h.to_text(), "2");
        let z6 = RingSpec::integers_mod(6).unwrap();
        let h = howell_form(&RingMatrix::from_i64(&z6, &[&[2], &[3]])).unwrap();
        assert_eq!(h.to_text(), "1");
        let h = howell_form(&RingMatrix::zeros(&z6, 2, 3)).unwrap();
        assert_eq!(h.rows(), 0);
        assert!(howell_form(&RingMatrix::from_i64(&z(), &[&[2]])).is_err());
    }

    #[test]
    fn howell_saturates_with_annihilator_rows() {
        // [2, 1] over Z/4 spans (0, 2) via 2*(2,1); the Howell form must expose it
        let z4 = RingSpec::integers_mod(4).unwrap();
        let h = howell_form(&RingMatrix::from_i64(&z4, &[&[2, 1]])).unwrap();
        assert_eq!(h.to_text(), "2,1;0,2");
    }

    #[test]
    fn kernel_examples() {
        let z4 = RingSpec::integers_mod(4).unwrap();
        let k = kernel(&RingMatrix::from_i64(&z4, &[&[2]]));
        assert_eq!(k.to_text(), "2");
        let k = kernel(&RingMatrix::from_i64(&z(), &[&[2]]));
        assert_eq!(k.cols(), 0);
        let k = kernel(&RingMatrix::from_i64(&z(), &[&[1, 1]]));
        assert_eq!(k.to_text(), "1;-1");
    }

    #[test]
    fn kernel_over_product_is_componentwise() {
        let r: RingSpec = "Z x Z/4".parse().unwrap();
        let a = RingMatrix::parse(&r, "(2,2)").unwrap();
        let k = kernel(&a);
        assert_eq!(k.to_text(), "(0,2)");
    }

    #[test]
    fn solve_examples() {
        let a = RingMatrix::from_i64(&z(), &[&[2]]);
        assert_eq!(solve(&a, &ints(&z(), &[6])).unwrap(), Some(ints(&z(), &[3])));
        assert_eq!(solve(&a, &ints(&z(), &[3])).unwrap(), None);
        let z4 = RingSpec::integers_mod(4).unwrap();
        let a = RingMatrix::from_i64(&z4, &[&[2]]);
        assert_eq!(solve(&a, &ints(&z4, &[2])).unwrap(), Some(ints(&z4, &[1])));
        assert!(matches!(solve(&a, &ints(&z4, &[1, 2])), Err(Error::ShapeMismatch(_))));
    }
}
