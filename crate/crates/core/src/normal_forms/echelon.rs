//! Row echelon forms over a residue ring D/(m).
//!
//! For `m != 0` this is the Howell form: pivots are canonical divisors of `m`,
//! entries above a pivot are reduced modulo it, and the row set is saturated
//! with annihilator multiples so that every element of the row span whose
//! first `j` entries vanish is a combination of the rows with pivot column
//! `>= j`. For `m = 0` the same procedure yields the Hermite normal form.

use crate::ring::{Base, Elem};

/// A matrix in echelon form, rows sorted by strictly increasing pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Echelon {
    pub rows: Vec<Vec<Elem>>,
    pub pivots: Vec<usize>,
}

fn combine(base: &Base, rows: &mut [Vec<Elem>], k: usize, i: usize, m: &[Elem; 4]) {
    let [s, t, u, v] = m;
    let (rk, ri) = (&rows[k], &rows[i]);
    let new_k: Vec<Elem> = rk
        .iter()
        .zip(ri)
        .map(|(a, b)| base.add(&base.mul(s, a), &base.mul(t, b)))
        .collect();
    let new_i: Vec<Elem> = rk
        .iter()
        .zip(ri)
        .map(|(a, b)| base.add(&base.mul(u, a), &base.mul(v, b)))
        .collect();
    rows[k] = new_k;
    rows[i] = new_i;
}

fn axpy(base: &Base, target: &mut [Elem], q: &Elem, src: &[Elem]) {
    for (x, y) in target.iter_mut().zip(src) {
        if y.is_zero() {
            continue;
        }
        *x = base.sub(x, &base.mul(q, y));
    }
}

/// Computes the Howell (or Hermite, for `m = 0`) form of the row span.
pub(crate) fn echelon(base: &Base, rows: Vec<Vec<Elem>>, ncols: usize) -> Echelon {
    let mut rows: Vec<Vec<Elem>> = rows
        .into_iter()
        .map(|r| r.iter().map(|x| base.reduce(x)).collect())
        .filter(|r: &Vec<Elem>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for j in 0..ncols {
        if k >= rows.len() {
            break;
        }
        for i in k + 1..rows.len() {
            if rows[i][j].is_zero() {
                continue;
            }
            if rows[k][j].is_zero() {
                rows.swap(k, i);
                continue;
            }
            let m = base.gcdex(&rows[k][j], &rows[i][j]);
            combine(base, &mut rows, k, i, &m);
        }
        if rows[k][j].is_zero() {
            continue;
        }
        let (_, unit) = base.normalize(&rows[k][j]);
        if unit != base.one() {
            rows[k] = rows[k].iter().map(|x| base.mul(&unit, x)).collect();
        }
        let pivot = rows[k][j].clone();
        for i in 0..k {
            if rows[i][j].is_zero() {
                continue;
            }
            let (q, _) = base.reduce_mod_pivot(&rows[i][j], &pivot);
            if q.is_zero() {
                continue;
            }
            let src = rows[k].clone();
            axpy(base, &mut rows[i], &q, &src);
        }
        let ann = base.annihilator(&pivot);
        if !ann.is_zero() {
            let extra: Vec<Elem> = rows[k].iter().map(|x| base.mul(&ann, x)).collect();
            if extra.iter().any(|x| !x.is_zero()) {
                rows.push(extra);
            }
        }
        pivots.push(j);
        k += 1;
    }
    rows.truncate(k);
    debug_assert!(rows.iter().all(|r| r.iter().any(|x| !x.is_zero())));
    Echelon { rows, pivots }
}

impl Echelon {
    /// Reduces `v` by the echelon rows. Entries in columns `< exact_cols` must
    /// be cleared exactly (returns `None` if that is impossible); later columns
    /// are reduced to canonical remainders.
    pub fn reduce(&self, base: &Base, v: &[Elem], exact_cols: usize) -> Option<Vec<Elem>> {
        let mut v: Vec<Elem> = v.iter().map(|x| base.reduce(x)).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let pivot = &row[p];
            let q = if p < exact_cols {
                let (q, r) = base.reduce_mod_pivot(&v[p], pivot);
                if !r.is_zero() {
                    return None;
                }
                q
            } else {
                base.reduce_mod_pivot(&v[p], pivot).0
            };
            axpy(base, &mut v, &q, row);
        }
        if v[..exact_cols].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(v)
    }
}
