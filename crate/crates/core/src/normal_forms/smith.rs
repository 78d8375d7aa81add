//! Smith normal form over a Euclidean domain, with optional transforms.

use std::cmp::Ordering;

use crate::ring::{Domain, Elem};

pub(crate) struct SmithRun {
    pub a: Vec<Vec<Elem>>,
    pub u: Option<Vec<Vec<Elem>>>,
    pub v: Option<Vec<Vec<Elem>>>,
}

struct Smith {
    d: Domain,
    /// When set, entries are kept reduced modulo this element (diagonal-only mode).
    modulus: Option<Elem>,
    a: Vec<Vec<Elem>>,
    u: Option<Vec<Vec<Elem>>>,
    v: Option<Vec<Vec<Elem>>>,
    rows: usize,
    cols: usize,
}

fn identity(d: Domain, n: usize) -> Vec<Vec<Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d.one() } else { d.zero() }).collect())
        .collect()
}

impl Smith {
    fn reduce(&self, x: Elem) -> Elem {
        match &self.modulus {
            Some(m) => self.d.rem(&x, m),
            None => x,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v {
                row.swap(i, j);
            }
        }
    }

    /// row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &Elem) {
        let d = self.d;
        for j in 0..self.cols {
            if self.a[t][j].is_zero() {
                continue;
            }
            let x = d.sub(&self.a[i][j], &d.mul(q, &self.a[t][j]));
            self.a[i][j] = self.reduce(x);
        }
        if let Some(u) = &mut self.u {
            for j in 0..u[t].len() {
                if u[t][j].is_zero() {
                    continue;
                }
                u[i][j] = d.sub(&u[i][j], &d.mul(q, &u[t][j]));
            }
        }
    }

    /// col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &Elem) {
        let d = self.d;
        for i in 0..self.rows {
            if self.a[i][t].is_zero() {
                continue;
            }
            let x = d.sub(&self.a[i][j], &d.mul(q, &self.a[i][t]));
            self.a[i][j] = self.reduce(x);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if row[t].is_zero() {
                    continue;
                }
                row[j] = d.sub(&row[j], &d.mul(q, &row[t]));
            }
        }
    }

    fn smaller(&self, x: &Elem, best: Option<&Elem>) -> bool {
        match best {
            None => true,
            Some(b) => self.d.size_cmp(x, b) == Ordering::Less,
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if self.smaller(x, best.map(|(bi, bj)| &self.a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let d = self.d;
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let (q, _) = d.div_rem(&self.a[i][t], &pivot);
                    self.row_axpy(i, t, &q);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let (q, _) = d.div_rem(&self.a[t][j], &pivot);
                    self.col_axpy(j, t, &q);
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    // bring the smallest leftover remainder into the pivot
                    let mut best: Option<(usize, usize)> = None;
                    for i in t + 1..self.rows {
                        let x = &self.a[i][t];
                        if !x.is_zero() && self.smaller(x, best.map(|(bi, bj)| &self.a[bi][bj])) {
                            best = Some((i, t));
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = &self.a[t][j];
                        if !x.is_zero() && self.smaller(x, best.map(|(bi, bj)| &self.a[bi][bj])) {
                            best = Some((t, j));
                        }
                    }
                    let (bi, bj) = best.unwrap();
                    self.swap_rows(t, bi);
                    self.swap_cols(t, bj);
                    continue;
                }
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !d.divides(&pivot, &self.a[i][j]))
                });
                match offender {
                    Some(i) => {
                        let minus_one = d.from_i64(-1);
                        self.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            let (c, unit) = d.normalize(&self.a[t][t]);
            if unit != d.one() {
                for j in 0..self.cols {
                    let x = d.mul(&unit, &self.a[t][j]);
                    self.a[t][j] = self.reduce(x);
                }
                if let Some(u) = &mut self.u {
                    for x in u[t].iter_mut() {
                        *x = d.mul(&unit, x);
                    }
                }
            }
            debug_assert_eq!(self.a[t][t], self.reduce(c));
        }
    }
}

/// Full Smith decomposition `U*A*V = D` over the domain.
pub(crate) fn smith_with_transforms(d: Domain, a: Vec<Vec<Elem>>, cols: usize) -> SmithRun {
    let rows = a.len();
    let mut s = Smith {
        d,
        modulus: None,
        a,
        u: Some(identity(d, rows)),
        v: Some(identity(d, cols)),
        rows,
        cols,
    };
    s.run();
    SmithRun {
        a: s.a,
        u: s.u,
        v: s.v,
    }
}

/// Invariant factors of the D-module `D^rows / (columns of a + m*D^rows)`,
/// returned as one canonical entry per row (units included; zero means free).
pub(crate) fn smith_diagonal(d: Domain, a: Vec<Vec<Elem>>, cols: usize, modulus: &Elem) -> Vec<Elem> {
    let rows = a.len();
    let modulus_opt = (!modulus.is_zero()).then(|| modulus.clone());
    let a = match &modulus_opt {
        Some(m) => a
            .into_iter()
            .map(|row| row.into_iter().map(|x| d.rem(&x, m)).collect())
            .collect(),
        None => a,
    };
    let mut s = Smith {
        d,
        modulus: modulus_opt,
        a,
        u: None,
        v: None,
        rows,
        cols,
    };
    s.run();
    (0..rows)
        .map(|i| {
            let x = if i < cols { s.a[i][i].clone() } else { d.zero() };
            if modulus.is_zero() {
                x
            } else {
                d.gcd(&x, modulus)
            }
        })
        .collect()
}
