//! Dense rectangular matrices over a supported ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Elem, RingSpec, Side};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingMatrix {
    pub ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl RingMatrix {
    pub fn zeros(ring: &RingSpec, rows: usize, cols: usize) -> Self {
        RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Self {
        let mut m = RingMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds from row-major entries, canonicalizing each.
    pub fn from_entries(ring: &RingSpec, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries
            .iter()
            .map(|e| ring.reduce(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Rows of possibly different lengths are rejected; `cols` disambiguates the
    /// empty case.
    pub fn from_rows(ring: &RingSpec, rows: Vec<Vec<Elem>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let n = rows.len();
        RingMatrix::from_entries(ring, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(ring: &RingSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| ring.from_i64(v)))
            .collect();
        RingMatrix {
            ring: ring.clone(),
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Column vector.
    pub fn column_vector(ring: &RingSpec, entries: Vec<Elem>) -> Self {
        let n = entries.len();
        RingMatrix {
            ring: ring.clone(),
            rows: n,
            cols: 1,
            entries,
        }
    }

    pub(crate) fn from_raw(ring: &RingSpec, rows: usize, cols: usize, entries: Vec<Elem>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        RingMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Elem) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Elem::is_zero)
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        RingMatrix::from_raw(&self.ring, self.cols, self.rows, out)
    }

    fn check_ring(&self, other: &RingMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(a, other.get(k, j)));
                }
                out.push(acc);
            }
        }
        Ok(RingMatrix::from_raw(ring, self.rows, other.cols, out))
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                x.len(),
                self.cols
            )));
        }
        let ring = &self.ring;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
            })
            .collect())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut out = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            out.extend_from_slice(self.row(i));
            out.extend_from_slice(other.row(i));
        }
        Ok(RingMatrix::from_raw(&self.ring, self.rows, cols, out))
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        let ring = &self.ring;
        let mut m = RingMatrix::zeros(ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_ring(other)?;
        let ring = &self.ring;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = RingMatrix::zeros(ring, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.set(i * other.rows + k, j * other.cols + l, ring.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Selects the given columns in order.
    pub fn select_columns(&self, cols: &[usize]) -> RingMatrix {
        let mut out = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                out.push(self.get(i, j).clone());
            }
        }
        RingMatrix::from_raw(&self.ring, self.rows, cols.len(), out)
    }

    /// First `n` rows.
    pub fn top_rows(&self, n: usize) -> RingMatrix {
        RingMatrix::from_raw(&self.ring, n, self.cols, self.entries[..n * self.cols].to_vec())
    }

    /// Reinterprets entries in another ring (e.g. lifting residues to the
    /// covering domain, or reducing into a quotient).
    pub fn change_ring(&self, ring: &RingSpec) -> Result<RingMatrix> {
        RingMatrix::from_entries(ring, self.rows, self.cols, self.entries.clone())
    }

    /// Projects a matrix over a product ring onto one component.
    pub fn component(&self, side: Side) -> RingMatrix {
        let ring = self.ring.component(side).clone();
        let entries = self.entries.iter().map(|e| e.component(side).clone()).collect();
        RingMatrix::from_raw(&ring, self.rows, self.cols, entries)
    }

    /// Recombines component matrices of equal shape into a product-ring matrix.
    pub fn from_components(ring: &RingSpec, left: &RingMatrix, right: &RingMatrix) -> RingMatrix {
        debug_assert_eq!((left.rows, left.cols), (right.rows, right.cols));
        let entries = left
            .entries
            .iter()
            .zip(&right.entries)
            .map(|(a, b)| Elem::pair(a.clone(), b.clone()))
            .collect();
        RingMatrix::from_raw(ring, left.rows, left.cols, entries)
    }

    /// Text format `a,b;c,d`.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| self.ring.format_elem(e))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses the `a,b;c,d` text format. Product elements `(a,b)` may contain commas.
    pub fn parse(ring: &RingSpec, text: &str) -> Result<RingMatrix> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(RingMatrix::zeros(ring, 0, 0));
        }
        let mut rows = Vec::new();
        for row in split_top(text, ';') {
            let mut entries = Vec::new();
            for cell in split_top(row, ',') {
                entries.push(ring.parse_elem(cell.trim())?);
            }
            rows.push(entries);
        }
        let cols = rows[0].len();
        RingMatrix::from_rows(ring, rows, cols)
    }

    /// Entries formatted as canonical literals, one vector per row.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.ring.format_elem(e)).collect())
            .collect()
    }
}

/// Splits on `sep` outside parentheses.
pub(crate) fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| self.ring.format_elem(e)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let z = RingSpec::Integers;
        let m = RingMatrix::parse(&z, "4,6;0,-2").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.to_text(), "4,6;0,-2");
        let prod: RingSpec = "Z x Z/4".parse().unwrap();
        let m = RingMatrix::parse(&prod, "(1,2),(3,5)").unwrap();
        assert_eq!(m.to_text(), "(1,2),(3,1)");
    }

    #[test]
    fn kron_shape_and_values() {
        let z = RingSpec::Integers;
        let a = RingMatrix::from_i64(&z, &[&[1, 2]]);
        let b = RingMatrix::from_i64(&z, &[&[0], &[3]]);
        let k = a.kron(&b).unwrap();
        assert_eq!(k.to_text(), "0,0;3,6");
    }

    #[test]
    fn product_mismatch_is_reported() {
        let z = RingSpec::Integers;
        let a = RingMatrix::from_i64(&z, &[&[1, 2]]);
        assert!(matches!(a.mul(&a), Err(Error::ShapeMismatch(_))));
    }
}
