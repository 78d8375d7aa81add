//! Finitely generated ideals with an ordered, possibly redundant generator list.
//!
//! Every ideal of a supported ring is principal (componentwise for products),
//! so containment questions reduce to divisibility of a canonical generator
//! over the covering domain. The generator list itself is kept verbatim since
//! tree constructions depend on it.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{split_top, RingMatrix};
use crate::normal_forms::{kernel, solve};
use crate::ring::{Elem, RingSpec, Side};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub ring: RingSpec,
    pub generators: Vec<Elem>,
}

impl Ideal {
    pub fn new(ring: &RingSpec, generators: Vec<Elem>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Semantic("an ideal needs at least one generator".into()));
        }
        let generators = generators.iter().map(|g| ring.reduce(g)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal {
            ring: ring.clone(),
            generators,
        })
    }

    pub fn principal(ring: &RingSpec, g: Elem) -> Self {
        Ideal::new(ring, vec![g]).expect("one generator")
    }

    pub fn from_i64(ring: &RingSpec, gens: &[i64]) -> Self {
        Ideal::new(ring, gens.iter().map(|&g| ring.from_i64(g)).collect()).expect("nonempty generator list")
    }

    pub fn unit(ring: &RingSpec) -> Self {
        Ideal::principal(ring, ring.one())
    }

    pub fn zero(ring: &RingSpec) -> Self {
        Ideal::principal(ring, ring.zero())
    }

    /// Parses `(a,b,...)` or the annotated form `(c:a,b,...)`, where `c` is a
    /// generator of the same ideal given for readability (checked).
    pub fn parse(ring: &RingSpec, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Syntax {
                line: 1,
                column: 1,
                message: format!("expected an ideal in parentheses, found `{t}`"),
            })?;
        let (canonical, gens) = match split_top(inner, ':').as_slice() {
            [gens] => (None, *gens),
            [c, gens] => (Some(*c), *gens),
            _ => {
                return Err(Error::Syntax {
                    line: 1,
                    column: 1,
                    message: format!("too many `:` in ideal `{t}`"),
                })
            }
        };
        let elems = split_top(gens, ',')
            .into_iter()
            .map(|g| ring.parse_elem(g.trim()))
            .collect::<Result<Vec<_>>>()?;
        let ideal = Ideal::new(ring, elems)?;
        if let Some(c) = canonical {
            let c = Ideal::principal(ring, ring.parse_elem(c.trim())?);
            if !c.same_ideal(&ideal) {
                return Err(Error::Semantic(format!(
                    "`{}` does not generate the ideal ({})",
                    ring.format_elem(&c.generators[0]),
                    ideal.generators_text()
                )));
            }
        }
        Ok(ideal)
    }

    /// Parses a list of ideals separated by `,` or `;` at top level.
    pub fn parse_list(ring: &RingSpec, text: &str) -> Result<Vec<Ideal>> {
        let sep = if split_top(text, ';').len() > 1 { ';' } else { ',' };
        split_top(text, sep)
            .into_iter()
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Ideal::parse(ring, s))
            .collect()
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    fn check(&self, other: &RingSpec) -> Result<()> {
        if self.ring != *other {
            return Err(Error::RingMismatch(self.ring.to_string(), other.to_string()));
        }
        Ok(())
    }

    /// Generator of the ideal lifted to the covering domain: a divisor of the
    /// modulus (the modulus itself for the zero ideal of a proper quotient).
    /// Pairs for product rings.
    pub fn cover_generator(&self) -> Elem {
        match self.ring.components() {
            Some(_) => Elem::pair(
                self.component(Side::Left).cover_generator(),
                self.component(Side::Right).cover_generator(),
            ),
            None => {
                let base = self.ring.base().unwrap();
                let d = base.domain;
                d.gcd(&d.gcd_all(&self.generators), &base.modulus)
            }
        }
    }

    /// A single canonical generator as a ring element.
    pub fn canonical_generator(&self) -> Elem {
        match self.ring.components() {
            Some(_) => Elem::pair(
                self.component(Side::Left).canonical_generator(),
                self.component(Side::Right).canonical_generator(),
            ),
            None => self.ring.base().unwrap().reduce(&self.cover_generator()),
        }
    }

    pub fn canonicalize(&self) -> Ideal {
        Ideal::principal(&self.ring, self.canonical_generator())
    }

    pub fn component(&self, side: Side) -> Ideal {
        Ideal {
            ring: self.ring.component(side).clone(),
            generators: self.generators.iter().map(|g| g.component(side).clone()).collect(),
        }
    }

    pub fn contains(&self, x: &Elem) -> Result<bool> {
        let row = RingMatrix::from_rows(&self.ring, vec![self.generators.clone()], self.ngens())?;
        Ok(solve(&row, std::slice::from_ref(x))?.is_some())
    }

    pub fn is_subset(&self, other: &Ideal) -> Result<bool> {
        other.check(&self.ring)?;
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.canonical_generator() == other.canonical_generator()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.ring.is_unit(&self.canonical_generator())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit_ideal()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(Elem::is_zero)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(&other.ring)?;
        let ring = &self.ring;
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| ring.mul(a, b)))
            .collect();
        Ideal::new(ring, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(&other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `(I : t) = { r | t r ∈ I }`, from the kernel of `[t | x_1 ... x_k]`.
    pub fn colon(&self, t: &Elem) -> Result<Ideal> {
        let ring = &self.ring;
        let t = ring.reduce(t)?;
        let mut row = vec![t];
        row.extend(self.generators.iter().cloned());
        let n = row.len();
        let k = kernel(&RingMatrix::from_rows(ring, vec![row], n)?);
        Ok(self.ideal_from_first_row(&k))
    }

    /// `{ r | r x_i = 0 for all i }`, the kernel of `r ↦ (r x_1, ..., r x_k)`.
    pub fn annihilator(&self) -> Ideal {
        let ring = &self.ring;
        let col = RingMatrix::column_vector(ring, self.generators.clone());
        let k = kernel(&col);
        self.ideal_from_first_row(&k)
    }

    fn ideal_from_first_row(&self, k: &RingMatrix) -> Ideal {
        let gens: Vec<Elem> = (0..k.cols()).map(|j| k.get(0, j).clone()).filter(|x| !x.is_zero()).collect();
        if gens.is_empty() {
            Ideal::zero(&self.ring)
        } else {
            Ideal {
                ring: self.ring.clone(),
                generators: gens,
            }
        }
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator().is_zero()
    }

    pub fn generators_text(&self) -> String {
        self.generators
            .iter()
            .map(|g| self.ring.format_elem(g))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The canonical generator, formatted.
    pub fn canonical_text(&self) -> String {
        self.ring.format_elem(&self.canonical_generator())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generators_text())
    }
}
