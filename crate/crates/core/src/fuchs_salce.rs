//! Finite-depth truncations of the tree module of a list of ideals.
//!
//! Nodes are finite sequences of pairs `(ideal index, generator index)`; the
//! empty sequence `w` is the root. For every node `λ` of depth `< n` and every
//! ideal `I` with chosen generators `x_1, ..., x_k` there is one relation
//! `λ = Σ x_j (λ, (I, j))`. Nodes are numbered breadth-first, children in
//! input order, so each depth occupies a contiguous block of generators.

use crate::error::{Error, Result};
use crate::fpmod::FpModule;
use crate::ideals::Ideal;
use crate::matrix::RingMatrix;
use crate::normal_forms::{columns_to_matrix, solve};
use crate::ring::{Elem, RingSpec};
use crate::spectrum::GabrielTopologyFG;
use crate::tilting::{ctr, in_tilting_class, is_divisible};

pub const DEFAULT_TREE_LIMIT: u128 = 10_000;

#[derive(Clone, Debug)]
pub struct TreeTruncation {
    pub ring: RingSpec,
    pub ideals: Vec<Ideal>,
    pub depth: usize,
    /// `(ideal, generator)` pairs in child order.
    pub labels: Vec<(usize, usize)>,
    /// First generator index of each depth `0..=depth` (plus one past the end).
    pub level_starts: Vec<usize>,
    pub presentation: FpModule,
}

/// Number of generators `Σ_{d ≤ n} b^d` for branching `b`.
pub fn tree_size(branching: usize, depth: usize) -> Option<u128> {
    let b = branching as u128;
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=depth {
        total = total.checked_add(level)?;
        level = level.checked_mul(b)?;
    }
    Some(total)
}

pub fn build_truncation(ring: &RingSpec, ideals: &[Ideal], depth: usize, limit: u128) -> Result<TreeTruncation> {
    for i in ideals {
        if i.ring != *ring {
            return Err(Error::RingMismatch(ring.to_string(), i.ring.to_string()));
        }
    }
    let labels: Vec<(usize, usize)> = ideals
        .iter()
        .enumerate()
        .flat_map(|(a, i)| (0..i.ngens()).map(move |k| (a, k)))
        .collect();
    let b = labels.len();
    let needed = tree_size(b, depth).unwrap_or(u128::MAX);
    if needed > limit {
        return Err(Error::SizeLimitExceeded { needed, limit });
    }
    let mut level_starts = vec![0usize];
    let mut width = 1usize;
    for _ in 0..=depth {
        let last = *level_starts.last().unwrap();
        level_starts.push(last + width);
        width *= b;
    }
    let ngens = level_starts[depth + 1];
    let mut cols: Vec<Vec<Elem>> = Vec::new();
    for d in 0..depth {
        for pos in 0..level_starts[d + 1] - level_starts[d] {
            let node = level_starts[d] + pos;
            let first_child = level_starts[d + 1] + pos * b;
            let mut offset = 0;
            for ideal in ideals {
                let mut col = vec![ring.zero(); ngens];
                col[node] = ring.one();
                for (k, x) in ideal.generators.iter().enumerate() {
                    col[first_child + offset + k] = ring.neg(x);
                }
                offset += ideal.ngens();
                cols.push(col);
            }
        }
    }
    let presentation = FpModule::new(ring, ngens, columns_to_matrix(ring, ngens, cols))?;
    Ok(TreeTruncation {
        ring: ring.clone(),
        ideals: ideals.to_vec(),
        depth,
        labels,
        level_starts,
        presentation,
    })
}

impl TreeTruncation {
    pub fn branching(&self) -> usize {
        self.labels.len()
    }

    pub fn ngens(&self) -> usize {
        self.presentation.ngens
    }

    pub fn nrelations(&self) -> usize {
        self.presentation.nrelations()
    }

    /// Number of nodes of the given depth.
    pub fn level_width(&self, d: usize) -> usize {
        self.level_starts[d + 1] - self.level_starts[d]
    }

    /// Generator index of a node given as a sequence of `(ideal, generator)` pairs.
    pub fn node_index(&self, path: &[(usize, usize)]) -> Option<usize> {
        if path.len() > self.depth {
            return None;
        }
        let mut pos = 0usize;
        for step in path {
            let j = self.labels.iter().position(|l| l == step)?;
            pos = pos * self.branching() + j;
        }
        Some(self.level_starts[path.len()] + pos)
    }

    /// Inverse of [`node_index`](Self::node_index).
    pub fn node_path(&self, index: usize) -> Option<Vec<(usize, usize)>> {
        let d = (0..=self.depth).find(|&d| index < self.level_starts[d + 1])?;
        let mut pos = index - self.level_starts[d];
        let mut path = vec![(0, 0); d];
        for slot in path.iter_mut().rev() {
            *slot = self.labels[pos % self.branching()];
            pos /= self.branching();
        }
        Some(path)
    }

    /// Ideals whose annihilator is nonzero; the construction assumes none.
    pub fn non_faithful(&self) -> Vec<usize> {
        (0..self.ideals.len()).filter(|&i| !self.ideals[i].is_faithful()).collect()
    }

    /// `M_k`: the sub-presentation on nodes of depth `≤ k`.
    pub fn level_module(&self, k: usize) -> FpModule {
        let k = k.min(self.depth);
        let ngens = self.level_starts[k + 1];
        let nrel = self.level_starts[k] * self.ideals.len();
        let rel = &self.presentation.relations;
        let mut m = RingMatrix::zeros(&self.ring, ngens, nrel);
        for i in 0..ngens {
            for j in 0..nrel {
                m.set(i, j, rel.get(i, j).clone());
            }
        }
        FpModule {
            ring: self.ring.clone(),
            ngens,
            relations: m,
        }
    }

    /// `M_n / R w`.
    pub fn without_root(&self) -> FpModule {
        self.presentation.kill_generators(&[0])
    }
}

/// Presentation of `M_{k+1}/M_k` together with the expected sum of copies of
/// `ctr(R/I)`.
#[derive(Clone, Debug)]
pub struct FiltrationCheck {
    pub k: usize,
    pub quotient: FpModule,
    pub expected: FpModule,
    pub isomorphic: bool,
}

pub fn filtration_quotient(t: &TreeTruncation, k: usize) -> Result<FiltrationCheck> {
    if k >= t.depth {
        return Err(Error::ShapeMismatch(format!("level {k} needs depth > {k}, have {}", t.depth)));
    }
    let m = t.level_module(k + 1);
    let quotient = m.kill_generators(&(0..t.level_starts[k + 1]).collect::<Vec<_>>());
    let mut expected = FpModule::zero(&t.ring);
    for _ in 0..t.level_width(k) {
        for i in &t.ideals {
            expected = expected.direct_sum(&ctr(i))?;
        }
    }
    let isomorphic = quotient.is_isomorphic(&expected)?;
    Ok(FiltrationCheck {
        k,
        quotient,
        expected,
        isomorphic,
    })
}

/// `M_n ⊕ M_n / R w`.
pub fn delta_truncation(t: &TreeTruncation) -> Result<FpModule> {
    t.presentation.direct_sum(&t.without_root())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub checked: usize,
    /// `(node index, ideal index)` pairs with the node outside `I M_n`.
    pub failures: Vec<(usize, usize)>,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every node of depth `< n` lies in `I M_n` for every ideal `I`.
pub fn verify_depth_divisibility(t: &TreeTruncation) -> Result<DivisibilityReport> {
    let ring = &t.ring;
    let n = t.ngens();
    let interior = t.level_starts[t.depth];
    let mut report = DivisibilityReport {
        checked: 0,
        failures: Vec::new(),
    };
    for (a, ideal) in t.ideals.iter().enumerate() {
        // relations together with x e_j for every generator x of I and every node j
        let mut cols: Vec<Vec<Elem>> = (0..t.nrelations()).map(|j| t.presentation.relations.column(j)).collect();
        for x in &ideal.generators {
            for j in 0..n {
                let mut c = vec![ring.zero(); n];
                c[j] = x.clone();
                cols.push(c);
            }
        }
        let span = columns_to_matrix(ring, n, cols);
        for node in 0..interior {
            let mut e = vec![ring.zero(); n];
            e[node] = ring.one();
            report.checked += 1;
            if solve(&span, &e)?.is_none() {
                report.failures.push((node, a));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeItem {
    pub label: String,
    pub holds: bool,
    /// Whether the statement is expected to hold at finite depth.
    pub expected: bool,
}

/// Tilting-class probes visible at finite depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub items: Vec<ProbeItem>,
}

impl ProbeReport {
    /// Every item expected to hold does hold.
    pub fn consistent(&self) -> bool {
        self.items.iter().filter(|i| i.expected).all(|i| i.holds)
    }
}

/// For each summand of the truncated module: divisibility by the topology
/// (generally failing at finite depth) and, per basis ideal, vanishing of
/// `Ext¹(ctr(R/I), -)`, which must match divisibility by `I`.
pub fn ext_vanishing_probe(t: &TreeTruncation, g: &GabrielTopologyFG) -> Result<ProbeReport> {
    let mut items = Vec::new();
    let pieces = [("M_n", t.presentation.clone()), ("M_n/Rw", t.without_root())];
    for (name, piece) in &pieces {
        items.push(ProbeItem {
            label: format!("{name} is divisible by every basis ideal"),
            holds: in_tilting_class(piece, g)?,
            expected: false,
        });
        for i in &g.basis {
            let divisible = is_divisible(piece, i)?;
            let vanishes = ctr(i).ext1(piece)?.is_zero();
            items.push(ProbeItem {
                label: format!("Ext1(ctr{i}, {name}) = 0 iff {name} = {i}{name}"),
                holds: divisible == vanishes,
                expected: true,
            });
            items.push(ProbeItem {
                label: format!("Ext1(ctr{i}, {name}) = 0"),
                holds: vanishes,
                expected: false,
            });
        }
    }
    Ok(ProbeReport { items })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::Integers
    }

    fn tree(ring: &RingSpec, spec: &str, depth: usize) -> TreeTruncation {
        let ideals = Ideal::parse_list(ring, spec).unwrap();
        build_truncation(ring, &ideals, depth, DEFAULT_TREE_LIMIT).unwrap()
    }

    fn cyc(ring: &RingSpec, d: i64) -> FpModule {
        FpModule::cyclic(ring, &[ring.from_i64(d)])
    }

    #[test]
    fn path_tree() {
        let r = z();
        let t = tree(&r, "(2)", 3);
        assert_eq!((t.ngens(), t.nrelations()), (4, 3));
        assert!(t.presentation.is_isomorphic(&FpModule::free(&r, 1)).unwrap());
        assert!(t.without_root().is_isomorphic(&cyc(&r, 8)).unwrap());
        let d = delta_truncation(&t).unwrap();
        assert!(d.is_isomorphic(&FpModule::free(&r, 1).direct_sum(&cyc(&r, 8)).unwrap()).unwrap());
    }

    #[test]
    fn branching_tree() {
        let r = z();
        let t = tree(&r, "(2:4,6)", 1);
        assert_eq!((t.ngens(), t.nrelations()), (3, 1));
        assert_eq!(t.presentation.relations.to_text(), "1;-4;-6");
        assert!(t.presentation.is_isomorphic(&FpModule::free(&r, 2)).unwrap());
        let t0 = tree(&r, "(2)", 0);
        assert!(t0.presentation.is_isomorphic(&FpModule::free(&r, 1)).unwrap());
        assert!(delta_truncation(&t0).unwrap().is_isomorphic(&FpModule::free(&r, 1)).unwrap());
    }

    #[test]
    fn sizes_and_indexing() {
        let r = z();
        let t = tree(&r, "(2:4,6);(3:3)", 3);
        assert_eq!(t.ngens(), 1 + 3 + 9 + 27);
        assert_eq!(t.nrelations(), (1 + 3 + 9) * 2);
        for i in 0..t.ngens() {
            let path = t.node_path(i).unwrap();
            assert_eq!(t.node_index(&path), Some(i));
        }
        assert_eq!(t.node_index(&[(1, 0)]), Some(3));
        let ideals = Ideal::parse_list(&r, "(2:4,6)").unwrap();
        assert!(matches!(
            build_truncation(&r, &ideals, 20, DEFAULT_TREE_LIMIT),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn filtration_examples() {
        let r = z();
        let t = tree(&r, "(2:4,6)", 2);
        let f = filtration_quotient(&t, 0).unwrap();
        assert!(f.isomorphic);
        assert!(f.quotient.is_isomorphic(&FpModule::free(&r, 1).direct_sum(&cyc(&r, 2)).unwrap()).unwrap());
        let t = tree(&r, "(2)", 2);
        let f = filtration_quotient(&t, 1).unwrap();
        assert!(f.isomorphic && f.quotient.is_isomorphic(&cyc(&r, 2)).unwrap());
        let t = tree(&r, "(2);(3)", 1);
        let f = filtration_quotient(&t, 0).unwrap();
        assert!(f.isomorphic && f.quotient.is_isomorphic(&cyc(&r, 6)).unwrap());
    }

    #[test]
    fn divisibility_examples() {
        let r = z();
        let rep = verify_depth_divisibility(&tree(&r, "(2)", 2)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked, 2);
        assert!(verify_depth_divisibility(&tree(&r, "(2:4,6)", 1)).unwrap().passed());
        let rep = verify_depth_divisibility(&tree(&r, "(2)", 0)).unwrap();
        assert_eq!(rep.checked, 0);
    }

    #[test]
    fn probes() {
        let r = z();
        let t = tree(&r, "(2)", 3);
        let g = GabrielTopologyFG::new(&r, vec![Ideal::from_i64(&r, &[2])]).unwrap();
        let rep = ext_vanishing_probe(&t, &g).unwrap();
        assert!(rep.consistent());
        // Ext1(Z/2, Z/8) = Z/2: the finite stage is not yet divisible
        assert!(!rep.items.iter().find(|i| i.label == "Ext1(ctr(2), M_n/Rw) = 0").unwrap().holds);
        let triv = GabrielTopologyFG::trivial(&r);
        let rep = ext_vanishing_probe(&t, &triv).unwrap();
        assert!(rep.items.iter().all(|i| i.holds));
    }
}
