//! Localization at the powers of a regular element `s`, truncated to finitely
//! many stages `R · 1/s^k`.
//!
//! The stage quotient `(1/s^k) R / R` is `R/(s^k)`. Divisibility of the limit
//! by a basis ideal `I` is witnessed at stage `k` when `s^k ∈ I`; the search is
//! bounded, so a negative answer only means "not witnessed up to the bound".

use crate::error::{Error, Result};
use crate::fpmod::{CanonicalInvariants, FpModule};
use crate::fuchs_salce::{build_truncation, DEFAULT_TREE_LIMIT};
use crate::ideals::Ideal;
use crate::ring::{Elem, RingSpec};
use crate::spectrum::GabrielTopologyFG;

pub const DEFAULT_STAGE_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationTower {
    pub ring: RingSpec,
    pub s: Elem,
    pub stages: usize,
}

fn check_regular(ring: &RingSpec, s: &Elem) -> Result<Elem> {
    let s = ring.reduce(s)?;
    if !ring.is_regular(&s) {
        return Err(Error::ZeroDivisor(ring.format_elem(&s)));
    }
    Ok(s)
}

impl LocalizationTower {
    pub fn new(ring: &RingSpec, s: &Elem, stages: usize) -> Result<Self> {
        Ok(LocalizationTower {
            ring: ring.clone(),
            s: check_regular(ring, s)?,
            stages,
        })
    }

    /// `R/(s^k)`.
    pub fn stage_quotient(&self, k: usize) -> FpModule {
        let sk = self.ring.pow(&self.s, k as u32);
        FpModule::cyclic(&self.ring, &[sk])
    }

    /// Smallest `k ≤ stages` with `s^k ∈ I`.
    pub fn first_witness(&self, ideal: &Ideal) -> Result<Option<usize>> {
        let mut sk = self.ring.one();
        for k in 0..=self.stages {
            if ideal.contains(&sk)? {
                return Ok(Some(k));
            }
            sk = self.ring.mul(&sk, &self.s);
        }
        Ok(None)
    }
}

/// Per basis ideal, the stage at which divisibility was witnessed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityVerdict {
    pub bound: usize,
    pub witnesses: Vec<(Ideal, Option<usize>)>,
    pub warnings: Vec<String>,
}

impl DivisibilityVerdict {
    /// True when every basis ideal was witnessed; false means "not witnessed
    /// up to the bound".
    pub fn witnessed(&self) -> bool {
        self.witnesses.iter().all(|(_, k)| k.is_some())
    }
}

pub fn divisible_in_limit(g: &GabrielTopologyFG, s: &Elem, bound: usize) -> Result<DivisibilityVerdict> {
    let tower = LocalizationTower::new(&g.ring, s, bound)?;
    let mut warnings = Vec::new();
    if !g.faithful {
        warnings.push(format!("topology {g} is not faithful"));
    }
    let witnesses = g
        .basis
        .iter()
        .map(|i| Ok((i.clone(), tower.first_witness(i)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DivisibilityVerdict {
        bound,
        witnesses,
        warnings,
    })
}

pub fn quotient_stage(ring: &RingSpec, s: &Elem, k: usize) -> Result<FpModule> {
    Ok(LocalizationTower::new(ring, s, k)?.stage_quotient(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerComparison {
    pub tree_quotient: CanonicalInvariants,
    pub stage: CanonicalInvariants,
}

impl TowerComparison {
    pub fn agree(&self) -> bool {
        self.tree_quotient == self.stage
    }
}

/// Compares `M_n / R w` for the path tree of `(s)` with the stage quotient `R/(s^n)`.
pub fn compare_with_fuchs_salce(ring: &RingSpec, s: &Elem, depth: usize) -> Result<TowerComparison> {
    let s = check_regular(ring, s)?;
    let tree = build_truncation(ring, &[Ideal::principal(ring, s.clone())], depth, DEFAULT_TREE_LIMIT)?;
    Ok(TowerComparison {
        tree_quotient: tree.without_root().canonical_invariants(),
        stage: quotient_stage(ring, &s, depth)?.canonical_invariants(),
    })
}
