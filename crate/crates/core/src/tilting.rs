//! Auslander–Bridger transpose, the dagger construction `S† = Ext¹(S, R)`,
//! and membership tests for the tilting and cotilting classes attached to a
//! finitely generated Gabriel topology.

use crate::error::{Error, Result};
use crate::fpmod::{CanonicalInvariants, FpModule};
use crate::ideals::Ideal;
use crate::matrix::RingMatrix;
use crate::spectrum::{GabrielTopologyFG, PrimeIdeal};

/// A module up to free summands.
#[derive(Clone, Debug)]
pub struct StableClass {
    pub representative: FpModule,
}

impl StableClass {
    pub fn of(m: &FpModule) -> Self {
        StableClass {
            representative: m.clone(),
        }
    }

    pub fn invariants(&self) -> CanonicalInvariants {
        self.representative.canonical_invariants().without_free()
    }
}

impl PartialEq for StableClass {
    fn eq(&self, other: &Self) -> bool {
        self.representative.ring == other.representative.ring && self.invariants() == other.invariants()
    }
}

/// Cokernel of the dual presentation: one generator per relation of `M`.
pub fn transpose(m: &FpModule) -> FpModule {
    FpModule {
        ring: m.ring.clone(),
        ngens: m.nrelations(),
        relations: m.relations.transpose(),
    }
}

/// `Ext¹(S, R)`.
pub fn dagger(s: &FpModule) -> Result<FpModule> {
    s.ext1(&FpModule::free(&s.ring, 1))
}

/// `M* = Hom(M, R)`.
pub fn dual(m: &FpModule) -> Result<FpModule> {
    m.hom(&FpModule::free(&m.ring, 1))
}

/// `R^n / (x_1, ..., x_n)ᵀ R` for the chosen generators of `I`.
pub fn ctr(ideal: &Ideal) -> FpModule {
    let ring = &ideal.ring;
    FpModule {
        ring: ring.clone(),
        ngens: ideal.ngens(),
        relations: RingMatrix::column_vector(ring, ideal.generators.clone()),
    }
}

/// Warning text when `ctr` is taken of the unit ideal (the result is free).
pub fn ctr_warning(ideal: &Ideal) -> Option<String> {
    ideal
        .is_unit_ideal()
        .then(|| format!("{ideal} is the unit ideal; its relation column splits off"))
}

/// Whether the first syzygy of the given presentation is projective.
pub fn pd_at_most_1(m: &FpModule) -> Result<bool> {
    m.syzygy().is_projective()
}

/// `M = I M`.
pub fn is_divisible(m: &FpModule, ideal: &Ideal) -> Result<bool> {
    if m.ring != ideal.ring {
        return Err(Error::RingMismatch(m.ring.to_string(), ideal.ring.to_string()));
    }
    Ok(m.quotient_by_ideal(&ideal.generators).is_zero())
}

pub fn in_tilting_class(m: &FpModule, g: &GabrielTopologyFG) -> Result<bool> {
    for i in &g.basis {
        if !is_divisible(m, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No nonzero element of `M` is killed by a basis ideal.
pub fn in_cotilting_class(m: &FpModule, g: &GabrielTopologyFG) -> Result<bool> {
    for i in &g.basis {
        let r_mod_i = FpModule::cyclic(&m.ring, &i.generators);
        if !r_mod_i.hom(m)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A module separating the cotilting classes of two topologies.
#[derive(Clone, Debug)]
pub struct CotiltingWitness {
    pub prime: PrimeIdeal,
    pub module: FpModule,
    /// Whether the module belongs to the class of the first topology (and
    /// not the second), or the other way round.
    pub in_first: bool,
}

/// `R/p` for a prime in the symmetric difference of the Thomason sets, or
/// `None` when they coincide.
pub fn cotilting_witness(g1: &GabrielTopologyFG, g2: &GabrielTopologyFG) -> Result<Option<CotiltingWitness>> {
    if g1.ring != g2.ring {
        return Err(Error::RingMismatch(g1.ring.to_string(), g2.ring.to_string()));
    }
    let (x1, x2) = (g1.xi(), g2.xi());
    // for p in X1 \ X2, some basis ideal of G1 lies in p and none of G2 does
    if let Some(p) = x1.prime_outside(&x2)? {
        return Ok(Some(CotiltingWitness {
            module: p.residue_module(),
            prime: p,
            in_first: false,
        }));
    }
    if let Some(p) = x2.prime_outside(&x1)? {
        return Ok(Some(CotiltingWitness {
            module: p.residue_module(),
            prime: p,
            in_first: true,
        }));
    }
    Ok(None)
}

/// Both sides of the functor identities `Hom(M, N) ≅ Tor₁(tr M, N)` and
/// `N ⊗ M ≅ Ext¹(tr M, N)` for a module with `M* = 0`.
#[derive(Clone, Debug)]
pub struct TransposeLemmaReport {
    pub hom: CanonicalInvariants,
    pub tor1_transpose: CanonicalInvariants,
    pub tensor: CanonicalInvariants,
    pub ext1_transpose: CanonicalInvariants,
    pub transpose_pd_at_most_1: bool,
}

impl TransposeLemmaReport {
    pub fn hom_matches(&self) -> bool {
        self.hom == self.tor1_transpose
    }

    pub fn tensor_matches(&self) -> bool {
        self.tensor == self.ext1_transpose
    }

    pub fn holds(&self) -> bool {
        self.hom_matches() && self.tensor_matches() && self.transpose_pd_at_most_1
    }
}

pub fn lemma_transpose_check(m: &FpModule, n: &FpModule) -> Result<TransposeLemmaReport> {
    if m.ring != n.ring {
        return Err(Error::RingMismatch(m.ring.to_string(), n.ring.to_string()));
    }
    if m.is_zero() {
        return Err(Error::HypothesisViolated("M is zero".into()));
    }
    if !dual(m)?.is_zero() {
        return Err(Error::HypothesisViolated("Hom(M, R) is nonzero".into()));
    }
    let tr = transpose(m);
    Ok(TransposeLemmaReport {
        hom: m.hom(n)?.canonical_invariants(),
        tor1_transpose: tr.tor1(n)?.canonical_invariants(),
        tensor: n.tensor(m)?.canonical_invariants(),
        ext1_transpose: tr.ext1(n)?.canonical_invariants(),
        transpose_pd_at_most_1: pd_at_most_1(&tr)?,
    })
}
