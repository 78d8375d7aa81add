//! Exact module calculus over small commutative rings.

pub mod error;
pub mod fpmod;
pub mod fuchs_salce;
pub mod ideals;
pub mod localization;
pub mod matrix;
pub mod normal_forms;
pub mod ring;
pub mod spectrum;
pub mod tilting;

pub use error::{Error, Result};
pub use fpmod::{CanonicalInvariants, FpModule};
pub use ideals::Ideal;
pub use matrix::RingMatrix;
pub use ring::{Elem, RingElement, RingSpec};
