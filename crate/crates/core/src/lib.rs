//! Skew generalized power series rings `R[[S, ω, ≤]]` over finite
//! coefficient rings, with exhaustive checks of the (S, ω)-McCoy condition.
//!
//! - [`ring`], [`build`], [`ideal`], [`props`]: finite rings, their ideals and
//!   the ring-theoretic predicates (abelian, semi-regular, quasi-duo, ...).
//! - [`omonoid`]: strictly totally ordered exponent monoids.
//! - [`endo`], [`series`]: monoid actions by endomorphisms and the twisted
//!   convolution ring of finitely supported series.
//! - [`checkers`]: McCoy search and the instance-level lemma checks.
//! - [`harness`]: catalog, campaign configuration and JSON reports.

pub mod actions;
pub mod build;
pub mod checkers;
pub mod endo;
pub mod error;
pub mod harness;
pub mod ideal;
pub mod omonoid;
pub mod props;
pub mod ring;
pub mod series;

pub use build::{build_ring, RingSpec};
pub use error::{CheckError, MonoidError, RingError, SeriesError};
pub use ideal::{Ideal, Side, Sidedness};
pub use omonoid::{MonoidElem, MonoidKind, OrderedMonoid};
pub use ring::{Elem, ElemSet, FiniteRing};
pub use series::{MonoidAction, SkewSeries};

/// Enumeration limits shared by the ring predicates and the searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest ring order for ideal enumeration.
    pub ideal_cap: usize,
    /// Largest ring order for endomorphism enumeration.
    pub endo_cap: usize,
    /// Maximum number of (f, g) pairs an exhaustive search may visit.
    pub budget: u64,
}

impl Limits {
    pub fn pair_budget(&self) -> u128 {
        self.budget as u128
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ideal_cap: 64,
            endo_cap: 16,
            budget: 10_000_000,
        }
    }
}
