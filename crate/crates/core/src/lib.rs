//! Power-residue invariants mod N and the p-rank of the class group of the
//! Kummer field `Q(N^(1/p))`.
//!
//! For a prime `N ≡ 1 (mod p)` the crate computes the factorial invariants
//! `S_i = ∏ ((Mk)!)^(k^i)` (with `M = (N-1)/p`) and their relatives
//! (`M_i`, `A_m`, Merel's `C`), reads off the Selmer dimension string
//! `h(-1) … h(-(p-3))` from pth-power tests, and turns that string into
//! exact values or bounds for the p-rank `r_K`.
//!
//! Layout:
//! - [`modarith`]: arithmetic in `F_N`, residue characters, square roots and
//!   roots of small polynomials.
//! - [`invariants`]: the single factorial pass and every invariant built on it.
//! - [`regularity`]: Bernoulli numbers mod p and regular pairs.
//! - [`selmer`]: dimension strings and rank estimates.
//! - [`survey`]: sieving, per-prime records, parallel resumable surveys.
//! - [`verify`]: the identity suite relating the different invariant routes.

pub mod error;
pub mod invariants;
pub mod modarith;
pub mod regularity;
pub mod selmer;
pub mod survey;
pub mod verify;

pub use error::{Error, Result};
pub use invariants::{FactorialCheckpoints, InvariantSet};
pub use modarith::{PrimePair, PthRootOfUnity, ResidueClass};
pub use regularity::{BernoulliTable, Regularity, RegularityVerdict};
pub use selmer::{Dimension, DimensionString, PrimeContext, RankEstimate};
pub use survey::{PrimeRecord, SurveyConfig, TableAggregate};
