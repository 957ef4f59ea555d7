//! Exact cohomology computations on Grassmannians.
//!
//! The crate chains four kernels:
//!
//! * [`weights`] and [`charring`]: GL weights, Schur-functor characters,
//!   Littlewood–Richardson products and plethysm;
//! * [`bwb`]: Borel–Weil–Bott for bundles `Σ_{w'}U* ⊗ Σ_{w''}Q*` on `G(k,n)`;
//! * [`schubert`]: the Schubert-basis cohomology ring, Chern and Segre classes
//!   of Schur-functor bundles, and Hirzebruch–Riemann–Roch;
//! * [`deglocus`] and [`exactness`]: determinantal intersection numbers of a
//!   degeneracy locus and spectral-sequence / long-exact-sequence bookkeeping.
//!
//! [`pipeline`] runs them end to end for the surface of second-type lines on
//! the Fano scheme of a cubic fourfold.

pub mod bwb;
pub mod charring;
pub mod deglocus;
pub mod error;
pub mod exactness;
pub mod expr;
pub mod families;
pub mod pipeline;
pub mod schubert;
pub mod weights;

pub use bwb::{bwb_bundle, bwb_irreducible, BwbEntry, BwbResult, HomogeneousBundle};
pub use charring::{CharElement, MonomialCharacter};
pub use error::{Error, Result};
pub use schubert::{Class, Grassmannian, RootBundle, SchubertElement};
pub use weights::{rho, sort_regular, weyl_dimension, IntegerWeight, Partition, SortOutcome};
