//! Finite permutation-group engine for Engel commutator sets, the
//! generalized Fitting series and insoluble length, plus a harness that
//! checks the related structural theorems exhaustively on small groups.

pub mod chain;
pub mod corpus;
pub mod characteristic;
pub mod engel;
pub mod error;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod quotient;
pub mod report;
pub mod series;
pub mod subgroup;
pub mod suites;
pub mod zipper;

pub use error::{Error, Result};
pub use group::{close_group, ConjugacyClassTable, Fingerprint, GroupHandle, DEFAULT_ELEMENT_CAP};
pub use lattice::{NormalLattice, DEFAULT_LATTICE_COUNT_CAP};
pub use perm::Permutation;
pub use quotient::QuotientMap;
pub use series::{SeriesKind, SeriesRecord};
pub use subgroup::Subgroup;
pub use characteristic::{Analyzer, CharacteristicProfile, Limits};
