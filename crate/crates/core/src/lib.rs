//! Sylow branching coefficients at the prime 2 for symmetric-group
//! characters labelled by hook partitions.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`]: partitions, hooks, compositions, binary expansions.
//! * [`lr`]: Littlewood–Richardson coefficients by tableau enumeration,
//!   the hook closed form, and the `⋆` / `◇` set products.
//! * [`sym_chars`]: symmetric-group character values (Murnaghan–Nakayama).
//! * [`wreath`]: the Sylow 2-subgroups `P_{2^k}` as iterated wreath
//!   products: irreducible labels, conjugacy classes, character tables.
//! * [`branching`]: the brute-force restriction oracle, closed formulas
//!   for linear constituents, the box thresholds and their checks.
//! * [`verify`]: named sweeps comparing every closed formula against the
//!   oracle, used by the CLI's `verify` command.
//!
//! All arithmetic is exact.

pub mod branching;
pub mod error;
pub mod lr;
pub mod partitions;
pub mod sym_chars;
pub mod verify;
pub mod wreath;

pub use branching::{BranchingDecomposition, DegreeProfile, Mode, Oracle, ThresholdTable};
pub use error::{Error, Result};
pub use partitions::{BinaryExpansion, Composition, HookPartition, Partition};
pub use sym_chars::CycleType;
pub use wreath::{ClassDescriptor, ConjClassData, IrrLabel, LinearLabel, ProductIrrLabel, WreathTower};
