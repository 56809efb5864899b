//! Finite Γ-modules, their partition types, and map counting.

pub mod abelian;
pub mod counting;
pub mod gamma;
pub mod partition;
pub mod structures;
pub mod types;

pub use abelian::AbelianGroup;
pub use counting::{count_maps, count_types, BruteCounter, MapKind, Method, Operand};
pub use gamma::{FixedNorm, GammaModule};
pub use partition::Partition;
pub use structures::{bruteforce_module_structures, isomorphic, ModuleStructure};
pub use types::{enumerate_types, ModuleType, TruncationSpec, TypeEntry};
