//! Group-invariant matroids of low rank: classification of rank 2 and 3
//! invariant matroids through equivalence relations on coset spaces,
//! difference-system constructions in abelian groups, the loopless/simple
//! quotient correspondence, and a brute-force oracle to check them against.

pub mod bits;
pub mod cli;
pub mod dds;
pub mod equiv;
pub mod error;
pub mod groups;
pub mod matroid;
pub mod oracle;
pub mod partitions;
pub mod props;
pub mod quotient;
pub mod rank3;

pub use error::{Error, Result};
pub use groups::{ActionKind, CosetSpace, FiniteGroup, GroupAction, Subgroup};
pub use matroid::{Matroid, MatroidStats};
