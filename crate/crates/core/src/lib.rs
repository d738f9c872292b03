//! Partitions with bounded part multiplicities.
//!
//! The crate enumerates partitions under per-part multiplicity caps,
//! implements the weight-preserving bijections that carry the alternating
//! sum of a partition to the number of odd parts of its image, and checks
//! the corresponding generating-function identities coefficient by
//! coefficient with exact truncated power series.
//!
//! ```
//! use partition_bounds::{bijections, Bound, Partition};
//!
//! let alpha: Partition = "7,7,7,4,4,4,4,2,2,2,2,2,1".parse().unwrap();
//! let (beta, _trace) = bijections::psi(&alpha, Bound::Finite(2)).unwrap();
//! assert_eq!(beta.to_string(), "14,8,8,4,4,3,3,1,1,1,1");
//! assert_eq!(beta.odd_count() as u64, alpha.alt_sum());
//! ```

pub mod bijections;
pub mod bounds;
pub mod enumerate;
mod error;
pub mod partition;
pub mod qseries;
pub mod verify;

pub use bounds::{Bound, BoundSequence, CongruenceFilter, Expr};
pub use enumerate::{count_by_statistic, count_total, enumerate_bounded, Statistic};
pub use error::{Error, Result};
pub use partition::Partition;
