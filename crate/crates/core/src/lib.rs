//! Prime graphs and degree graphs built from character-degree sets, the
//! degree data of the group families they come from, and exhaustive scans
//! that check the triangle-free classification over parameter ranges.
//!
//! The crate is organised bottom-up:
//!
//! * [`numtheory`]: factorization, prime supports, primitive prime divisors.
//! * [`groupdata`]: degree sets for `PSL2(q)`, the bundled named-group
//!   table, direct products and the partial vertex data for Suzuki and
//!   `PSL3`/`PSU3` groups.
//! * [`graph`]: prime graphs, degree graphs and the structural predicates.
//! * [`verify`]: parameter scans, theorem checks and the classifier.
//! * [`par`]: the ordered parallel map behind every scan.

pub mod graph;
pub mod groupdata;
pub mod numtheory;
pub mod par;
pub mod verify;

pub use graph::{DegreeGraph, FigureA, Graph, GraphError, PrimeGraph, ShapeFlags};
pub use groupdata::{DegreeSet, GroupDescriptor, GroupError, NamedGroupEntry, NamedTable};
pub use numtheory::{FactoredInteger, NumError};
pub use par::Execution;
pub use verify::{ClassificationVerdict, ScanConfig, VerificationReport, VerifyError};
