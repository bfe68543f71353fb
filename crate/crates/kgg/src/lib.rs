//! Order-k Gabriel graphs and their relatives on planar point sets, with
//! matching engines, blocking sets, and a randomized property-check harness.
//!
//! The crate favors exhaustive, predicate-level computation over clever
//! data structures: graphs are built by counting witness points per pair,
//! matchings are certified against enumeration oracles, and depth queries
//! over disk arrangements are evaluated at exact candidate points. Sizes
//! are desk scale by design.

pub mod constructions;
pub mod error;
pub mod geom;
pub mod matching;
pub mod partition;
pub mod proximity;

pub use error::{Error, Result};
pub use geom::{
    compare_ws, dist2, disk_membership, DiskMembership, Point, PointSet, TolerancePolicy,
    WeightSequence,
};
pub use matching::{
    bottleneck_matching, deficiency, enumerate_perfect_matchings, has_perfect_matching,
    independence_number, lexmin_matching, max_matching, DeficiencyReport, Matching,
};
pub use proximity::{build_kdg, build_kgg, build_krng, edge_depth_gg, GraphFamily, ProximityGraph};
