//! Total-length near-optimal motion planning for unlabeled unit-disc robots
//! among polygonal obstacles.
//!
//! Geometry is expressed in robot-radius units: every robot is an open unit
//! disc. [`scenario`] rescales input files on load.

pub mod assign;
pub mod bench;
pub mod error;
pub mod freespace;
pub mod geom;
pub mod paths;
pub mod planner;
pub mod render;
pub mod report;
pub mod scenario;

pub use error::{Error, Invariant, Result};
pub use freespace::{ComponentReport, FreeSpace, ObstacleSpace};
pub use geom::{Arc, ArcPolygon, Element, Orientation, Point, Segment, Tolerance};
pub use paths::PolyArcPath;
pub use planner::{plan, validate_plan, HopKind, Plan, PlanStep};
pub use scenario::Scenario;
