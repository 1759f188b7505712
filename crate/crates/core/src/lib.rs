//! Collision-free motion planning for two robots on a figure-eight track.
//!
//! The configuration space of two distinct points on the track deformation
//! retracts onto a one-dimensional spine, a necklace of six circles. Plans
//! are built by flowing both endpoints onto the spine, running one of three
//! continuous instructions there, and flowing back out.
//!
//! ```
//! use fig8_plan::{plan, Configuration};
//!
//! let from = Configuration::new("A:0.5".parse()?, "B:0.5".parse()?)?;
//! let to = Configuration::new("B:0.5".parse()?, "A:0.5".parse()?)?;
//! let p = plan(&from, &to)?;
//! assert_eq!(p.domain.instruction(), 3);
//! assert_eq!(p.full_path.end(), to);
//! # Ok::<(), fig8_plan::Error>(())
//! ```

pub mod error;
pub mod geometry;
pub mod planner;
pub mod retraction;
pub mod spine;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{dist_gamma, Circle, CirclePoint, Configuration, FlatCoord, PhysPath, Square};
pub use planner::{classify_domain, plan, InstructionDomain, Plan, PlanReport};
pub use retraction::{retract, retract_flat, Retraction};
pub use spine::{build_chain, ChainCircle, ChainGraph, ChainPoint, ChainVertex};
