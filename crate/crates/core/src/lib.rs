//! Two-stage 2D convex hull: an octagon pre-filter built from eight extreme
//! points, followed by four independent quadrant chains.
//!
//! The filter runs on a chunked data-parallel engine ([`par_reduce`]) whose
//! results are identical for every chunk size and worker count. A full-set
//! monotone chain ([`hull::oracle_hull`]) serves as the reference.
//!
//! ```
//! use heaphull::{heaphull, PointSet, ReduceConfig, ReduceEngine};
//!
//! let pts = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)])?;
//! let engine = ReduceEngine::new(ReduceConfig::sequential())?;
//! assert_eq!(heaphull(&pts, &engine).h(), 4);
//! # Ok::<(), heaphull::Error>(())
//! ```

pub mod bench;
pub mod error;
pub mod filter;
pub mod geom;
pub mod hull;
pub mod io;
pub mod par_reduce;
pub mod pointgen;

pub use error::{Error, Result};
pub use filter::{filter_points, ExtremeSet, FilterOutput, LabelArray, Octagon};
pub use geom::{manhattan, orientation, point_in_convex_polygon, Containment, Orientation};
pub use geom::{Point2D, PointSet};
pub use hull::{filter_rate, heaphull, heaphull_detailed, oracle_hull, HullPolygon};
pub use par_reduce::{ReduceConfig, ReduceEngine};
pub use pointgen::{generate, Distribution, GenSpec};
