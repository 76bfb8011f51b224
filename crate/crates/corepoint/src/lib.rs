//! Core points of lattice orbit polytopes under permutation groups.
//!
//! A *core point* is an integer point `z` whose orbit polytope
//! `conv(G z)` contains no integer points other than its vertices. Core
//! points are studied up to *normalizer equivalence* `z -> S z + t`, with
//! `S` unimodular normalizing `G` and `t` an integral fixed vector. For
//! cyclic groups this library computes the unit group of the commutant,
//! balances points so that their projection norms are comparable, and
//! enumerates the finitely many classes of each layer.
//!
//! The same machinery turns core points into small integer programs with
//! no integral solution, and reformulates such programs with smaller
//! coefficients; see [`ilp`].
//!
//! ```
//! use corepoint::{arith::point, geometry::is_core_point, groups::PermGroup};
//!
//! let c5 = PermGroup::cyclic(5);
//! assert!(is_core_point(&c5, &point(&[1, 1, 1, 0, -2])).unwrap());
//! assert!(!is_core_point(&c5, &point(&[2, 0, 0, 0, -1])).unwrap());
//! ```

// index loops read better in the linear algebra
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod balance;
pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod ilp;
pub mod lp;
pub mod matrix;
pub mod repdecomp;
mod sweep;
pub mod units;

pub use error::{Error, Result};
