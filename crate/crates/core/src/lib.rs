//! Verifiers, constructions and exact small-case solvers for local
//! properties of edge-colored complete graphs, integer difference sets and
//! planar distance sets.
//!
//! A local property `(k, ell)` asks every `k`-element piece of a structure
//! to span at least `ell` colors, distances or positive differences. The
//! crate covers
//!
//! * [`coloring`]: colorings of `K_n`, subset color counts, the local
//!   property, color histograms and color energy;
//! * [`forbidden`]: the monochromatic-star and popular-color configurations
//!   that a coloring with the property cannot contain, and a brute-force
//!   set-intersection lemma;
//! * [`constructions`]: random colorings, Behrend-type 3-AP-free sets and
//!   isosceles-free collinear point sets;
//! * [`number_sets`]: difference and sum sets, additive energy, the
//!   difference and distance properties and their reduction to colorings;
//! * [`solver`]: branch-and-bound for the least number of colors;
//! * [`energy`]: dyadic multiplicity profiles and per-scale bound reports;
//! * [`cli`]: the `localprop` command-line front end.

pub mod cli;
pub mod coloring;
pub mod combin;
pub mod constructions;
pub mod energy;
mod error;
pub mod forbidden;
pub mod io;
pub mod number_sets;
pub mod solver;

pub use coloring::{ColorHistogram, ColoredCompleteGraph, LocalSpec, PropertyVerdict, Witness};
pub use error::{Error, Result};
pub use number_sets::{IntegerSet, Point, PointSet};
