//! Starscape: integer polynomial families viewed through the geometry of
//! their roots.
//!
//! The library enumerates lattice families of integer binary forms, solves
//! them over C, measures arithmetic complexity (heights, Mahler measure,
//! discriminants), models the negative-discriminant quadratics as a
//! hyperbolic plane in two isometric ways, models negative-discriminant
//! cubics as the unit tangent bundle of that plane, and runs quantitative
//! Diophantine-approximation searches by quadratic irrationals in the
//! hyperbolic metric. A deterministic renderer turns families into SVG/PNG
//! starscape plots and point-cloud exports.

pub mod dioph;
pub mod error;
pub mod heights;
pub mod hyper;
pub mod lattice;
pub mod numeric;
pub mod poly;
pub mod render;
pub mod roots;
pub mod tangent;

pub use error::{DiophError, GeoError, PolyError, RenderError, RootError};
pub use poly::{FamilySpec, IntPoly, ParamBound, Rational};
