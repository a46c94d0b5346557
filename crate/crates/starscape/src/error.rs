//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("all coefficients are zero")]
    ZeroPolynomial,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("invalid family: {0}")]
    BadFamily(String),
}

#[derive(Debug, Error, PartialEq)]
pub enum RootError {
    #[error("root iteration failed to converge within {sweeps} sweeps")]
    NonConvergence { sweeps: u32 },
    #[error("polynomial has no non-real root")]
    NoComplexRoot,
    #[error("tolerance {0} outside supported range [1e-15, 1e-6]")]
    BadTolerance(f64),
}

#[derive(Debug, Error, PartialEq)]
pub enum GeoError {
    #[error("operation requires negative discriminant, got {0}")]
    NonNegativeDiscriminant(String),
    #[error("operation requires positive discriminant, got {0}")]
    NonPositiveDiscriminant(String),
    #[error("degree {0} not supported by the representation")]
    UnsupportedDegree(usize),
    #[error("points are projectively identical")]
    IdenticalPoints,
    #[error("insufficient precision to certify the relation")]
    AmbiguousRelation,
}

#[derive(Debug, Error, PartialEq)]
pub enum DiophError {
    #[error("target is a quadratic irrational; streams terminate at exact hits")]
    QuadraticTarget,
    #[error("target does not lie on a rational geodesic")]
    NotOnGeodesic,
    #[error("precision exhausted after {completed} steps (requested {requested})")]
    PrecisionExhausted { completed: usize, requested: usize },
    #[error("target must carry an exact minimal polynomial")]
    NonAlgebraicTarget,
    #[error("discriminant bound {0} exceeds the desk-scale limit")]
    BoundTooLarge(i64),
    #[error(transparent)]
    Geometry(#[from] GeoError),
    #[error(transparent)]
    Roots(#[from] RootError),
}

#[derive(Debug, Error, PartialEq)]
pub enum RenderError {
    #[error("invalid render region: {0}")]
    BadRegion(String),
    #[error("width {0} outside supported range [64, 16384]")]
    BadWidth(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
