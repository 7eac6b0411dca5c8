//! Exact spectral analysis of the self-similar Basilica graphs: graph
//! construction, integer characteristic polynomials, the spectral recursion,
//! root isolation, the limiting spectral measure, certified gaps, and
//! localized eigenmodes.

pub mod eigen;
pub mod floatexp;
pub mod gaps;
pub mod graph;
pub mod matrix;
pub mod measure;
pub mod modp;
pub mod poly;
pub mod recursion;
pub mod scalar;
pub mod sturm;
pub mod svg;
pub mod verify;
