//! Exact rational workbench for nilpotent Jordan Osserman curvature models.
//!
//! The crate builds algebraic curvature tensors of signature `(2s, s)`,
//! polynomial metrics realizing them, and checks the Jordan structure of
//! their Jacobi operators with exact arithmetic throughout.

pub mod curvature;
pub mod error;
pub mod format;
pub mod geometry;
pub mod jordan;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use curvature::{
    constant_curvature_tensor, gram_tensor, jacobi, model_curvature, model_inner_product,
    validate_curvature_symmetries, CurvatureTensor, Identity, InnerProduct, JacobiField,
    JacobiMatrix, Violation,
};
pub use error::{Error, Result};
pub use geometry::{
    christoffel_first, curvature_at, example_metric, metric_signature_at, realize_check,
    realizing_christoffel_closed_form, realizing_metric, ChristoffelFirstKind, CurvatureAtPoint,
    PolynomialMetric,
};
pub use jordan::{
    nilpotency_report, partition_from_ranks, rank_sequence, sample_vector, verify_jordan_osserman,
    Causal, JordanPartition, NilpotencyReport, OssermanVerdict, RankSequence, Status,
};
pub use linalg::{RatMatrix, Signature};
pub use poly::{Chart, Coord, Polynomial};
pub use scalar::Rational;
