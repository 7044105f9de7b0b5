//! The edge curve of stationary bisecants as a (2,2)-form on P1 x P1.

mod branch;
mod components;
mod curve;
mod form;

use thiserror::Error;

pub use branch::{circle_with_branch_points, Pairing};
pub use components::{fiber_roots, real_components, ComponentChain, FiberRoots, RealComponents, DEFAULT_GRID};
pub use curve::{
    classify_curve, classify_edge_curve, cross_ratio, j_from_lambda, j_from_roots, j_invariant, j_invariant_uv,
    singular_points, singular_points_of, split_fibers, CurveTag, CurveType, LemmaCase, LocalType, SingularPoint,
};
pub use form::{discriminant_st, discriminants, edge_form, projective_angle, Bideg22Form, BranchData};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EdgeError {
    #[error("the conics span the same plane; the edge form vanishes identically")]
    CoplanarConics,
    #[error("the form is identically zero")]
    ZeroForm,
    #[error("the curve is not a smooth genus-one curve")]
    NotSmoothGenusOne,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
}
