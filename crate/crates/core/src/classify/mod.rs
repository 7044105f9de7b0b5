//! Order type of the real points of two circles on the line where their
//! planes meet, the face lattice of the hull, the quadric pencil through
//! both circles and spectrahedral representations.

mod lattice;
mod lmi;
mod order;
mod pencil;

use thiserror::Error;

use crate::geom3::Geom3Error;

pub use lattice::{
    face_lattice, lattice_row, Arc, ExtremePoints, ExtremeSet, FaceLatticeDescriptor, FaceShape, LatticeRow,
    Nonexposed, TwoFace,
};
pub use lmi::{is_spectrahedral_tag, lmi_agreement, spectrahedron, LmiBlock, LmiRepresentation, SpectrahedronResult};
pub use order::{intersection_type, order_type, IntersectionType, LinePoint, OrderTag, OrderType, PointLabel};
pub use pencil::{quadric_pencil, quadric_through, quadric_value, QuadricPencil};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("the circles lie in one plane")]
    CoplanarCircles,
    #[error(transparent)]
    Geometry(#[from] Geom3Error),
    #[error("no real cone of the pencil reproduces the hull: {0}")]
    NoSuitableRealCone(String),
}
