//! Marked surfaces, ideal and tagged triangulations, flips, and the
//! exchange matrix of a triangulation.
//!
//! Edges are addressed by *slot* index. A flip keeps the slot and replaces
//! the arc sitting in it, which is exactly how seed mutation keeps the
//! variable index `k` while replacing `x_k` by `x_k'`.

mod builtin;
mod tagged;
mod triangulation;

use alloc::string::String;
use alloc::vec::Vec;

pub use builtin::{builtin, Builtin};
pub use tagged::{compatible, Tag, TagSpec, TaggedArc, TaggedTriangulation};
pub use triangulation::{validate, Triangle, Triangulation, ValidationReport, Violation};

use crate::matrix::MatrixError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("boundary component {0} has no marked points")]
    EmptyBoundaryComponent(usize),
    #[error("surface has no marked points")]
    NoMarkedPoints,
    #[error("sphere with {0} punctures admits no ideal triangulation (need at least 4)")]
    SphereTooFewPunctures(u32),
    #[error("unpunctured disk with {0} marked points admits no ideal triangulation (need at least 3)")]
    DiskTooFewPoints(u32),
    #[error("the once-punctured monogon is not supported")]
    PuncturedMonogon,
    #[error("disk builtin needs at least 4 marked points, got {0}")]
    DiskTooSmall(usize),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("invalid triangulation: {0}")]
    Invalid(ValidationReport),
    #[error("edge `{0}` is a boundary edge and is frozen")]
    FrozenEdge(String),
    #[error("edge `{0}` is the inner edge of a self-folded triangle")]
    NotFlippable(String),
    #[error("expected {expected} puncture names, got {found}")]
    PunctureNameCount { expected: usize, found: usize },
    #[error("notched end of `{0}` at a boundary marked point")]
    NotchedAtBoundary(String),
    #[error("puncture `{0}` carries both plain and notched ends")]
    MixedTags(String),
    #[error("tag data for `{arc}`: {msg}")]
    BadTag { arc: String, msg: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Genus, marked points per boundary component, and interior punctures.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedSurface {
    genus: u32,
    boundary: Vec<u32>,
    punctures: u32,
}

impl MarkedSurface {
    pub fn new(genus: u32, boundary: Vec<u32>, punctures: u32) -> Result<Self, SurfaceError> {
        if let Some(i) = boundary.iter().position(|&m| m == 0) {
            return Err(SurfaceError::EmptyBoundaryComponent(i));
        }
        if boundary.is_empty() && punctures == 0 {
            return Err(SurfaceError::NoMarkedPoints);
        }
        if genus == 0 && boundary.is_empty() && punctures < 4 {
            return Err(SurfaceError::SphereTooFewPunctures(punctures));
        }
        if genus == 0 && boundary.len() == 1 {
            let m = boundary[0];
            if punctures == 0 && m < 3 {
                return Err(SurfaceError::DiskTooFewPoints(m));
            }
            if punctures == 1 && m == 1 {
                return Err(SurfaceError::PuncturedMonogon);
            }
        }
        Ok(MarkedSurface {
            genus,
            boundary,
            punctures,
        })
    }

    pub fn disk(m: u32) -> Result<Self, SurfaceError> {
        Self::new(0, alloc::vec![m], 0)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> &[u32] {
        &self.boundary
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    pub fn boundary_points(&self) -> u32 {
        self.boundary.iter().sum()
    }

    pub fn marked_points(&self) -> u32 {
        self.boundary_points() + self.punctures
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.boundary.len() as i64
    }

    /// Number of interior arcs in any ideal triangulation: `6g + 3b + 3p + m - 6`.
    pub fn interior_arc_count(&self) -> usize {
        let n = 6 * i64::from(self.genus)
            + 3 * self.boundary.len() as i64
            + 3 * i64::from(self.punctures)
            + i64::from(self.boundary_points())
            - 6;
        n.max(0) as usize
    }

    pub fn triangle_count(&self) -> usize {
        (2 * self.interior_arc_count() + self.boundary_points() as usize) / 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn triangulability() {
        assert!(MarkedSurface::new(0, vec![4], 0).is_ok());
        assert!(MarkedSurface::new(1, vec![], 1).is_ok());
        assert!(MarkedSurface::new(0, vec![], 4).is_ok());
        assert_eq!(
            MarkedSurface::new(0, vec![], 3),
            Err(SurfaceError::SphereTooFewPunctures(3))
        );
        assert_eq!(
            MarkedSurface::new(0, vec![2], 0),
            Err(SurfaceError::DiskTooFewPoints(2))
        );
        assert_eq!(MarkedSurface::new(0, vec![1], 1), Err(SurfaceError::PuncturedMonogon));
        assert_eq!(MarkedSurface::new(1, vec![], 0), Err(SurfaceError::NoMarkedPoints));
        assert_eq!(
            MarkedSurface::new(0, vec![3, 0], 0),
            Err(SurfaceError::EmptyBoundaryComponent(1))
        );
    }

    #[test]
    fn arc_counts() {
        assert_eq!(MarkedSurface::disk(4).unwrap().interior_arc_count(), 1);
        assert_eq!(MarkedSurface::disk(7).unwrap().interior_arc_count(), 4);
        assert_eq!(MarkedSurface::new(1, vec![], 1).unwrap().interior_arc_count(), 3);
        assert_eq!(MarkedSurface::new(0, vec![2], 1).unwrap().interior_arc_count(), 2);
        assert_eq!(MarkedSurface::new(1, vec![], 1).unwrap().triangle_count(), 2);
    }
}
