use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{MarkedSurface, SurfaceError, Triangulation};

/// Surfaces available without an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Polygon with `n` marked points, fan-triangulated from vertex 1.
    Disk(usize),
    /// Once-punctured torus: two triangles `(x1, x2, x3)`.
    PuncturedTorus,
    /// Digon with one puncture, triangulated by two radii `x` and `y`.
    PuncturedDigon,
}

pub fn builtin(kind: Builtin) -> Result<Triangulation, SurfaceError> {
    match kind {
        Builtin::Disk(n) => disk(n),
        Builtin::PuncturedTorus => Ok(punctured_torus()),
        Builtin::PuncturedDigon => Ok(punctured_digon()),
    }
}

/// Boundary edges `x1..xn` with `x_i` joining vertex `i` to `i+1`, then the
/// fan diagonals `x_{n+1}..x_{2n-3}` from vertex 1 to vertices `3..n-1`.
pub(crate) fn disk(n: usize) -> Result<Triangulation, SurfaceError> {
    if n < 4 {
        return Err(SurfaceError::DiskTooSmall(n));
    }
    let surface = MarkedSurface::disk(n as u32)?;
    let names: Vec<String> = (1..=2 * n - 3).map(|i| format!("x{i}")).collect();
    let boundary = (0..2 * n - 3).map(|i| i < n).collect();
    // Edge from vertex 1 to vertex j (2 <= j <= n).
    let spoke = |j: usize| match j {
        2 => 0,
        j if j == n => n - 1,
        j => n + j - 3,
    };
    let triangles = (2..n).map(|i| [spoke(i), i - 1, spoke(i + 1)]).collect();
    Triangulation::new(surface, names, boundary, triangles)
}

pub(crate) fn punctured_torus() -> Triangulation {
    let surface = MarkedSurface::new(1, vec![], 1).expect("torus is triangulable");
    Triangulation::from_names(surface, &["x1", "x2", "x3"], &[], &[["x1", "x2", "x3"]; 2])
        .expect("torus triangulation is valid")
}

/// Boundary edges `x2`, `x3` between the two marked points; the puncture is
/// named `v2`.
pub(crate) fn punctured_digon() -> Triangulation {
    let surface = MarkedSurface::new(0, vec![2], 1).expect("punctured digon is triangulable");
    Triangulation::from_names(
        surface,
        &["x", "y"],
        &["x2", "x3"],
        &[["x3", "y", "x"], ["x2", "x", "y"]],
    )
    .and_then(|t| t.with_puncture_names(vec!["v2".to_string()]))
    .expect("punctured digon triangulation is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk5_shape() {
        let t = disk(5).unwrap();
        assert_eq!(t.boundary_edges().count(), 5);
        assert_eq!(t.interior_edges().count(), 2);
        assert_eq!(t.triangles().len(), 3);
    }

    #[test]
    fn disk4_fan() {
        let t = disk(4).unwrap();
        assert_eq!(t.interior_edges().collect::<Vec<_>>(), vec![4]);
        assert_eq!(t.named_triangles(), vec![["x1", "x2", "x5"], ["x3", "x4", "x5"]]);
        assert_eq!(disk(3), Err(SurfaceError::DiskTooSmall(3)));
    }

    #[test]
    fn all_builtins_validate() {
        for n in 4..=9 {
            assert!(disk(n).unwrap().validate().is_valid());
        }
        assert!(punctured_torus().validate().is_valid());
        let d = punctured_digon();
        assert!(d.validate().is_valid());
        assert_eq!(d.vertex_name(d.punctures()[0]), "v2");
    }
}
