use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{MarkedSurface, SurfaceError};
use crate::laurent::VarTable;
use crate::matrix::ExchangeMatrix;

/// A triangle: three edge slots read counterclockwise, and the marked point
/// at the end of each side. Side `i` runs from `corners[(i + 2) % 3]` to
/// `corners[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    pub edges: [usize; 3],
    pub corners: [usize; 3],
}

impl Triangle {
    fn rotated(&self, r: usize) -> Triangle {
        Triangle {
            edges: [self.edges[r % 3], self.edges[(r + 1) % 3], self.edges[(r + 2) % 3]],
            corners: [
                self.corners[r % 3],
                self.corners[(r + 1) % 3],
                self.corners[(r + 2) % 3],
            ],
        }
    }

    fn canonical(&self) -> Triangle {
        (0..3).map(|r| self.rotated(r)).min().expect("three rotations")
    }

    pub fn is_self_folded(&self) -> bool {
        let [a, b, c] = self.edges;
        a == b || b == c || a == c
    }

    /// `(radius, loop)` of a self-folded triangle.
    pub fn radius_and_loop(&self) -> Option<(usize, usize)> {
        let [a, b, c] = self.edges;
        if a == b {
            Some((a, c))
        } else if b == c {
            Some((b, a))
        } else if a == c {
            Some((a, b))
        } else {
            None
        }
    }

    pub fn start(&self, side: usize) -> usize {
        self.corners[(side + 2) % 3]
    }

    pub fn end(&self, side: usize) -> usize {
        self.corners[side]
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }
}

/// One violated triangulation invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EdgeOutOfRange {
        triangle: usize,
        index: usize,
    },
    SideCount {
        edge: String,
        expected: usize,
        found: usize,
    },
    BoundaryEdgeCount {
        expected: usize,
        found: usize,
    },
    InteriorEdgeCount {
        expected: usize,
        found: usize,
    },
    EulerCharacteristic {
        expected: i64,
        found: i64,
    },
    BoundaryVertexCount {
        expected: usize,
        found: usize,
    },
    PunctureCount {
        expected: usize,
        found: usize,
    },
    BoundaryCycles {
        expected: Vec<u32>,
        found: Vec<u32>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeOutOfRange { triangle, index } => {
                write!(f, "triangle {triangle} refers to unknown edge index {index}")
            }
            Violation::SideCount { edge, expected, found } => {
                write!(f, "edge `{edge}` occurs in {found} triangle sides, expected {expected}")
            }
            Violation::BoundaryEdgeCount { expected, found } => {
                write!(
                    f,
                    "{found} boundary edges, surface has {expected} boundary marked points"
                )
            }
            Violation::InteriorEdgeCount { expected, found } => {
                write!(f, "{found} interior edges, surface needs {expected}")
            }
            Violation::EulerCharacteristic { expected, found } => {
                write!(f, "V - E + F = {found}, expected {expected}")
            }
            Violation::BoundaryVertexCount { expected, found } => {
                write!(f, "gluing yields {found} boundary marked points, expected {expected}")
            }
            Violation::PunctureCount { expected, found } => {
                write!(f, "gluing yields {found} punctures, expected {expected}")
            }
            Violation::BoundaryCycles { expected, found } => {
                write!(f, "boundary cycle lengths {found:?}, expected {expected:?}")
            }
        }
    }
}

/// Outcome of [`validate`]: the counts it saw and every violated invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.triangles as i64
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(
                f,
                "valid: V={} E={} F={} chi={}",
                self.vertices,
                self.edges,
                self.triangles,
                self.euler_characteristic()
            );
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Side occurrences `(triangle, side)` of every edge slot.
fn side_table(n_edges: usize, triangles: &[[usize; 3]]) -> Vec<Vec<(usize, usize)>> {
    let mut sides = vec![Vec::new(); n_edges];
    for (t, tri) in triangles.iter().enumerate() {
        for (s, &e) in tri.iter().enumerate() {
            if e < n_edges {
                sides[e].push((t, s));
            }
        }
    }
    sides
}

/// Glues sides and returns the vertex of every corner, numbered by first
/// appearance. Assumes side counts are already correct.
fn glue(triangles: &[[usize; 3]], sides: &[Vec<(usize, usize)>], boundary: &[bool]) -> Vec<[usize; 3]> {
    let corner = |t: usize, c: usize| 3 * t + c;
    let mut uf = UnionFind::new(3 * triangles.len());
    for (e, occ) in sides.iter().enumerate() {
        if boundary[e] || occ.len() != 2 {
            continue;
        }
        let (t1, s1) = occ[0];
        let (t2, s2) = occ[1];
        // The two sides are traversed in opposite directions.
        uf.union(corner(t1, (s1 + 2) % 3), corner(t2, s2));
        uf.union(corner(t1, s1), corner(t2, (s2 + 2) % 3));
    }
    let mut ids = BTreeMap::new();
    let mut out = Vec::with_capacity(triangles.len());
    for t in 0..triangles.len() {
        let mut c = [0; 3];
        for (i, slot) in c.iter_mut().enumerate() {
            let root = uf.find(corner(t, i));
            let next = ids.len();
            *slot = *ids.entry(root).or_insert(next);
        }
        out.push(c);
    }
    out
}

fn boundary_vertex_flags(n_vertices: usize, triangles: &[Triangle], boundary: &[bool]) -> Vec<bool> {
    let mut flags = vec![false; n_vertices];
    for t in triangles {
        for s in 0..3 {
            if boundary[t.edges[s]] {
                flags[t.start(s)] = true;
                flags[t.end(s)] = true;
            }
        }
    }
    flags
}

/// Checks every triangulation invariant of raw edge/triangle data against a
/// surface and reports all violations found.
pub fn validate(
    surface: &MarkedSurface,
    names: &[String],
    boundary: &[bool],
    triangles: &[[usize; 3]],
) -> ValidationReport {
    let n_edges = names.len();
    let mut violations = Vec::new();
    for (t, tri) in triangles.iter().enumerate() {
        for &e in tri {
            if e >= n_edges {
                violations.push(Violation::EdgeOutOfRange { triangle: t, index: e });
            }
        }
    }
    let sides = side_table(n_edges, triangles);
    let mut sides_ok = violations.is_empty();
    for (e, occ) in sides.iter().enumerate() {
        let expected = if boundary[e] { 1 } else { 2 };
        if occ.len() != expected {
            sides_ok = false;
            violations.push(Violation::SideCount {
                edge: names[e].clone(),
                expected,
                found: occ.len(),
            });
        }
    }
    let n_boundary = boundary.iter().filter(|&&b| b).count();
    let expected_boundary = surface.boundary_points() as usize;
    if n_boundary != expected_boundary {
        violations.push(Violation::BoundaryEdgeCount {
            expected: expected_boundary,
            found: n_boundary,
        });
    }
    let expected_interior = surface.interior_arc_count();
    if n_edges - n_boundary != expected_interior {
        violations.push(Violation::InteriorEdgeCount {
            expected: expected_interior,
            found: n_edges - n_boundary,
        });
    }
    let v = surface.marked_points() as usize;
    let chi = v as i64 - n_edges as i64 + triangles.len() as i64;
    if chi != surface.euler_characteristic() {
        violations.push(Violation::EulerCharacteristic {
            expected: surface.euler_characteristic(),
            found: chi,
        });
    }

    if sides_ok {
        let corners = glue(triangles, &sides, boundary);
        let tris: Vec<Triangle> = triangles
            .iter()
            .zip(&corners)
            .map(|(&edges, &corners)| Triangle { edges, corners })
            .collect();
        let n_vertices = corners.iter().flatten().max().map_or(0, |m| m + 1);
        let flags = boundary_vertex_flags(n_vertices, &tris, boundary);
        let found_boundary = flags.iter().filter(|&&b| b).count();
        if found_boundary != expected_boundary {
            violations.push(Violation::BoundaryVertexCount {
                expected: expected_boundary,
                found: found_boundary,
            });
        }
        let found_punctures = n_vertices - found_boundary;
        if found_punctures != surface.punctures() as usize {
            violations.push(Violation::PunctureCount {
                expected: surface.punctures() as usize,
                found: found_punctures,
            });
        }
        let mut expected_cycles = surface.boundary().to_vec();
        expected_cycles.sort_unstable();
        let found_cycles = boundary_cycles(&tris, boundary, n_vertices);
        if found_cycles != expected_cycles {
            violations.push(Violation::BoundaryCycles {
                expected: expected_cycles,
                found: found_cycles,
            });
        }
    }

    ValidationReport {
        vertices: v,
        edges: n_edges,
        triangles: triangles.len(),
        violations,
    }
}

/// Sorted lengths of the cycles traced by boundary edges; a broken cycle
/// shows up as an extra zero.
fn boundary_cycles(tris: &[Triangle], boundary: &[bool], n_vertices: usize) -> Vec<u32> {
    let mut next: Vec<Option<usize>> = vec![None; n_vertices];
    let mut starts = Vec::new();
    let mut broken = false;
    for t in tris {
        for s in 0..3 {
            if boundary[t.edges[s]] {
                let (a, b) = (t.start(s), t.end(s));
                if next[a].replace(b).is_some() {
                    broken = true;
                }
                starts.push(a);
            }
        }
    }
    let mut seen = vec![false; n_vertices];
    let mut cycles = Vec::new();
    for &s in &starts {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut cur = s;
        loop {
            if seen[cur] {
                if cur != s {
                    broken = true;
                }
                break;
            }
            seen[cur] = true;
            len += 1;
            match next[cur] {
                Some(n) => cur = n,
                None => {
                    broken = true;
                    break;
                }
            }
        }
        cycles.push(len);
    }
    if broken {
        cycles.push(0);
    }
    cycles.sort_unstable();
    cycles
}

/// An ideal triangulation of a marked surface.
///
/// Triangles are stored in a canonical form (each rotated to its smallest
/// rotation, the list sorted), so structural equality is equality of
/// triangulations with the same slot labels. Marked points keep their ids
/// across flips.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    surface: MarkedSurface,
    names: Vec<String>,
    boundary: Vec<bool>,
    triangles: Vec<Triangle>,
    vertex_boundary: Vec<bool>,
    vertex_names: Vec<String>,
}

impl Triangulation {
    /// Builds a triangulation from edge slots and counterclockwise edge
    /// triples, rejecting data that violates any invariant.
    pub fn new(
        surface: MarkedSurface,
        names: Vec<String>,
        boundary: Vec<bool>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, SurfaceError> {
        assert_eq!(names.len(), boundary.len(), "one boundary flag per edge");
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(SurfaceError::DuplicateEdge(n.clone()));
            }
        }
        let report = validate(&surface, &names, &boundary, &triangles);
        if !report.is_valid() {
            return Err(SurfaceError::Invalid(report));
        }
        let mut triangles: Vec<[usize; 3]> = triangles
            .into_iter()
            .map(|t| {
                (0..3)
                    .map(|r| [t[r], t[(r + 1) % 3], t[(r + 2) % 3]])
                    .min()
                    .expect("rotations")
            })
            .collect();
        triangles.sort_unstable();
        let sides = side_table(names.len(), &triangles);
        let corners = glue(&triangles, &sides, &boundary);
        let tris: Vec<Triangle> = triangles
            .iter()
            .zip(corners)
            .map(|(&edges, corners)| Triangle { edges, corners })
            .collect();
        let n_vertices = surface.marked_points() as usize;
        let vertex_boundary = boundary_vertex_flags(n_vertices, &tris, &boundary);
        let mut out = Triangulation {
            surface,
            names,
            boundary,
            triangles: tris,
            vertex_boundary,
            vertex_names: Vec::new(),
        };
        out.default_vertex_names();
        out.canonicalize();
        Ok(out)
    }

    /// Convenience constructor from edge names.
    pub fn from_names(
        surface: MarkedSurface,
        interior: &[&str],
        boundary: &[&str],
        triangles: &[[&str; 3]],
    ) -> Result<Self, SurfaceError> {
        let names: Vec<String> = interior.iter().chain(boundary).map(|s| s.to_string()).collect();
        let flags = interior
            .iter()
            .map(|_| false)
            .chain(boundary.iter().map(|_| true))
            .collect();
        let mut tris = Vec::with_capacity(triangles.len());
        for t in triangles {
            let mut idx = [0; 3];
            for (slot, name) in idx.iter_mut().zip(t) {
                *slot = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| SurfaceError::UnknownEdge(name.to_string()))?;
            }
            tris.push(idx);
        }
        Self::new(surface, names, flags, tris)
    }

    fn default_vertex_names(&mut self) {
        let (mut p, mut v) = (0, 0);
        self.vertex_names = self
            .vertex_boundary
            .iter()
            .map(|&b| {
                if b {
                    p += 1;
                    format!("p{p}")
                } else {
                    v += 1;
                    format!("v{v}")
                }
            })
            .collect();
    }

    /// Renames punctures, in [`Triangulation::punctures`] order.
    pub fn with_puncture_names(mut self, names: Vec<String>) -> Result<Self, SurfaceError> {
        let punctures = self.punctures();
        if names.len() != punctures.len() {
            return Err(SurfaceError::PunctureNameCount {
                expected: punctures.len(),
                found: names.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if self.names.contains(name) || names[..i].contains(name) {
                return Err(SurfaceError::DuplicateEdge(name.clone()));
            }
        }
        for (v, name) in punctures.into_iter().zip(names) {
            self.vertex_names[v] = name;
        }
        Ok(self)
    }

    fn canonicalize(&mut self) {
        for t in &mut self.triangles {
            *t = t.canonical();
        }
        self.triangles.sort_unstable();
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn num_edges(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_boundary(&self, e: usize) -> bool {
        self.boundary[e]
    }

    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.names.len()).filter(|&e| !self.boundary[e])
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.names.len()).filter(|&e| self.boundary[e])
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// Edge triples by name, in canonical order.
    pub fn named_triangles(&self) -> Vec<[&str; 3]> {
        self.triangles
            .iter()
            .map(|t| t.edges.map(|e| self.names[e].as_str()))
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_boundary.len()
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.vertex_boundary[v]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    /// Interior punctures, by vertex id.
    pub fn punctures(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| !self.vertex_boundary[v]).collect()
    }

    pub fn sides_of(&self, e: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for s in 0..3 {
                if tri.edges[s] == e {
                    out.push((t, s));
                }
            }
        }
        out
    }

    /// Endpoints of an edge, read along its first side occurrence.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        let (t, s) = self.sides_of(e)[0];
        (self.triangles[t].start(s), self.triangles[t].end(s))
    }

    /// Number of triangle corners at a marked point.
    pub fn corner_count(&self, v: usize) -> usize {
        self.triangles
            .iter()
            .map(|t| t.corners.iter().filter(|&&c| c == v).count())
            .sum()
    }

    /// `(radius, loop, enclosed puncture)` of every self-folded triangle.
    pub fn self_folded(&self) -> Vec<(usize, usize, usize)> {
        self.triangles
            .iter()
            .filter_map(|t| {
                let (r, l) = t.radius_and_loop()?;
                let s = (0..3).find(|&s| t.edges[s] == r && t.edges[(s + 1) % 3] == r)?;
                Some((r, l, t.end(s)))
            })
            .collect()
    }

    /// Ring of edge variables followed by puncture variables, all invertible.
    pub fn var_table(&self) -> Arc<VarTable> {
        let names = self
            .names
            .iter()
            .cloned()
            .chain(self.punctures().into_iter().map(|v| self.vertex_names[v].clone()));
        VarTable::new(names)
            .expect("edge and puncture names are distinct")
            .shared()
    }

    /// Index of a puncture's variable in [`Triangulation::var_table`].
    pub fn puncture_var(&self, v: usize) -> Option<usize> {
        self.punctures()
            .iter()
            .position(|&p| p == v)
            .map(|i| self.names.len() + i)
    }

    /// Signed adjacency count. Each non-self-folded triangle adds `+1` to
    /// `b_ij` when `j` follows `i` counterclockwise; a self-folded radius is
    /// counted through its enclosing loop.
    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        let n = self.names.len();
        let mut pi: Vec<usize> = (0..n).collect();
        for (r, l, _) in self.self_folded() {
            pi[r] = l;
        }
        let mut m = vec![vec![0i64; n]; n];
        for t in self.triangles.iter().filter(|t| !t.is_self_folded()) {
            for s in 0..3 {
                let (i, j) = (t.edges[s], t.edges[(s + 1) % 3]);
                m[i][j] += 1;
                m[j][i] -= 1;
            }
        }
        let rows = (0..n).map(|i| (0..n).map(|j| m[pi[i]][pi[j]]).collect()).collect();
        ExchangeMatrix::new(rows, self.boundary.clone()).expect("signed count is skew-symmetric")
    }

    /// Replaces interior edge `k` by the other diagonal of the quadrilateral
    /// formed by its two triangles. The slot `k` keeps its name.
    pub fn flip(&self, k: usize) -> Result<Triangulation, SurfaceError> {
        if k >= self.names.len() {
            return Err(SurfaceError::EdgeOutOfRange(k));
        }
        if self.boundary[k] {
            return Err(SurfaceError::FrozenEdge(self.names[k].clone()));
        }
        let occ = self.sides_of(k);
        let [(t1, s1), (t2, s2)] = occ[..] else {
            unreachable!("interior edges have two sides")
        };
        if t1 == t2 {
            return Err(SurfaceError::NotFlippable(self.names[k].clone()));
        }
        let a1 = self.triangles[t1].rotated(s1);
        let a2 = self.triangles[t2].rotated(s2);
        let [_, a, b] = a1.edges;
        let [q, r, p] = a1.corners;
        let [_, c, d] = a2.edges;
        let s = a2.corners[1];
        let mut out = self.clone();
        out.triangles[t1] = Triangle {
            edges: [k, b, c],
            corners: [r, p, s],
        };
        out.triangles[t2] = Triangle {
            edges: [k, d, a],
            corners: [s, q, r],
        };
        out.canonicalize();
        Ok(out)
    }

    /// Exchanges the arcs in two slots (names stay with their slots).
    pub fn swap_slots(&self, i: usize, j: usize) -> Triangulation {
        let mut out = self.clone();
        for t in &mut out.triangles {
            for e in &mut t.edges {
                if *e == i {
                    *e = j;
                } else if *e == j {
                    *e = i;
                }
            }
        }
        out.canonicalize();
        out
    }

    /// The same triangulation seen from the other side of the surface.
    pub fn mirrored(&self) -> Triangulation {
        let tris = self
            .triangles
            .iter()
            .map(|t| [t.edges[2], t.edges[1], t.edges[0]])
            .collect();
        Triangulation::new(self.surface.clone(), self.names.clone(), self.boundary.clone(), tris)
            .expect("mirror of a valid triangulation is valid")
    }

    pub fn validate(&self) -> ValidationReport {
        let raw: Vec<[usize; 3]> = self.triangles.iter().map(|t| t.edges).collect();
        validate(&self.surface, &self.names, &self.boundary, &raw)
    }
}
