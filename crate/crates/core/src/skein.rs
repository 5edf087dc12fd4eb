//! The commutative skein shadow of a tagged triangulation.
//!
//! Everything lives in one Laurent ring per ideal triangulation: a
//! variable for the untagged arc in each slot, plus an invertible variable
//! per puncture (its vertex class). A tag becomes a vertex class: the
//! tagged arc maps to the untagged arc times `v` for every notched end at
//! `v`. Flips are checked by writing both sides of the exchange relation
//! in that ring and comparing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::cluster::{re_express, ClusterError, Seed};
use crate::laurent::{LaurentError, LaurentPoly, Substitution, VarTable};
use crate::surface::{SurfaceError, Tag, TaggedArc, TaggedTriangulation, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkeinError {
    #[error("arc `{0}` has a notched end at a boundary marked point")]
    NotchedAtBoundary(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

fn var(table: &Arc<VarTable>, i: usize) -> LaurentPoly {
    LaurentPoly::variable(table, i).expect("index within the triangulation's table")
}

/// Product of vertex classes over the notched ends of `arc`.
pub fn notch_factor(t: &Triangulation, arc: &TaggedArc) -> Result<LaurentPoly, SkeinError> {
    let table = t.var_table();
    let mut out = LaurentPoly::one(&table);
    for i in 0..2 {
        if arc.tags[i] == Tag::Notched {
            let v = arc.ends[i];
            let idx = t
                .puncture_var(v)
                .ok_or_else(|| SkeinError::NotchedAtBoundary(t.name(arc.slot).to_string()))?;
            out = &out * &var(&table, idx);
        }
    }
    Ok(out)
}

/// `rho(arc) = (vertex classes at notched ends) * underlying`.
pub fn rho(t: &Triangulation, arc: &TaggedArc, underlying: &LaurentPoly) -> Result<LaurentPoly, SkeinError> {
    let f = notch_factor(t, arc)?.rehome(underlying.table())?;
    Ok(&f * underlying)
}

/// A puncture inside a digon: exactly two corners, in two distinct
/// ordinary triangles that each contain the arcs `x` and `y` at the
/// puncture; `sides` are the remaining sides of those triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigonWitness {
    pub puncture: usize,
    pub x: usize,
    pub y: usize,
    pub sides: [usize; 2],
}

pub fn digon_witness(t: &Triangulation, p: usize) -> Option<DigonWitness> {
    if t.is_boundary_vertex(p) || t.corner_count(p) != 2 {
        return None;
    }
    let mut found = Vec::new();
    for tri in t.triangles() {
        for c in 0..3 {
            if tri.corners[c] == p {
                found.push((tri, c));
            }
        }
    }
    let [(t1, c1), (t2, c2)] = found[..] else {
        return None;
    };
    if core::ptr::eq(t1, t2) || t1.is_self_folded() || t2.is_self_folded() {
        return None;
    }
    let pair = |tri: &crate::surface::Triangle, c: usize| {
        let (a, b) = (tri.edges[c], tri.edges[(c + 1) % 3]);
        (a.min(b), a.max(b), tri.edges[(c + 2) % 3])
    };
    let (x1, y1, s1) = pair(t1, c1);
    let (x2, y2, s2) = pair(t2, c2);
    if (x1, y1) != (x2, y2) || x1 == y1 {
        return None;
    }
    Some(DigonWitness {
        puncture: p,
        x: x1,
        y: y1,
        sides: [s1, s2],
    })
}

/// `(s1 + s2) / (x * x')`: the vertex class solved from the puncture
/// relation `v x x' = s1 + s2`.
pub fn digon_relation(
    x: &LaurentPoly,
    x_prime: &LaurentPoly,
    s1: &LaurentPoly,
    s2: &LaurentPoly,
) -> Result<LaurentPoly, LaurentError> {
    s1.try_add(s2)?.exact_divide(&x.try_mul(x_prime)?)
}

/// Laurent expression of the vertex class of `p` in `t`'s arc variables.
/// Only the digon configuration is supported.
pub fn vertex_expansion(t: &Triangulation, p: usize) -> Result<LaurentPoly, SkeinError> {
    let table = t.var_table();
    let exprs: Vec<LaurentPoly> = (0..t.num_edges()).map(|e| var(&table, e)).collect();
    vertex_expansion_with(t, p, &exprs)
}

/// As [`vertex_expansion`], with the arc in slot `e` given by `exprs[e]`.
pub fn vertex_expansion_with(t: &Triangulation, p: usize, exprs: &[LaurentPoly]) -> Result<LaurentPoly, SkeinError> {
    let w = digon_witness(t, p).ok_or_else(|| {
        SkeinError::Unsupported(format!(
            "no digon around puncture `{}` ({} corners)",
            t.vertex_name(p),
            t.corner_count(p)
        ))
    })?;
    Ok(digon_relation(
        &exprs[w.x],
        &exprs[w.y],
        &exprs[w.sides[0]],
        &exprs[w.sides[1]],
    )?)
}

/// Substitution sending every puncture with a digon witness to its
/// expansion; other vertex classes stay formal.
fn vertex_substitution(t: &Triangulation) -> Result<Substitution, SkeinError> {
    let mut sigma = Substitution::new();
    for p in t.punctures() {
        if digon_witness(t, p).is_some() {
            let idx = t.puncture_var(p).expect("puncture");
            sigma = sigma.map(idx, vertex_expansion(t, p)?);
        }
    }
    Ok(sigma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipKind {
    /// Two distinct ordinary triangles; the new arc follows from Ptolemy.
    Quadrilateral,
    /// A flip into or out of a self-folded triangle inside a punctured digon.
    PuncturedDigon,
}

/// Both sides of one exchange relation under the tag map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipCheck {
    pub kind: FlipKind,
    /// `rho(x_k) * rho'(x_k')`, vertex classes expanded.
    pub lhs: LaurentPoly,
    /// `rho(exchange binomial)`, vertex classes expanded.
    pub rhs: LaurentPoly,
    /// `rho'(x_k')` computed from the surface side.
    pub flipped: LaurentPoly,
    /// The mutated cluster variable, pushed through the tag map.
    pub mutated: LaurentPoly,
}

impl FlipCheck {
    /// The exchange relation holds under the tag map.
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// The new arc's image agrees with the mutated cluster variable.
    pub fn consistent(&self) -> bool {
        self.flipped == self.mutated
    }

    pub fn passed(&self) -> bool {
        self.holds() && self.consistent()
    }
}

/// Checks `rho(x_k) rho'(x_k') = rho(binomial)` for the tagged flip at
/// slot `k`, using the initial seed of `tt`.
///
/// The untagged arc created by the flip gets an expression from the
/// surface, independent of the mutation: Ptolemy for a quadrilateral, the
/// puncture relation with a formal vertex class when it bounds a digon, or
/// the existing arc when only a tag changes. Vertex classes with a digon
/// in `tt` are then expanded on both sides.
pub fn check_flip_compatibility(tt: &TaggedTriangulation, k: usize) -> Result<FlipCheck, SkeinError> {
    let t = tt.ideal();
    let table = t.var_table();
    let name = t.name(k).to_string();
    let seed = Seed::initial(t);
    let (tt2, trace) = tt.tagged_flip_traced(k)?;
    let t2 = tt2.ideal();
    let mutated_seed = seed.mutate(k)?;

    let loops: BTreeSet<usize> = t.self_folded().into_iter().map(|(_, l, _)| l).collect();
    let involved = |tr: &Triangulation| tr.self_folded().into_iter().find(|&(r, l, _)| r == k || l == k);

    // Cluster variable of slot j in tt, as tagged arc in the ring.
    let mut images = Vec::with_capacity(t.num_edges());
    for j in 0..t.num_edges() {
        let arc = tt.arc(j);
        images.push(rho(t, &arc, &var(&table, arc.underlying))?);
    }

    // Untagged arc of slot j of the flipped ideal triangulation.
    let existing = |j: usize| -> Result<Option<LaurentPoly>, SkeinError> {
        match trace[j] {
            None => Ok(None),
            Some(i) if loops.contains(&i) => Err(SkeinError::Unsupported(format!(
                "flip of `{name}` involves the loop `{}` as an arc",
                t.name(i)
            ))),
            Some(i) => Ok(Some(var(&table, i))),
        }
    };

    let vertices = vertex_substitution(t)?;
    let expand = |p: &LaurentPoly| p.substitute(&vertices);

    let arc2 = tt2.arc(k);
    let sides = t.sides_of(k);
    let (kind, underlying) = if let Some(u) = existing(arc2.underlying)? {
        if involved(t).is_none() && involved(t2).is_none() {
            return Err(SkeinError::Unsupported(format!("flip of `{name}` kept its arc")));
        }
        (FlipKind::PuncturedDigon, u)
    } else if involved(t).is_none() && involved(t2).is_none() && sides[0].0 != sides[1].0 {
        let tri1 = t.triangles()[sides[0].0];
        let tri2 = t.triangles()[sides[1].0];
        let at = |tri: crate::surface::Triangle, s: usize, off: usize| tri.edges[(s + off) % 3];
        let [a, b] = [at(tri1, sides[0].1, 1), at(tri1, sides[0].1, 2)];
        let [c, d] = [at(tri2, sides[1].1, 1), at(tri2, sides[1].1, 2)];
        for e in [a, b, c, d] {
            if loops.contains(&e) {
                return Err(SkeinError::Unsupported(format!(
                    "quadrilateral of `{name}` has the loop `{}` as a side",
                    t.name(e)
                )));
            }
        }
        let x = |e| var(&table, e);
        let ptolemy = (&(&x(a) * &x(c)) + &(&x(b) * &x(d))).exact_divide(&x(k))?;
        (FlipKind::Quadrilateral, ptolemy)
    } else {
        let (_, _, p) = involved(t)
            .or_else(|| involved(t2))
            .ok_or_else(|| SkeinError::Unsupported(format!("flip of `{name}` is not a recognized configuration")))?;
        let w = digon_witness(t2, p).filter(|w| w.x == arc2.underlying || w.y == arc2.underlying);
        let w = w.ok_or_else(|| {
            SkeinError::Unsupported(format!(
                "no digon around `{}` after flipping `{name}`",
                t.vertex_name(p)
            ))
        })?;
        let other = if w.x == arc2.underlying { w.y } else { w.x };
        let expr = |j: usize| {
            existing(j)?.ok_or_else(|| SkeinError::Unsupported(format!("digon side `{}` is new", t2.name(j))))
        };
        let v = var(&table, t.puncture_var(p).expect("puncture"));
        let sum = &expr(w.sides[0])? + &expr(w.sides[1])?;
        let den = expand(&(&v * &expr(other)?))?;
        (FlipKind::PuncturedDigon, sum.exact_divide(&den)?)
    };

    // Vertex classes are expanded before pushing values through the tag
    // map, so images of negative powers become exact quotients.
    let images = images.iter().map(expand).collect::<Result<Vec<_>, _>>()?;
    let n = images.len();
    let rho_k2 = expand(&rho(t2, &arc2, &underlying)?)?;
    let lhs = &images[k] * &rho_k2;
    let rhs = re_express(&seed.exchange_binomial(k)?, &images, n)?;
    let mutated = re_express(mutated_seed.var(k), &images, n)?;

    Ok(FlipCheck {
        kind,
        lhs,
        rhs,
        flipped: rho_k2,
        mutated,
    })
}

/// Which clause of the generating set an element comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SquareKind {
    Loop,
    Arc,
    BoundaryInverse,
    VertexDecorated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareGenerator {
    pub kind: SquareKind,
    pub label: String,
    /// Expression with vertex classes as formal variables.
    pub formal: LaurentPoly,
    /// Expression in arc variables only, when every vertex class involved
    /// has a known expansion.
    pub laurent: Option<LaurentPoly>,
}

/// An arc with known endpoints and expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownArc {
    pub name: String,
    pub ends: [usize; 2],
    pub expr: LaurentPoly,
}

/// A loop class given directly by its Laurent expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownLoop {
    pub name: String,
    pub expr: LaurentPoly,
}

/// Every edge of `t` as a known arc.
pub fn triangulation_arcs(t: &Triangulation) -> Vec<KnownArc> {
    let table = t.var_table();
    (0..t.num_edges())
        .map(|e| {
            let (a, b) = t.edge_ends(e);
            KnownArc {
                name: t.name(e).to_string(),
                ends: [a, b],
                expr: var(&table, e),
            }
        })
        .collect()
}

/// Loops, arcs, inverse boundary arcs, and vertex-decorated arcs (`v b`,
/// `w b`, `v w b` between punctures `v`, `w`; `v b` from a puncture to
/// the boundary). When `v = w` the two single decorations coincide and
/// the list has `v b` and `v^2 b`.
pub fn square_generators(
    t: &Triangulation,
    arcs: &[KnownArc],
    loops: &[KnownLoop],
) -> Result<Vec<SquareGenerator>, SkeinError> {
    let table = t.var_table();
    let vertices = vertex_substitution(t)?;
    let expanded: BTreeSet<usize> = t
        .punctures()
        .into_iter()
        .filter(|&p| digon_witness(t, p).is_some())
        .collect();
    let mut out = Vec::new();
    for l in loops {
        out.push(SquareGenerator {
            kind: SquareKind::Loop,
            label: l.name.clone(),
            formal: l.expr.clone(),
            laurent: Some(l.expr.clone()),
        });
    }
    for a in arcs {
        out.push(SquareGenerator {
            kind: SquareKind::Arc,
            label: a.name.clone(),
            formal: a.expr.clone(),
            laurent: Some(a.expr.clone()),
        });
    }
    for e in t.boundary_edges() {
        let inv = var(&table, e).pow_signed(-1)?;
        out.push(SquareGenerator {
            kind: SquareKind::BoundaryInverse,
            label: format!("{}^-1", t.name(e)),
            formal: inv.clone(),
            laurent: Some(inv),
        });
    }
    for a in arcs {
        let [v, w] = a.ends;
        let punct: Vec<usize> = [v, w].into_iter().filter(|&p| !t.is_boundary_vertex(p)).collect();
        let decorations: Vec<Vec<usize>> = match punct[..] {
            [p, q] if p == q => alloc::vec![alloc::vec![p], alloc::vec![p, p]],
            [p, q] => alloc::vec![alloc::vec![p], alloc::vec![q], alloc::vec![p, q]],
            [p] => alloc::vec![alloc::vec![p]],
            _ => Vec::new(),
        };
        for dec in decorations {
            let mut formal = a.expr.clone();
            let mut label = String::new();
            for &p in &dec {
                let idx = t.puncture_var(p).expect("puncture");
                formal = &formal * &var(&table, idx).rehome(a.expr.table())?;
                label.push_str(t.vertex_name(p));
                label.push('*');
            }
            label.push_str(&a.name);
            let laurent = if dec.iter().all(|p| expanded.contains(p)) {
                Some(formal.substitute(&vertices)?)
            } else {
                None
            };
            out.push(SquareGenerator {
                kind: SquareKind::VertexDecorated,
                label,
                formal,
                laurent,
            });
        }
    }
    Ok(out)
}

/// Result of tracking arcs of a polygon through its flip graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    /// Laurent expression of each arc, keyed by its endpoints.
    pub arcs: BTreeMap<(usize, usize), LaurentPoly>,
    /// Arcs reached with two different expressions.
    pub inconsistent: Vec<(usize, usize)>,
    /// Distinct arcs sharing an expression.
    pub collisions: Vec<((usize, usize), (usize, usize))>,
    pub triangulations: usize,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.inconsistent.is_empty() && self.collisions.is_empty()
    }
}

/// Walks all triangulations of a polygon together with their seeds and
/// checks that arcs (determined by their endpoints in a polygon) and
/// cluster variables determine each other.
pub fn polygon_injectivity(t: &Triangulation, max_triangulations: usize) -> Result<InjectivityReport, SkeinError> {
    let s = t.surface();
    if s.genus() != 0 || s.boundary().len() != 1 || s.punctures() != 0 {
        return Err(SkeinError::Unsupported(
            "arcs are keyed by endpoints only in a polygon".into(),
        ));
    }
    let ends = |tr: &Triangulation, e: usize| {
        let (a, b) = tr.edge_ends(e);
        (a.min(b), a.max(b))
    };
    let key = |tr: &Triangulation| {
        let mut k: Vec<(usize, usize)> = tr.interior_edges().map(|e| ends(tr, e)).collect();
        k.sort_unstable();
        k
    };
    let mut arcs: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
    let mut inconsistent = Vec::new();
    let mut seen = BTreeSet::new();
    let mut queue = alloc::collections::VecDeque::new();
    seen.insert(key(t));
    queue.push_back((t.clone(), Seed::initial(t)));
    while let Some((tr, seed)) = queue.pop_front() {
        for e in tr.interior_edges() {
            let arc = ends(&tr, e);
            match arcs.get(&arc) {
                None => {
                    arcs.insert(arc, seed.var(e).clone());
                }
                Some(prev) if prev != seed.var(e) => {
                    if !inconsistent.contains(&arc) {
                        inconsistent.push(arc);
                    }
                }
                Some(_) => {}
            }
        }
        let ks: Vec<usize> = tr.interior_edges().collect();
        for k in ks {
            let next = tr.flip(k)?;
            if seen.len() < max_triangulations && seen.insert(key(&next)) {
                queue.push_back((next, seed.mutate(k)?));
            }
        }
    }
    let list: Vec<(&(usize, usize), &LaurentPoly)> = arcs.iter().collect();
    let mut collisions = Vec::new();
    for i in 0..list.len() {
        for j in i + 1..list.len() {
            if list[i].1 == list[j].1 {
                collisions.push((*list[i].0, *list[j].0));
            }
        }
    }
    Ok(InjectivityReport {
        arcs,
        inconsistent,
        collisions,
        triangulations: seen.len(),
    })
}
