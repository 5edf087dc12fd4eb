//! Tagged triangulations.
//!
//! A tagged triangulation is stored as an ideal triangulation `T` together
//! with a sign per puncture (`notched[p]`). The tagged arc in slot `j` is
//! the arc of `T` in that slot with every end at a notched puncture
//! notched, except that the loop slot of a self-folded triangle around `p`
//! carries the enclosed radius tagged opposite to `p`'s sign there. A
//! puncture enclosed by a self-folded triangle can take either sign without
//! changing the arc set, so the canonical form fixes it to plain and swaps
//! the radius and loop slots when needed. Flipping any non-boundary slot is
//! then always possible.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{SurfaceError, Triangulation};
use crate::matrix::ExchangeMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Plain,
    Notched,
}

impl Tag {
    fn opposite(self) -> Tag {
        match self {
            Tag::Plain => Tag::Notched,
            Tag::Notched => Tag::Plain,
        }
    }
}

/// An arc with a tag at each end. `underlying` is the slot of the ideal
/// triangulation holding the untagged arc.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedArc {
    pub slot: usize,
    pub underlying: usize,
    pub ends: [usize; 2],
    pub tags: [Tag; 2],
}

impl TaggedArc {
    pub fn is_plain(&self) -> bool {
        self.tags == [Tag::Plain; 2]
    }

    pub fn tag_at(&self, v: usize) -> Option<Tag> {
        self.ends.iter().position(|&e| e == v).map(|i| self.tags[i])
    }
}

/// Compatibility of two tagged arcs that are already disjoint away from
/// the marked points. Isotopic arcs need one end with equal tags; other
/// arcs need equal tags at every shared end.
pub fn compatible(a: &TaggedArc, b: &TaggedArc, isotopic: bool) -> bool {
    if a.ends == b.ends && a.tags == b.tags && isotopic {
        return true;
    }
    let mut shared = false;
    let mut agree_somewhere = false;
    let mut disagree_somewhere = false;
    for i in 0..2 {
        for j in 0..2 {
            if a.ends[i] == b.ends[j] {
                shared = true;
                if a.tags[i] == b.tags[j] {
                    agree_somewhere = true;
                } else {
                    disagree_somewhere = true;
                }
            }
        }
    }
    if isotopic {
        !shared || agree_somewhere
    } else {
        !disagree_somewhere
    }
}

/// One declared tag entry from an input document: the arc, its end tags,
/// and optionally the names of the punctures at those ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagSpec {
    pub arc: String,
    pub ends: [Tag; 2],
    pub puncture_ends: [Option<String>; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaggedTriangulation {
    ideal: Triangulation,
    notched: Vec<bool>,
}

impl TaggedTriangulation {
    /// All tags plain.
    pub fn from_ideal(ideal: Triangulation) -> Self {
        let notched = vec![false; ideal.num_vertices()];
        TaggedTriangulation { ideal, notched }
    }

    /// Notches every end at the listed punctures (vertex ids).
    pub fn with_notched(ideal: Triangulation, punctures: &[usize]) -> Result<Self, SurfaceError> {
        let mut notched = vec![false; ideal.num_vertices()];
        for &p in punctures {
            if p >= notched.len() || ideal.is_boundary_vertex(p) {
                return Err(SurfaceError::NotchedAtBoundary(format!("vertex {p}")));
            }
            notched[p] = true;
        }
        Ok(Self::canonical(ideal, notched))
    }

    /// Resolves declared tags against the triangulation. Puncture labels
    /// rename the punctures they identify; each declared tag must agree
    /// with the resulting tagged triangulation.
    pub fn from_specs(ideal: Triangulation, specs: &[TagSpec]) -> Result<Self, SurfaceError> {
        let mut label_of: BTreeMap<usize, String> = BTreeMap::new();
        let mut vertex_of: BTreeMap<String, usize> = BTreeMap::new();
        let mut resolved = Vec::with_capacity(specs.len());
        for spec in specs {
            let slot = ideal
                .index_of(&spec.arc)
                .ok_or_else(|| SurfaceError::UnknownEdge(spec.arc.clone()))?;
            if ideal.is_boundary(slot) {
                if spec.ends.contains(&Tag::Notched) {
                    return Err(SurfaceError::NotchedAtBoundary(spec.arc.clone()));
                }
                continue;
            }
            let (u, w) = ideal.edge_ends(slot);
            let fits = |ends: [usize; 2], label_of: &BTreeMap<usize, String>, vertex_of: &BTreeMap<String, usize>| {
                (0..2).all(|i| match &spec.puncture_ends[i] {
                    None => true,
                    Some(l) => {
                        !ideal.is_boundary_vertex(ends[i])
                            && vertex_of.get(l).is_none_or(|&v| v == ends[i])
                            && label_of.get(&ends[i]).is_none_or(|m| m == l)
                    }
                })
            };
            let ends = [[u, w], [w, u]]
                .into_iter()
                .find(|&e| fits(e, &label_of, &vertex_of))
                .ok_or_else(|| SurfaceError::BadTag {
                    arc: spec.arc.clone(),
                    msg: "puncture labels do not match the arc's endpoints".to_string(),
                })?;
            for (i, &end) in ends.iter().enumerate() {
                if spec.ends[i] == Tag::Notched && ideal.is_boundary_vertex(end) {
                    return Err(SurfaceError::NotchedAtBoundary(spec.arc.clone()));
                }
                if let Some(l) = &spec.puncture_ends[i] {
                    label_of.insert(end, l.clone());
                    vertex_of.insert(l.clone(), end);
                }
            }
            resolved.push((slot, ends, spec.ends));
        }

        let ideal = if label_of.is_empty() {
            ideal
        } else {
            let taken: Vec<&String> = label_of.values().collect();
            let mut fresh = (1..).map(|i| format!("v{i}")).filter(|n| !taken.contains(&n));
            let names = ideal
                .punctures()
                .into_iter()
                .map(|p| {
                    label_of
                        .get(&p)
                        .cloned()
                        .unwrap_or_else(|| fresh.next().expect("infinite"))
                })
                .collect();
            ideal.with_puncture_names(names)?
        };

        let enclosed: Vec<usize> = ideal.self_folded().iter().map(|&(_, _, p)| p).collect();
        let mut sign: Vec<Option<Tag>> = vec![None; ideal.num_vertices()];
        for &(slot, ends, tags) in &resolved {
            if ideal.self_folded().iter().any(|&(r, l, _)| slot == r || slot == l) {
                continue;
            }
            for i in 0..2 {
                let p = ends[i];
                if ideal.is_boundary_vertex(p) || enclosed.contains(&p) {
                    continue;
                }
                match sign[p] {
                    None => sign[p] = Some(tags[i]),
                    Some(t) if t != tags[i] => return Err(SurfaceError::MixedTags(ideal.vertex_name(p).to_string())),
                    Some(_) => {}
                }
            }
        }
        let notched = sign.iter().map(|s| *s == Some(Tag::Notched)).collect();
        let tt = Self::canonical(ideal, notched);

        for (slot, ends, tags) in resolved {
            let arc = tt.arc(slot);
            let ok = (0..2).all(|i| arc.tag_at(ends[i]) == Some(tags[i])) && (ends[0] != ends[1] || arc.tags == tags);
            if !ok {
                return Err(SurfaceError::BadTag {
                    arc: tt.ideal.name(slot).to_string(),
                    msg: format!("declared tags {tags:?} but the triangulation forces {:?}", arc.tags),
                });
            }
        }
        Ok(tt)
    }

    fn canonical(ideal: Triangulation, notched: Vec<bool>) -> Self {
        let mut trace: Vec<Option<usize>> = (0..ideal.num_edges()).map(Some).collect();
        Self::canonical_traced(ideal, notched, &mut trace)
    }

    fn canonical_traced(mut ideal: Triangulation, mut notched: Vec<bool>, trace: &mut [Option<usize>]) -> Self {
        for (r, l, p) in ideal.self_folded() {
            if notched[p] {
                notched[p] = false;
                ideal = ideal.swap_slots(r, l);
                trace.swap(r, l);
            }
        }
        TaggedTriangulation { ideal, notched }
    }

    pub fn ideal(&self) -> &Triangulation {
        &self.ideal
    }

    pub fn is_notched(&self, puncture: usize) -> bool {
        self.notched[puncture]
    }

    pub fn notched_punctures(&self) -> Vec<usize> {
        (0..self.notched.len()).filter(|&p| self.notched[p]).collect()
    }

    fn sign(&self, v: usize) -> Tag {
        if self.notched[v] {
            Tag::Notched
        } else {
            Tag::Plain
        }
    }

    /// Slot holding the untagged arc of slot `j`: the radius for the loop
    /// slot of a self-folded triangle, `j` itself otherwise.
    pub fn underlying_slot(&self, j: usize) -> usize {
        self.ideal
            .self_folded()
            .into_iter()
            .find(|&(_, l, _)| l == j)
            .map_or(j, |(r, _, _)| r)
    }

    pub fn arc(&self, slot: usize) -> TaggedArc {
        for (r, l, p) in self.ideal.self_folded() {
            if slot == l {
                let (a, b) = self.ideal.edge_ends(r);
                let tags = [a, b].map(|v| if v == p { self.sign(p).opposite() } else { self.sign(v) });
                return TaggedArc {
                    slot,
                    underlying: r,
                    ends: [a, b],
                    tags,
                };
            }
        }
        let (a, b) = self.ideal.edge_ends(slot);
        TaggedArc {
            slot,
            underlying: slot,
            ends: [a, b],
            tags: [self.sign(a), self.sign(b)],
        }
    }

    pub fn arcs(&self) -> Vec<TaggedArc> {
        (0..self.ideal.num_edges()).map(|j| self.arc(j)).collect()
    }

    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        self.ideal.exchange_matrix()
    }

    /// Replaces the tagged arc in `slot` by the unique other tagged arc
    /// compatible with the rest.
    pub fn tagged_flip(&self, slot: usize) -> Result<TaggedTriangulation, SurfaceError> {
        self.tagged_flip_traced(slot).map(|(tt, _)| tt)
    }

    /// [`TaggedTriangulation::tagged_flip`], also reporting for every ideal
    /// slot of the result which ideal slot of `self` held the same arc
    /// (`None` for the newly created arc).
    pub fn tagged_flip_traced(&self, slot: usize) -> Result<(TaggedTriangulation, Vec<Option<usize>>), SurfaceError> {
        if slot >= self.ideal.num_edges() {
            return Err(SurfaceError::EdgeOutOfRange(slot));
        }
        if self.ideal.is_boundary(slot) {
            return Err(SurfaceError::FrozenEdge(self.ideal.name(slot).to_string()));
        }
        let mut trace: Vec<Option<usize>> = (0..self.ideal.num_edges()).map(Some).collect();
        let mut ideal = self.ideal.clone();
        let mut notched = self.notched.clone();
        if let Some((r, l, p)) = ideal.self_folded().into_iter().find(|&(r, _, _)| r == slot) {
            // Same arc set with the other sign at p; the radius slot becomes the loop.
            notched[p] = !notched[p];
            ideal = ideal.swap_slots(r, l);
            trace.swap(r, l);
        }
        let flipped = ideal.flip(slot)?;
        trace[slot] = None;
        let tt = Self::canonical_traced(flipped, notched, &mut trace);
        Ok((tt, trace))
    }

    /// Slot pairs whose tagged arcs are incompatible. Arcs sharing an
    /// underlying slot are isotopic; `declared` adds further isotopic pairs.
    pub fn incompatible_pairs(&self, declared: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let arcs = self.arcs();
        let mut out = Vec::new();
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                let isotopic = arcs[i].underlying == arcs[j].underlying
                    || declared.contains(&(i, j))
                    || declared.contains(&(j, i));
                if !compatible(&arcs[i], &arcs[j], isotopic) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Pairwise compatible and of maximal size.
    pub fn is_tagged_triangulation(&self, declared: &[(usize, usize)]) -> bool {
        let n = self.ideal.interior_edges().count();
        n == self.ideal.surface().interior_arc_count() && self.incompatible_pairs(declared).is_empty()
    }
}
