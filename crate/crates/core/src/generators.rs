//! The finite generating set of the skein algebra: chords between
//! punctures, and loops and arcs recorded by the order in which they
//! traverse the handles of `Σ \ int D`, each handle at most once.
//!
//! No claim of simplicity or minimality is made; the output is the
//! superset indexed by endpoints and handle sequences.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::surface::MarkedSurface;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("enumeration would emit {needed} descriptors, over the budget of {budget}")]
    Budget { needed: u128, budget: u128 },
}

/// A strip with `handles` handles attached; every marked point sits on
/// the strip. Boundary points are `p1..`, punctures `v1..`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HandleDecomposition {
    pub handles: usize,
    pub boundary_points: usize,
    pub punctures: usize,
    /// Handles `2i - 1` and `2i` (one-based) form the `i`-th genus pair.
    pub genus: usize,
}

/// `h = 2g + (b - 1)` for `b >= 1` boundary components, `h = 2g` when closed.
pub fn handle_decomposition(surface: &MarkedSurface) -> HandleDecomposition {
    let b = surface.boundary().len();
    let g = surface.genus() as usize;
    HandleDecomposition {
        handles: 2 * g + b.saturating_sub(1),
        boundary_points: surface.boundary_points() as usize,
        punctures: surface.punctures() as usize,
        genus: g,
    }
}

/// A marked point on the strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Boundary(usize),
    Puncture(usize),
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Boundary(i) => write!(f, "p{}", i + 1),
            Endpoint::Puncture(i) => write!(f, "v{}", i + 1),
        }
    }
}

/// Handles are zero-based here and one-based when displayed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorDescriptor {
    /// Straight segment between punctures `i < j` on the disk.
    Chord(usize, usize),
    Loop(Vec<usize>),
    /// Endpoints ordered `a <= b`.
    Arc {
        ends: [Endpoint; 2],
        handles: Vec<usize>,
    },
    /// An arc multiplied by vertex classes at its puncture ends.
    Decorated {
        vertices: Vec<usize>,
        arc: [Endpoint; 2],
        handles: Vec<usize>,
    },
}

impl GeneratorDescriptor {
    pub fn handles(&self) -> &[usize] {
        match self {
            GeneratorDescriptor::Chord(..) => &[],
            GeneratorDescriptor::Loop(h) => h,
            GeneratorDescriptor::Arc { handles, .. } | GeneratorDescriptor::Decorated { handles, .. } => handles,
        }
    }

    /// Each handle appears at most once.
    pub fn traverses_once(&self) -> bool {
        let h = self.handles();
        h.iter().enumerate().all(|(i, x)| !h[..i].contains(x))
    }
}

fn join_handles(h: &[usize]) -> String {
    h.iter().map(|x| format!("h{}", x + 1)).collect::<Vec<_>>().join(",")
}

fn write_arc(f: &mut fmt::Formatter<'_>, ends: &[Endpoint; 2], handles: &[usize]) -> fmt::Result {
    write!(f, "arc {},{}", ends[0], ends[1])?;
    if !handles.is_empty() {
        write!(f, " via {}", join_handles(handles))?;
    }
    Ok(())
}

impl fmt::Display for GeneratorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorDescriptor::Chord(i, j) => write!(f, "chord v{} v{}", i + 1, j + 1),
            GeneratorDescriptor::Loop(h) => write!(f, "loop {}", join_handles(h)),
            GeneratorDescriptor::Arc { ends, handles } => write_arc(f, ends, handles),
            GeneratorDescriptor::Decorated { vertices, arc, handles } => {
                let v: Vec<String> = vertices.iter().map(|v| format!("v{}", v + 1)).collect();
                write!(f, "{} ", v.join("*"))?;
                write_arc(f, arc, handles)
            }
        }
    }
}

/// Enumeration switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Keep only sequences in which the two handles of a genus pair, when
    /// both occur, are traversed one right after the other.
    pub bullock: bool,
    /// Append the vertex-decorated variants of every arc.
    pub decorated: bool,
    /// Refuse to enumerate more descriptors than this.
    pub budget: u128,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bullock: false,
            decorated: false,
            budget: 1_000_000,
        }
    }
}

/// All ordered sequences of distinct handles, shortest first, then lex.
pub fn handle_sequences(h: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    let mut start = 0;
    for _ in 0..h {
        let end = out.len();
        for i in start..end {
            for x in 0..h {
                if !out[i].contains(&x) {
                    let mut s = out[i].clone();
                    s.push(x);
                    out.push(s);
                }
            }
        }
        start = end;
    }
    out
}

/// Smallest sequence among all rotations and reversed rotations.
pub fn loop_canonical(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let mut rev = seq.to_vec();
    rev.reverse();
    let mut best = seq.to_vec();
    for base in [seq, &rev[..]] {
        for r in 0..n {
            let cand: Vec<usize> = base[r..].iter().chain(&base[..r]).copied().collect();
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

fn arc_canonical(seq: &[usize]) -> Vec<usize> {
    let mut rev = seq.to_vec();
    rev.reverse();
    rev.min(seq.to_vec())
}

fn paired_adjacent(seq: &[usize], genus: usize, cyclic: bool) -> bool {
    let n = seq.len();
    let pos = |x: usize| seq.iter().position(|&y| y == x);
    (0..genus).all(|i| match (pos(2 * i), pos(2 * i + 1)) {
        (Some(a), Some(b)) => {
            let d = a.abs_diff(b);
            d == 1 || (cyclic && n > 2 && d == n - 1)
        }
        _ => true,
    })
}

fn sequence_count(h: usize) -> u128 {
    let mut total = 0u128;
    let mut term = 1u128;
    for k in 0..=h {
        total = total.saturating_add(term);
        term = term.saturating_mul((h - k) as u128);
    }
    total
}

/// Upper bound on the number of descriptors: chords plus every handle
/// sequence for loops and for each endpoint pair, with decorations.
pub fn descriptor_bound(hd: &HandleDecomposition, decorated: bool) -> u128 {
    let n = hd.punctures as u128;
    let points = (hd.boundary_points + hd.punctures) as u128;
    let pairs = points * (points + 1) / 2;
    let seqs = sequence_count(hd.handles);
    let per_arc = if decorated { 4 } else { 1 };
    (n * n.saturating_sub(1) / 2)
        .saturating_add(seqs)
        .saturating_add(pairs.saturating_mul(seqs).saturating_mul(per_arc))
}

/// Chords, then loops, then arcs (then decorated arcs), each block in a
/// fixed order.
pub fn enumerate_generators(
    hd: &HandleDecomposition,
    opts: &Options,
) -> Result<Vec<GeneratorDescriptor>, GeneratorError> {
    let needed = descriptor_bound(hd, opts.decorated);
    if needed > opts.budget {
        return Err(GeneratorError::Budget {
            needed,
            budget: opts.budget,
        });
    }
    let seqs = handle_sequences(hd.handles);
    let keep = |s: &[usize], cyclic| !opts.bullock || paired_adjacent(s, hd.genus, cyclic);
    let mut out = Vec::new();
    for i in 0..hd.punctures {
        for j in i + 1..hd.punctures {
            out.push(GeneratorDescriptor::Chord(i, j));
        }
    }
    for s in seqs.iter().filter(|s| !s.is_empty()) {
        if loop_canonical(s) == *s && keep(s, true) {
            out.push(GeneratorDescriptor::Loop(s.clone()));
        }
    }
    let points: Vec<Endpoint> = (0..hd.boundary_points)
        .map(Endpoint::Boundary)
        .chain((0..hd.punctures).map(Endpoint::Puncture))
        .collect();
    let mut arcs = Vec::new();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i..] {
            for s in &seqs {
                if (a != b || arc_canonical(s) == *s) && keep(s, false) {
                    arcs.push(([a, b], s.clone()));
                }
            }
        }
    }
    let mut decorated = Vec::new();
    if opts.decorated {
        for (ends, s) in &arcs {
            for vertices in decorations(ends) {
                decorated.push(GeneratorDescriptor::Decorated {
                    vertices,
                    arc: *ends,
                    handles: s.clone(),
                });
            }
        }
    }
    out.extend(
        arcs.into_iter()
            .map(|(ends, handles)| GeneratorDescriptor::Arc { ends, handles }),
    );
    out.extend(decorated);
    Ok(out)
}

/// `v`, `w`, `vw` for distinct punctures; `v`, `v^2` for a single one
/// at both ends; `v` for a puncture joined to the boundary.
fn decorations(ends: &[Endpoint; 2]) -> Vec<Vec<usize>> {
    match *ends {
        [Endpoint::Puncture(v), Endpoint::Puncture(w)] if v == w => alloc::vec![alloc::vec![v], alloc::vec![v, v]],
        [Endpoint::Puncture(v), Endpoint::Puncture(w)] => {
            alloc::vec![alloc::vec![v], alloc::vec![w], alloc::vec![v, w]]
        }
        [Endpoint::Puncture(v), _] | [_, Endpoint::Puncture(v)] => alloc::vec![alloc::vec![v]],
        _ => Vec::new(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeneratorCounts {
    pub chords: usize,
    pub loops: usize,
    pub arcs: usize,
    pub decorated: usize,
}

impl GeneratorCounts {
    pub fn total(&self) -> usize {
        self.chords + self.loops + self.arcs + self.decorated
    }
}

pub fn count(list: &[GeneratorDescriptor]) -> GeneratorCounts {
    let mut c = GeneratorCounts::default();
    for d in list {
        match d {
            GeneratorDescriptor::Chord(..) => c.chords += 1,
            GeneratorDescriptor::Loop(_) => c.loops += 1,
            GeneratorDescriptor::Arc { .. } => c.arcs += 1,
            GeneratorDescriptor::Decorated { .. } => c.decorated += 1,
        }
    }
    c
}

pub fn generator_count(surface: &MarkedSurface, opts: &Options) -> Result<GeneratorCounts, GeneratorError> {
    Ok(count(&enumerate_generators(&handle_decomposition(surface), opts)?))
}
