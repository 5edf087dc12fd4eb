use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::Seed;
use crate::laurent::LaurentPoly;
use crate::matrix::ExchangeMatrix;

/// Seeds up to simultaneous relabeling of the mutable indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SeedKey {
    cluster: Vec<LaurentPoly>,
    matrix: ExchangeMatrix,
}

fn key(s: &Seed) -> SeedKey {
    let mut order: Vec<usize> = s.mutable_indices().collect();
    order.sort_by(|&a, &b| s.vars[a].cmp(&s.vars[b]));
    let cluster = order.iter().map(|&i| s.vars[i].clone()).collect();
    order.extend((0..s.size()).filter(|&i| s.is_frozen(i)));
    SeedKey {
        cluster,
        matrix: s.matrix.permuted(&order),
    }
}

/// Exchange graph explored breadth-first from a root seed (node 0).
#[derive(Debug, Clone)]
pub struct FlipGraph {
    nodes: Vec<Seed>,
    edges: Vec<(usize, usize, usize)>,
    parent: Vec<Option<(usize, usize)>>,
    saturated: bool,
    truncated: bool,
}

/// Breadth-first closure of mutation up to `depth` steps, trying smaller
/// indices first. Stops with `truncated` set once `max_nodes` is reached.
pub fn explore(s0: &Seed, depth: usize, max_nodes: usize) -> FlipGraph {
    let mut nodes = alloc::vec![s0.clone()];
    let mut parent = alloc::vec![None];
    let mut level = alloc::vec![0usize];
    let mut index: BTreeMap<SeedKey, usize> = BTreeMap::new();
    index.insert(key(s0), 0);
    let mut edges = Vec::new();
    let mut truncated = false;

    let mut u = 0;
    while u < nodes.len() && !truncated {
        if level[u] == depth {
            u += 1;
            continue;
        }
        let ks: Vec<usize> = nodes[u].mutable_indices().collect();
        for k in ks {
            let Ok(next) = nodes[u].mutate(k) else {
                continue;
            };
            let kk = key(&next);
            let v = match index.get(&kk) {
                Some(&v) => v,
                None => {
                    if nodes.len() >= max_nodes {
                        truncated = true;
                        break;
                    }
                    let v = nodes.len();
                    index.insert(kk, v);
                    nodes.push(next);
                    parent.push(Some((u, k)));
                    level.push(level[u] + 1);
                    v
                }
            };
            if v > u {
                edges.push((u, k, v));
            }
        }
        u += 1;
    }

    let saturated = !truncated
        && nodes.iter().zip(&level).filter(|&(_, &l)| l == depth).all(|(s, _)| {
            s.mutable_indices()
                .all(|k| s.mutate(k).is_ok_and(|n| index.contains_key(&key(&n))))
        });

    FlipGraph {
        nodes,
        edges,
        parent,
        saturated,
        truncated,
    }
}

impl FlipGraph {
    pub fn nodes(&self) -> &[Seed] {
        &self.nodes
    }

    pub fn root(&self) -> &Seed {
        &self.nodes[0]
    }

    /// `(from, mutation index, to)`, each undirected edge once.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// One more level of exploration would add nothing.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Mutation indices leading from the root to node `i`.
    pub fn path_to(&self, mut i: usize) -> Vec<usize> {
        let mut path = Vec::new();
        while let Some((p, k)) = self.parent[i] {
            path.push(k);
            i = p;
        }
        path.reverse();
        path
    }

    /// Distinct mutable cluster variables over all nodes.
    pub fn cluster_variables(&self) -> BTreeSet<LaurentPoly> {
        self.nodes
            .iter()
            .flat_map(|s| s.mutable_indices().map(move |i| s.vars[i].clone()))
            .collect()
    }

    /// Graphviz rendering; nodes show their sorted cluster, edges the
    /// one-based mutation index.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for (i, s) in self.nodes.iter().enumerate() {
            let mut vars: Vec<String> = s.mutable_indices().map(|k| format!("{}", s.vars[k])).collect();
            vars.sort();
            let label = vars.join("\\n").replace('"', "\\\"");
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for &(u, k, v) in &self.edges {
            let _ = writeln!(out, "  n{u} -- n{v} [label=\"{}\"];", k + 1);
        }
        out.push_str("}\n");
        out
    }
}
