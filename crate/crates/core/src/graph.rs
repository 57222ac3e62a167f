//! Directed graph storage, edge-list ingestion, strongly connected
//! components, and the motif-core preprocessing step.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::tensor::MotifTensor;

/// Immutable simple directed graph. Node labels from the input file are
/// remapped to `0..n` in first-seen order; the original labels are kept so
/// results can be reported in the input's vocabulary.
///
/// Invariants: no self-loops, no duplicate edges, `out_adj`/`in_adj` are
/// transposes of each other, and both are sorted per node.
#[derive(Debug, Clone)]
pub struct DirectedGraph {
    n: usize,
    m: usize,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    labels: Vec<u64>,
}

/// What ingestion silently dropped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

/// Per-node degree vectors.
#[derive(Debug, Clone)]
pub struct Degrees {
    pub out_deg: Vec<usize>,
    pub in_deg: Vec<usize>,
    pub und_deg: Vec<usize>,
}

/// Direction-erased view: `adj[u]` holds every `v` with `(u,v)` or `(v,u)`
/// present, each pair once.
#[derive(Debug, Clone)]
pub struct UndirectedView {
    pub n: usize,
    pub adj: Vec<Vec<u32>>,
}

impl UndirectedView {
    /// Unordered edges as pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, vs)| {
            vs.iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|vs| vs.len()).sum::<usize>() / 2
    }
}

impl DirectedGraph {
    /// Build from internal-index edges. Self-loops and duplicates are
    /// rejected here rather than dropped: callers that want the dropping
    /// behaviour go through [`DirectedGraph::load_edge_list`].
    pub fn from_edges(n: usize, edges: &[(u32, u32)], labels: Option<Vec<u64>>) -> Self {
        let labels = labels.unwrap_or_else(|| (0..n as u64).collect());
        assert_eq!(labels.len(), n, "label table must cover every node");
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge endpoint out of range"
            );
            assert_ne!(u, v, "self-loops are not representable");
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            assert_eq!(before, list.len(), "duplicate edges are not representable");
        }
        let m = out_adj.iter().map(|l| l.len()).sum();
        DirectedGraph {
            n,
            m,
            out_adj,
            in_adj,
            labels,
        }
    }

    /// Parse a whitespace-separated edge list. Lines starting with `#` are
    /// comments, blank lines are skipped, labels are arbitrary nonnegative
    /// integers remapped first-seen to `0..n`. Self-loops and repeated edges
    /// are dropped and counted.
    pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(Self, LoadStats)> {
        let mut ids: HashMap<u64, u32> = HashMap::new();
        let mut labels: Vec<u64> = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut stats = LoadStats::default();

        let intern = |label: u64, labels: &mut Vec<u64>, ids: &mut HashMap<u64, u32>| -> u32 {
            *ids.entry(label).or_insert_with(|| {
                labels.push(label);
                (labels.len() - 1) as u32
            })
        };

        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let mut parts = text.split_whitespace();
            let lineno = idx + 1;
            let parse = |tok: Option<&str>| -> Result<u64> {
                let tok = tok.ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "expected two integer labels".into(),
                })?;
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("not a nonnegative integer: {tok:?}"),
                })
            };
            let a = parse(parts.next())?;
            let b = parse(parts.next())?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected exactly two labels".into(),
                });
            }
            let u = intern(a, &mut labels, &mut ids);
            let v = intern(b, &mut labels, &mut ids);
            if u == v {
                stats.self_loops_dropped += 1;
            } else {
                edges.push((u, v));
            }
        }

        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        stats.duplicates_dropped = before - edges.len();

        Ok((
            DirectedGraph::from_edges(labels.len(), &edges, Some(labels)),
            stats,
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn out(&self, u: u32) -> &[u32] {
        &self.out_adj[u as usize]
    }

    pub fn incoming(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.out_adj[u as usize].binary_search(&v).is_ok()
    }

    /// Original label of an internal index.
    pub fn label(&self, u: u32) -> u64 {
        self.labels[u as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u as u32, v)))
    }

    pub fn degrees(&self) -> Degrees {
        let und = self.undirected_view();
        Degrees {
            out_deg: self.out_adj.iter().map(|l| l.len()).collect(),
            in_deg: self.in_adj.iter().map(|l| l.len()).collect(),
            und_deg: und.adj.iter().map(|l| l.len()).collect(),
        }
    }

    pub fn undirected_view(&self) -> UndirectedView {
        let mut adj = vec![Vec::new(); self.n];
        for (u, vs) in self.out_adj.iter().enumerate() {
            for &v in vs {
                adj[u].push(v);
                adj[v as usize].push(u as u32);
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        UndirectedView { n: self.n, adj }
    }

    /// Induced subgraph on `nodes` (internal indices, any order). Nodes are
    /// renumbered in ascending old-index order; labels carry over.
    pub fn induced_subgraph(&self, nodes: &[u32]) -> DirectedGraph {
        let mut sorted: Vec<u32> = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut new_id = vec![u32::MAX; self.n];
        for (i, &v) in sorted.iter().enumerate() {
            new_id[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &u in &sorted {
            for &v in self.out(u) {
                if new_id[v as usize] != u32::MAX {
                    edges.push((new_id[u as usize], new_id[v as usize]));
                }
            }
        }
        let labels = sorted.iter().map(|&v| self.labels[v as usize]).collect();
        DirectedGraph::from_edges(sorted.len(), &edges, Some(labels))
    }
}

/// Partition of the nodes into strongly connected components.
#[derive(Debug, Clone)]
pub struct SccResult {
    /// Component id per node.
    pub comp_of: Vec<u32>,
    /// Members of each component, sorted ascending.
    pub components: Vec<Vec<u32>>,
}

impl SccResult {
    /// Index of the largest component; size ties go to the component holding
    /// the smallest node index, so the choice is deterministic.
    pub fn largest(&self) -> usize {
        let mut best = 0usize;
        for (i, comp) in self.components.iter().enumerate() {
            let cur = &self.components[best];
            if comp.len() > cur.len() || (comp.len() == cur.len() && comp[0] < cur[0]) {
                best = i;
            }
        }
        best
    }
}

/// Tarjan's algorithm with an explicit stack; recursion would overflow on
/// multi-million-node inputs.
pub fn strongly_connected_components(g: &DirectedGraph) -> SccResult {
    let n = g.n();
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp_of = vec![UNSEEN; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut components: Vec<Vec<u32>> = Vec::new();
    let mut next_index = 0u32;

    // (node, position in its out list)
    let mut call: Vec<(u32, usize)> = Vec::new();

    for root in 0..n as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = next_index;
        lowlink[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < g.out(v).len() {
                let w = g.out(v)[*pos];
                *pos += 1;
                if index[w as usize] == UNSEEN {
                    index[w as usize] = next_index;
                    lowlink[w as usize] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, 0));
                } else if on_stack[w as usize] {
                    lowlink[v as usize] = lowlink[v as usize].min(index[w as usize]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    lowlink[parent as usize] = lowlink[parent as usize].min(lowlink[v as usize]);
                }
                if lowlink[v as usize] == index[v as usize] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w as usize] = false;
                        comp_of[w as usize] = components.len() as u32;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }

    SccResult {
        comp_of,
        components,
    }
}

/// Result of the motif-core preprocessing: keep only edges that sit inside
/// some motif instance, then restrict to the largest strongly connected
/// component of what remains.
#[derive(Debug, Clone)]
pub struct MotifCore {
    pub graph: DirectedGraph,
    pub edges_dropped: usize,
    pub nodes_dropped: usize,
}

pub fn filter_to_motif_core(g: &DirectedGraph, t: &MotifTensor) -> Result<MotifCore> {
    assert_eq!(t.n(), g.n(), "tensor was not built from this graph");
    let kept = t.participating_edges(g);
    if kept.is_empty() {
        return Err(Error::EmptyCore);
    }

    // Subgraph on the kept edges, original numbering.
    let sub = DirectedGraph::from_edges(g.n(), &kept, Some(g.labels().to_vec()));

    let scc = strongly_connected_components(&sub);
    let core_nodes = &scc.components[scc.largest()];
    let core = sub.induced_subgraph(core_nodes);
    if core.n() == 0 {
        return Err(Error::EmptyCore);
    }
    Ok(MotifCore {
        edges_dropped: g.m() - core.m(),
        nodes_dropped: g.n() - core.n(),
        graph: core,
    })
}
