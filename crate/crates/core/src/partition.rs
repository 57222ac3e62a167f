//! Two-way tensor spectral partitioning and recursive bisection into C
//! clusters, for the tensor method and for the baseline orderings.

use crate::error::{Error, Result};
use crate::graph::{strongly_connected_components, DirectedGraph};
use crate::mlpr::{solve_mlpr, MlprConfig};
use crate::orderings::{
    al_ordering, co_ordering, dl_ordering, random_ordering, sub_dl_ordering, tsc_ordering,
    OrderingVector,
};
use crate::sweep::{best_cut, sweep, CutResult, ScoreKind, SweepProfile};
use crate::tensor::{
    build_tensor, uniform_distribution, MotifTensor, TensorKind, TransitionTensor,
};

/// Sweep-cut ordering source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Tsc,
    Ul,
    Dl,
    Al,
    Co,
    Random,
    SubDl,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Tsc => "tsc",
            Method::Ul => "ul",
            Method::Dl => "dl",
            Method::Al => "al",
            Method::Co => "co",
            Method::Random => "random",
            Method::SubDl => "subdl",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "tsc" => Some(Method::Tsc),
            "ul" => Some(Method::Ul),
            "dl" => Some(Method::Dl),
            "al" => Some(Method::Al),
            "co" => Some(Method::Co),
            "random" => Some(Method::Random),
            "subdl" | "sub-dl" => Some(Method::SubDl),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PartitionConfig {
    pub alpha: f64,
    pub gamma: f64,
    pub tol: f64,
    pub max_iters: usize,
    pub score: ScoreKind,
    /// Smallest admissible side of a cut.
    pub k_min: usize,
    /// Seed for the random ordering.
    pub seed: u64,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        PartitionConfig {
            alpha: 0.99,
            gamma: 0.01,
            tol: 1e-10,
            max_iters: 10_000,
            score: ScoreKind::Cond3,
            k_min: 1,
            seed: 0,
        }
    }
}

impl PartitionConfig {
    fn mlpr(&self, n: usize) -> MlprConfig {
        MlprConfig {
            alpha: self.alpha,
            gamma: self.gamma,
            v: uniform_distribution(n),
            tol: self.tol,
            max_iters: self.max_iters,
        }
    }
}

/// One two-way split.
#[derive(Debug, Clone)]
pub struct Bisection {
    /// The chosen prefix side (internal indices of the input graph).
    pub s: Vec<u32>,
    pub sbar: Vec<u32>,
    pub profile: SweepProfile,
    pub cut: CutResult,
    pub warnings: Vec<String>,
}

/// Directed-Laplacian ordering that tolerates inputs which are not strongly
/// connected: the largest strongly connected component is ordered properly
/// and the remaining nodes follow in index order. Recursive bisection hands
/// arbitrary induced subgraphs to the baselines, so this fallback keeps the
/// recursion total.
fn dl_ordering_lenient(g: &DirectedGraph, warnings: &mut Vec<String>) -> Result<OrderingVector> {
    match dl_ordering(g) {
        Ok(ord) => Ok(ord),
        Err(Error::NotStronglyConnected) => {
            warnings.push("dl: input not strongly connected; ordered largest component".into());
            let scc = strongly_connected_components(g);
            let comp = scc.components[scc.largest()].clone();
            if comp.len() < 2 {
                // Nothing spectral to do; fall back to index order.
                return Ok(OrderingVector {
                    scores: (0..g.n()).map(|i| i as f64).collect(),
                    method: "dl".into(),
                    eigen: None,
                });
            }
            let sub = g.induced_subgraph(&comp);
            let inner = dl_ordering(&sub)?;
            let mut order: Vec<u32> = inner.order().iter().map(|&v| comp[v as usize]).collect();
            let mut seen = vec![false; g.n()];
            for &v in &order {
                seen[v as usize] = true;
            }
            for v in 0..g.n() as u32 {
                if !seen[v as usize] {
                    order.push(v);
                }
            }
            let mut scores = vec![0.0; g.n()];
            for (pos, &node) in order.iter().enumerate() {
                scores[node as usize] = pos as f64;
            }
            Ok(OrderingVector {
                scores,
                method: "dl".into(),
                eigen: inner.eigen,
            })
        }
        Err(e) => Err(e),
    }
}

fn ordering_for(
    g: &DirectedGraph,
    t: &MotifTensor,
    method: Method,
    cfg: &PartitionConfig,
    warnings: &mut Vec<String>,
) -> Result<Vec<OrderingVector>> {
    let n = g.n();
    Ok(match method {
        Method::Tsc => {
            let tt = TransitionTensor::normalize(g, t, uniform_distribution(n))?;
            let sol = solve_mlpr(&tt, &cfg.mlpr(n))?;
            if !sol.converged {
                warnings.push(format!(
                    "multilinear pagerank stopped at residual {:.3e} after {} iterations",
                    sol.residual_1norm, sol.iterations
                ));
            }
            let ord = tsc_ordering(&tt, &sol.x)?;
            if let Some(info) = ord.eigen {
                if !info.converged {
                    warnings.push("eigenvector iteration did not align; ordering flagged".into());
                }
            }
            vec![ord]
        }
        Method::Ul => vec![crate::orderings::ul_ordering(g)?],
        Method::Dl => vec![dl_ordering_lenient(g, warnings)?],
        Method::Al => vec![al_ordering(g)?],
        Method::Co => {
            let (left, right) = co_ordering(g)?;
            vec![left, right]
        }
        Method::Random => vec![random_ordering(n, cfg.seed)],
        Method::SubDl => vec![sub_dl_ordering(g, t)?],
    })
}

/// Split a graph in two with the given ordering method, sweeping the motif
/// tensor's scores. For the co-clustering pair, both vectors are swept and
/// the better cut kept.
pub fn bisect_with_method(
    g: &DirectedGraph,
    t: &MotifTensor,
    method: Method,
    cfg: &PartitionConfig,
) -> Result<Bisection> {
    if g.n() < 2 {
        return Err(Error::InvalidConfig(
            "bisection needs at least two nodes".into(),
        ));
    }
    let mut warnings = Vec::new();
    let orderings = ordering_for(g, t, method, cfg, &mut warnings)?;
    let mut best: Option<(SweepProfile, CutResult)> = None;
    for ord in orderings {
        let profile = sweep(g, t, &ord, cfg.score, cfg.k_min);
        let cut = best_cut(&profile, cfg.score)?;
        let replace = match &best {
            None => true,
            Some((_, incumbent)) => cut.best_score < incumbent.best_score,
        };
        if replace {
            best = Some((profile, cut));
        }
    }
    let (profile, cut) = best.expect("at least one ordering");
    let mut in_s = vec![false; g.n()];
    for &v in &cut.best_set {
        in_s[v as usize] = true;
    }
    let mut s = cut.best_set.clone();
    s.sort_unstable();
    let sbar: Vec<u32> = (0..g.n() as u32).filter(|&v| !in_s[v as usize]).collect();
    Ok(Bisection {
        s,
        sbar,
        profile,
        cut,
        warnings,
    })
}

/// Tensor spectral partitioning: build the tensor, normalize, solve the
/// multilinear PageRank, order by the second left eigenvector of the
/// collapsed matrix, and take the best sweep prefix.
pub fn bisect(g: &DirectedGraph, kind: TensorKind, cfg: &PartitionConfig) -> Result<Bisection> {
    let t = build_tensor(g, kind);
    if t.is_empty() {
        return Err(Error::ZeroMotifs {
            kind: kind.as_str(),
        });
    }
    bisect_with_method(g, &t, Method::Tsc, cfg)
}

/// Partition of the node set into clusters.
#[derive(Debug, Clone)]
pub struct Partition {
    /// Cluster id per node, dense in `0..clusters.len()`.
    pub assignment: Vec<u32>,
    pub clusters: Vec<ClusterInfo>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ClusterInfo {
    /// Internal node indices, sorted.
    pub nodes: Vec<u32>,
    /// Motif instances fully inside the cluster.
    pub internal_motifs: u64,
    /// Score of the cut that created this cluster, when one did.
    pub split_score: Option<f64>,
}

impl Partition {
    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    /// Clusters as sorted original labels.
    pub fn labeled_clusters(&self, g: &DirectedGraph) -> Vec<Vec<u64>> {
        self.clusters
            .iter()
            .map(|c| c.nodes.iter().map(|&v| g.label(v)).collect())
            .collect()
    }
}

/// Recursive bisection of the largest current cluster until `c` clusters
/// exist. Motifs are recomputed inside each cluster by restricting the
/// parent tensor, which is exactly equivalent to re-enumeration. If the
/// largest cluster runs out of motifs (for motif-based scores) or out of
/// nodes, the recursion stops early with a warning and a partial partition.
pub fn cluster_with_method(
    g: &DirectedGraph,
    kind: TensorKind,
    method: Method,
    cfg: &PartitionConfig,
    c: usize,
) -> Result<Partition> {
    if c < 2 || c > g.n() {
        return Err(Error::InvalidConfig(format!(
            "cluster count {c} must lie in 2..={}",
            g.n()
        )));
    }
    let tensor = build_tensor(g, kind);
    if tensor.is_empty() {
        return Err(Error::ZeroMotifs {
            kind: kind.as_str(),
        });
    }
    let motif_score = matches!(cfg.score, ScoreKind::Cond3 | ScoreKind::Expansion3);

    let mut clusters: Vec<(Vec<u32>, Option<f64>)> = vec![((0..g.n() as u32).collect(), None)];
    let mut warnings = Vec::new();

    while clusters.len() < c {
        // Largest cluster, ties to the lowest cluster id.
        let mut idx = 0;
        for (i, (nodes, _)) in clusters.iter().enumerate() {
            if nodes.len() > clusters[idx].0.len() {
                idx = i;
            }
        }
        let nodes = clusters[idx].0.clone();
        if nodes.len() < 2 {
            warnings.push(format!(
                "stopping at {} clusters: largest remaining cluster is a singleton",
                clusters.len()
            ));
            break;
        }
        let sub = g.induced_subgraph(&nodes);
        let mut new_id = vec![None; g.n()];
        for (i, &v) in nodes.iter().enumerate() {
            new_id[v as usize] = Some(i as u32);
        }
        let t_sub = tensor.restrict(&new_id, nodes.len());
        if motif_score && t_sub.is_empty() {
            warnings.push(format!(
                "stopping at {} clusters: largest remaining cluster has no {} motifs",
                clusters.len(),
                kind.as_str()
            ));
            break;
        }
        let split = match bisect_with_method(&sub, &t_sub, method, cfg) {
            Ok(b) => b,
            Err(e) => {
                warnings.push(format!(
                    "stopping at {} clusters: bisection failed ({e})",
                    clusters.len()
                ));
                break;
            }
        };
        warnings.extend(split.warnings.iter().cloned());
        let side_s: Vec<u32> = split.s.iter().map(|&v| nodes[v as usize]).collect();
        let side_rest: Vec<u32> = split.sbar.iter().map(|&v| nodes[v as usize]).collect();
        let score = split.cut.best_score;
        // The slot keeps the side holding the smallest node; the other side
        // is appended with a fresh id.
        if side_s.first() < side_rest.first() {
            clusters[idx] = (side_s, Some(score));
            clusters.push((side_rest, Some(score)));
        } else {
            clusters[idx] = (side_rest, Some(score));
            clusters.push((side_s, Some(score)));
        }
    }

    let mut assignment = vec![0u32; g.n()];
    let mut infos = Vec::new();
    for (id, (nodes, score)) in clusters.iter().enumerate() {
        for &v in nodes {
            assignment[v as usize] = id as u32;
        }
        let mut new_id = vec![None; g.n()];
        for (i, &v) in nodes.iter().enumerate() {
            new_id[v as usize] = Some(i as u32);
        }
        let internal = tensor.restrict(&new_id, nodes.len()).total_count();
        infos.push(ClusterInfo {
            nodes: nodes.clone(),
            internal_motifs: internal,
            split_score: *score,
        });
    }
    Ok(Partition {
        assignment,
        clusters: infos,
        warnings,
    })
}

/// Recursive tensor spectral bisection into `c` clusters.
pub fn cluster(
    g: &DirectedGraph,
    kind: TensorKind,
    cfg: &PartitionConfig,
    c: usize,
) -> Result<Partition> {
    cluster_with_method(g, kind, Method::Tsc, cfg, c)
}

/// Partition output as JSON: method, tensor, configuration, and clusters in
/// original labels.
pub fn partition_json(
    p: &Partition,
    g: &DirectedGraph,
    method: Method,
    kind: TensorKind,
    cfg: &PartitionConfig,
) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"method\": \"{}\",\n", method.as_str()));
    out.push_str(&format!("  \"tensor_kind\": \"{}\",\n", kind.as_str()));
    out.push_str(&format!(
        "  \"config\": {{\"alpha\": {}, \"gamma\": {}, \"tol\": {}, \"max_iters\": {}, \"score\": \"{}\", \"kmin\": {}, \"seed\": {}}},\n",
        cfg.alpha, cfg.gamma, cfg.tol, cfg.max_iters, cfg.score.as_str(), cfg.k_min, cfg.seed
    ));
    out.push_str("  \"clusters\": [\n");
    let labeled = p.labeled_clusters(g);
    for (i, cl) in labeled.iter().enumerate() {
        let sep = if i + 1 == labeled.len() { "" } else { "," };
        let items: Vec<String> = cl.iter().map(|l| l.to_string()).collect();
        out.push_str(&format!("    [{}]{}\n", items.join(", "), sep));
    }
    out.push_str("  ]\n}\n");
    out
}

/// Flat `label cluster_id` lines.
pub fn partition_tsv(p: &Partition, g: &DirectedGraph) -> String {
    let mut out = String::new();
    for v in 0..g.n() as u32 {
        out.push_str(&format!("{}\t{}\n", g.label(v), p.assignment[v as usize]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn fixture(name: &str) -> DirectedGraph {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(path).unwrap();
        DirectedGraph::load_edge_list(Cursor::new(text)).unwrap().0
    }

    #[test]
    fn bisect_fixture_separates_cycle_blocks() {
        let g = fixture("cycle_blocks_6.txt");
        let b = bisect(&g, TensorKind::D3c, &PartitionConfig::default()).unwrap();
        let sides = [b.s.clone(), b.sbar.clone()];
        assert!(
            sides.contains(&vec![0, 1, 2]) && sides.contains(&vec![3, 4, 5]),
            "{sides:?}"
        );
        assert_eq!(b.cut.best_score, 0.0);
        let row = &b.profile.rows[b.cut.prefix_index];
        assert_eq!(row.cut3, 0);
    }

    #[test]
    fn bisect_rejects_motif_free_graphs() {
        let g = DirectedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)], None);
        assert!(matches!(
            bisect(&g, TensorKind::D3c, &PartitionConfig::default()),
            Err(Error::ZeroMotifs { .. })
        ));
    }

    #[test]
    fn bisect_two_triangle_blocks_with_bridge() {
        let edges = [
            (0, 1),
            (1, 0),
            (1, 2),
            (2, 1),
            (0, 2),
            (2, 0),
            (3, 4),
            (4, 3),
            (4, 5),
            (5, 4),
            (3, 5),
            (5, 3),
            (2, 3),
        ];
        let g = DirectedGraph::from_edges(6, &edges, None);
        let b = bisect(&g, TensorKind::D3c, &PartitionConfig::default()).unwrap();
        let sides = [b.s.clone(), b.sbar.clone()];
        assert!(sides.contains(&vec![0, 1, 2]) && sides.contains(&vec![3, 4, 5]));
        assert_eq!(b.cut.best_score, 0.0);
    }

    #[test]
    fn cluster_with_two_equals_bisect() {
        let g = fixture("cycle_blocks_6.txt");
        let cfg = PartitionConfig::default();
        let p = cluster(&g, TensorKind::D3c, &cfg, 2).unwrap();
        let b = bisect(&g, TensorKind::D3c, &cfg).unwrap();
        let mut from_cluster: Vec<Vec<u32>> = p.clusters.iter().map(|c| c.nodes.clone()).collect();
        from_cluster.sort();
        let mut from_bisect = vec![b.s, b.sbar];
        from_bisect.sort();
        assert_eq!(from_cluster, from_bisect);
    }

    #[test]
    fn cluster_is_deterministic() {
        let g = fixture("layered_12.txt");
        let cfg = PartitionConfig::default();
        let a = cluster(&g, TensorKind::Layered, &cfg, 3).unwrap();
        let b = cluster(&g, TensorKind::Layered, &cfg, 3).unwrap();
        assert_eq!(a.assignment, b.assignment);
    }

    #[test]
    fn cluster_assignment_is_dense_and_total() {
        let g = fixture("layered_12.txt");
        let p = cluster(&g, TensorKind::Layered, &PartitionConfig::default(), 3).unwrap();
        assert_eq!(p.cluster_count(), 3);
        let mut seen = [0usize; 3];
        for &a in &p.assignment {
            seen[a as usize] += 1;
        }
        assert!(seen.iter().all(|&s| s > 0));
        assert_eq!(seen.iter().sum::<usize>(), 12);
    }
}
