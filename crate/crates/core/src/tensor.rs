//! Motif tensors and their column-stochastic transition form.
//!
//! A motif tensor is a symmetric order-3 array of nonnegative counts: the
//! entry at `(i, j, k)` says how many instances of the chosen structure the
//! three nodes carry. Only canonical triples `i <= j <= k` are stored; every
//! permutation of a triple is implied. The transition form normalizes each
//! column `(j, k)` to a probability distribution over the first index and
//! resolves the (overwhelmingly common) all-zero columns through a fill
//! distribution that is never materialized.

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Which structure the tensor counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TensorKind {
    /// Degenerate first-order kind: the collapsed matrix is the ordinary
    /// transition matrix of the directed graph, independent of the collapse
    /// weights. Carries no stored entries.
    Edge,
    /// 1 when the three nodes form an undirected triangle.
    Triangle,
    /// Number of directed 3-cycles on the triple (0, 1, or 2; 2 exactly when
    /// all six directed edges are present).
    D3c,
    /// 1 when one rotation of a directed 3-cycle is present and none of the
    /// three reverse edges exist.
    D3cNoRecip,
    /// Directed 3-cycle counts on distinct triples, plus 1 on every
    /// repeated-index triple `(i,i,j)`, `(i,j,i)`, `(j,i,i)` of a
    /// reciprocated pair, so 2-cycles count as feedback too.
    Layered,
}

impl TensorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TensorKind::Edge => "edge",
            TensorKind::Triangle => "triangle",
            TensorKind::D3c => "d3c",
            TensorKind::D3cNoRecip => "d3c-norecip",
            TensorKind::Layered => "layered",
        }
    }

    pub fn parse(s: &str) -> Option<TensorKind> {
        match s {
            "edge" => Some(TensorKind::Edge),
            "triangle" => Some(TensorKind::Triangle),
            "d3c" => Some(TensorKind::D3c),
            "d3c-norecip" | "norecip" => Some(TensorKind::D3cNoRecip),
            "layered" => Some(TensorKind::Layered),
            _ => None,
        }
    }
}

/// Canonical nonzero entry, `i <= j <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorEntry {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub count: u8,
}

impl TensorEntry {
    /// Number of distinct ordered permutations of the triple.
    pub fn perm_count(&self) -> u64 {
        if self.i == self.j || self.j == self.k {
            3
        } else {
            6
        }
    }

    /// Total mass over ordered index triples.
    pub fn ordered_mass(&self) -> u64 {
        self.count as u64 * self.perm_count()
    }

    /// Distinct nodes of the triple (2 or 3 of them).
    pub fn support(&self) -> ([u32; 3], usize) {
        if self.i == self.j {
            ([self.i, self.k, 0], 2)
        } else if self.j == self.k {
            ([self.i, self.j, 0], 2)
        } else {
            ([self.i, self.j, self.k], 3)
        }
    }

    /// The distinct "exclusions" of the triple: pick one index as the target
    /// row, the remaining unordered pair is the column. Covers every distinct
    /// ordered permutation exactly once via: for each exclusion `(a, (p, q))`
    /// the ordered triples are `(a, p, q)` and, when `p != q`, `(a, q, p)`.
    pub fn exclusions(&self) -> impl Iterator<Item = (u32, u32, u32)> {
        let (i, j, k) = (self.i, self.j, self.k);
        let mut out = [(i, j, k), (j, i, k), (k, i, j)];
        let len = if i == j {
            out[1] = out[2];
            2
        } else if j == k {
            2
        } else {
            3
        };
        out.into_iter().take(len)
    }
}

/// Sparse symmetric order-3 tensor of motif counts.
#[derive(Debug, Clone)]
pub struct MotifTensor {
    n: usize,
    kind: TensorKind,
    /// Sorted by (i, j, k).
    entries: Vec<TensorEntry>,
}

/// An undirected triangle `{a, b, c}` (a < b < c) together with the subset
/// of the six possible directed edges that exist, as a bitmask:
/// bit 0 `a->b`, 1 `b->a`, 2 `b->c`, 3 `c->b`, 4 `a->c`, 5 `c->a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub mask: u8,
}

pub const EDGE_AB: u8 = 1;
pub const EDGE_BA: u8 = 1 << 1;
pub const EDGE_BC: u8 = 1 << 2;
pub const EDGE_CB: u8 = 1 << 3;
pub const EDGE_AC: u8 = 1 << 4;
pub const EDGE_CA: u8 = 1 << 5;

/// Enumerate every undirected triangle of the graph once, with its directed
/// edge pattern. Neighbor intersection walks nodes in increasing
/// (degree, index) rank so each triangle is charged to its lowest-rank
/// corner; that keeps the scan near-linear in the triangle count on skewed
/// degree distributions.
pub fn enumerate_triangles(g: &DirectedGraph) -> Vec<Triangle> {
    let und = g.undirected_view();
    let n = und.n;
    let mut rank: Vec<u32> = (0..n as u32).collect();
    rank.sort_unstable_by_key(|&v| (und.adj[v as usize].len(), v));
    let mut pos = vec![0u32; n];
    for (r, &v) in rank.iter().enumerate() {
        pos[v as usize] = r as u32;
    }
    // Forward adjacency: neighbors with higher rank, sorted by rank.
    let mut fwd: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (u, vs) in und.adj.iter().enumerate() {
        for &v in vs {
            if pos[v as usize] > pos[u] {
                fwd[u].push(v);
            }
        }
        fwd[u].sort_unstable_by_key(|&v| pos[v as usize]);
    }

    let mut triangles = Vec::new();
    let mut mark = vec![u32::MAX; n];
    for &u in &rank {
        for &v in &fwd[u as usize] {
            mark[v as usize] = u;
        }
        for &v in &fwd[u as usize] {
            for &w in &fwd[v as usize] {
                if mark[w as usize] == u {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    let [a, b, c] = t;
                    let mut mask = 0u8;
                    if g.has_edge(a, b) {
                        mask |= EDGE_AB;
                    }
                    if g.has_edge(b, a) {
                        mask |= EDGE_BA;
                    }
                    if g.has_edge(b, c) {
                        mask |= EDGE_BC;
                    }
                    if g.has_edge(c, b) {
                        mask |= EDGE_CB;
                    }
                    if g.has_edge(a, c) {
                        mask |= EDGE_AC;
                    }
                    if g.has_edge(c, a) {
                        mask |= EDGE_CA;
                    }
                    triangles.push(Triangle { a, b, c, mask });
                }
            }
        }
        for &v in &fwd[u as usize] {
            mark[v as usize] = u32::MAX;
        }
    }
    triangles
}

/// Directed 3-cycle count of a triangle mask: rotation a->b->c->a and its
/// mirror a->c->b->a.
fn d3c_count(mask: u8) -> u8 {
    let rot1 = EDGE_AB | EDGE_BC | EDGE_CA;
    let rot2 = EDGE_AC | EDGE_CB | EDGE_BA;
    (mask & rot1 == rot1) as u8 + (mask & rot2 == rot2) as u8
}

fn d3c_norecip(mask: u8) -> u8 {
    let rot1 = EDGE_AB | EDGE_BC | EDGE_CA;
    let rot2 = EDGE_AC | EDGE_CB | EDGE_BA;
    ((mask & rot1 == rot1 && mask & rot2 == 0) || (mask & rot2 == rot2 && mask & rot1 == 0)) as u8
}

/// Build the motif tensor of the requested kind.
pub fn build_tensor(g: &DirectedGraph, kind: TensorKind) -> MotifTensor {
    let mut entries: Vec<TensorEntry> = Vec::new();
    match kind {
        TensorKind::Edge => {
            // Behavioral kind; the transition form reads the graph directly.
        }
        TensorKind::Triangle => {
            for t in enumerate_triangles(g) {
                entries.push(TensorEntry {
                    i: t.a,
                    j: t.b,
                    k: t.c,
                    count: 1,
                });
            }
        }
        TensorKind::D3c => {
            for t in enumerate_triangles(g) {
                let c = d3c_count(t.mask);
                if c > 0 {
                    entries.push(TensorEntry {
                        i: t.a,
                        j: t.b,
                        k: t.c,
                        count: c,
                    });
                }
            }
        }
        TensorKind::D3cNoRecip => {
            for t in enumerate_triangles(g) {
                if d3c_norecip(t.mask) > 0 {
                    entries.push(TensorEntry {
                        i: t.a,
                        j: t.b,
                        k: t.c,
                        count: 1,
                    });
                }
            }
        }
        TensorKind::Layered => {
            for t in enumerate_triangles(g) {
                let c = d3c_count(t.mask);
                if c > 0 {
                    entries.push(TensorEntry {
                        i: t.a,
                        j: t.b,
                        k: t.c,
                        count: c,
                    });
                }
            }
            for u in 0..g.n() as u32 {
                for &v in g.out(u) {
                    if u < v && g.has_edge(v, u) {
                        entries.push(TensorEntry {
                            i: u,
                            j: u,
                            k: v,
                            count: 1,
                        });
                        entries.push(TensorEntry {
                            i: u,
                            j: v,
                            k: v,
                            count: 1,
                        });
                    }
                }
            }
        }
    }
    entries.sort_unstable_by_key(|e| (e.i, e.j, e.k));
    MotifTensor {
        n: g.n(),
        kind,
        entries,
    }
}

impl MotifTensor {
    /// Assemble from canonical entries (used by the brute-force oracle).
    pub(crate) fn from_entries(
        n: usize,
        kind: TensorKind,
        mut entries: Vec<TensorEntry>,
    ) -> MotifTensor {
        for e in &entries {
            assert!(e.i <= e.j && e.j <= e.k, "entries must be canonical");
        }
        entries.sort_unstable_by_key(|e| (e.i, e.j, e.k));
        MotifTensor { n, kind, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn entries(&self) -> &[TensorEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of stored counts (each motif instance once).
    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|e| e.count as u64).sum()
    }

    /// Sum over all ordered index triples.
    pub fn total_ordered_mass(&self) -> u64 {
        self.entries.iter().map(|e| e.ordered_mass()).sum()
    }

    /// Value at an arbitrary ordered index triple; permutations all resolve
    /// to the stored canonical value.
    pub fn value(&self, i: u32, j: u32, k: u32) -> u8 {
        let mut t = [i, j, k];
        t.sort_unstable();
        self.entries
            .binary_search_by_key(&(t[0], t[1], t[2]), |e| (e.i, e.j, e.k))
            .map(|pos| self.entries[pos].count)
            .unwrap_or(0)
    }

    /// Re-dimension the tensor without touching entries. Used to append the
    /// sink state of the two-component operator.
    pub(crate) fn with_dimension(mut self, n: usize) -> MotifTensor {
        assert!(n >= self.n);
        self.n = n;
        self
    }

    /// Keep only entries whose nodes all lie inside `nodes`, renumbered by
    /// `new_id`. Equivalent to rebuilding the tensor on the induced subgraph
    /// because every kind is determined by the edges among the triple.
    pub fn restrict(&self, new_id: &[Option<u32>], new_n: usize) -> MotifTensor {
        let mut entries = Vec::new();
        for e in &self.entries {
            if let (Some(i), Some(j), Some(k)) = (
                new_id[e.i as usize],
                new_id[e.j as usize],
                new_id[e.k as usize],
            ) {
                entries.push(TensorEntry {
                    i,
                    j,
                    k,
                    count: e.count,
                });
            }
        }
        entries.sort_unstable_by_key(|e| (e.i, e.j, e.k));
        MotifTensor {
            n: new_n,
            kind: self.kind,
            entries,
        }
    }

    /// Directed edges that belong to at least one motif instance covered by
    /// a nonzero entry. This is instance-level membership: an edge among the
    /// triple that is not part of the counted structure does not qualify.
    pub fn participating_edges(&self, g: &DirectedGraph) -> Vec<(u32, u32)> {
        let mut kept: Vec<(u32, u32)> = Vec::new();
        let mut push = |u: u32, v: u32| kept.push((u, v));
        match self.kind {
            TensorKind::Edge => {
                for e in g.edges() {
                    push(e.0, e.1);
                }
            }
            TensorKind::Triangle => {
                for e in &self.entries {
                    for (u, v) in [(e.i, e.j), (e.j, e.k), (e.i, e.k)] {
                        if g.has_edge(u, v) {
                            push(u, v);
                        }
                        if g.has_edge(v, u) {
                            push(v, u);
                        }
                    }
                }
            }
            TensorKind::D3c | TensorKind::D3cNoRecip | TensorKind::Layered => {
                for e in &self.entries {
                    if e.i == e.j || e.j == e.k {
                        // Reciprocated pair rows of the layered kind.
                        let (u, v) = if e.i == e.j { (e.i, e.k) } else { (e.i, e.j) };
                        push(u, v);
                        push(v, u);
                        continue;
                    }
                    let (a, b, c) = (e.i, e.j, e.k);
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, a) {
                        push(a, b);
                        push(b, c);
                        push(c, a);
                    }
                    if g.has_edge(a, c) && g.has_edge(c, b) && g.has_edge(b, a) {
                        push(a, c);
                        push(c, b);
                        push(b, a);
                    }
                }
            }
        }
        kept.sort_unstable();
        kept.dedup();
        kept
    }

    /// Debug/oracle dump: one `i j k value` line per canonical entry.
    pub fn dump<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for e in &self.entries {
            writeln!(w, "{} {} {} {}", e.i, e.j, e.k, e.count)?;
        }
        Ok(())
    }
}

/// Fill used for columns with no motif mass.
#[derive(Debug, Clone)]
pub enum Fill {
    /// One global dangling distribution.
    Uniform(Vec<f64>),
    /// Two-component operator with an absorbing sink appended as the last
    /// state: every non-sink column spreads its dangling mass uniformly over
    /// the component of its current-state index, and the sink keeps its own
    /// mass. `side[v]` is 0 or 1 for component members and 2 for the sink.
    TwoComponent { side: Vec<u8>, size: [usize; 2] },
}

#[derive(Debug, Clone)]
enum Backing {
    Sparse {
        base: MotifTensor,
        /// Inverse column sums per entry for the pairs (j,k), (i,k), (i,j).
        inv_cols: Vec<[f64; 3]>,
        /// Unordered motif columns `(p, q)` with `p <= q` and their sums.
        cols: Vec<(u32, u32, f64)>,
        fill: Fill,
    },
    EdgeChain {
        out_adj: Vec<Vec<u32>>,
        in_adj: Vec<Vec<u32>>,
        u: Vec<f64>,
    },
}

/// Borrowed pieces of the first-order backing: out-adjacency, in-adjacency,
/// and the dangling distribution.
pub(crate) type EdgeChainParts<'a> = (&'a [Vec<u32>], &'a [Vec<u32>], &'a [f64]);

/// Column-normalized view of a motif tensor. All-zero columns resolve to the
/// fill distribution on demand; the matvecs below handle them in aggregate so
/// one application costs O(entries + n) rather than O(n^2).
#[derive(Debug, Clone)]
pub struct TransitionTensor {
    n: usize,
    backing: Backing,
}

fn validate_distribution(u: &[f64], n: usize) -> Result<()> {
    if u.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.len(),
        });
    }
    if u.iter().any(|&x| x.is_nan() || x < 0.0 || !x.is_finite()) {
        return Err(Error::InvalidDistribution(
            "negative or non-finite entry".into(),
        ));
    }
    let sum: f64 = u.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!(
            "entries sum to {sum}, not 1"
        )));
    }
    Ok(())
}

pub fn uniform_distribution(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

impl TransitionTensor {
    /// Normalize a motif tensor into transition form with dangling
    /// distribution `u`. The `Edge` kind becomes the first-order chain of
    /// the graph itself.
    pub fn normalize(g: &DirectedGraph, t: &MotifTensor, u: Vec<f64>) -> Result<TransitionTensor> {
        assert_eq!(t.n(), g.n(), "tensor was not built from this graph");
        validate_distribution(&u, g.n())?;
        if t.kind() == TensorKind::Edge {
            return Ok(TransitionTensor {
                n: g.n(),
                backing: Backing::EdgeChain {
                    out_adj: (0..g.n() as u32).map(|v| g.out(v).to_vec()).collect(),
                    in_adj: (0..g.n() as u32).map(|v| g.incoming(v).to_vec()).collect(),
                    u,
                },
            });
        }
        Ok(Self::sparse(t.clone(), Fill::Uniform(u)))
    }

    /// Transition form with an explicit fill; used by the sink-augmented
    /// two-component operator.
    pub(crate) fn sparse(base: MotifTensor, fill: Fill) -> TransitionTensor {
        let n = base.n();
        if let Fill::TwoComponent { side, .. } = &fill {
            assert_eq!(side.len(), n);
        }
        let mut cols: Vec<(u32, u32, f64)> = Vec::new();
        for e in base.entries() {
            for (_, p, q) in e.exclusions() {
                let (p, q) = if p <= q { (p, q) } else { (q, p) };
                cols.push((p, q, e.count as f64));
            }
        }
        cols.sort_unstable_by_key(|&(p, q, _)| (p, q));
        cols.dedup_by(|b, a| {
            if a.0 == b.0 && a.1 == b.1 {
                a.2 += b.2;
                true
            } else {
                false
            }
        });
        let col_sum = |p: u32, q: u32| -> f64 {
            let (p, q) = if p <= q { (p, q) } else { (q, p) };
            let pos = cols
                .binary_search_by_key(&(p, q), |&(a, b, _)| (a, b))
                .expect("entry column missing from column table");
            cols[pos].2
        };
        // Aligned with the iteration order of `exclusions()`.
        let inv_cols = base
            .entries()
            .iter()
            .map(|e| {
                let mut inv = [0.0; 3];
                for (slot, (_, p, q)) in e.exclusions().enumerate() {
                    inv[slot] = 1.0 / col_sum(p, q);
                }
                inv
            })
            .collect();
        TransitionTensor {
            n,
            backing: Backing::Sparse {
                base,
                inv_cols,
                cols,
                fill,
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The underlying motif tensor, when one is stored.
    pub fn base(&self) -> Option<&MotifTensor> {
        match &self.backing {
            Backing::Sparse { base, .. } => Some(base),
            Backing::EdgeChain { .. } => None,
        }
    }

    pub fn fill(&self) -> Option<&Fill> {
        match &self.backing {
            Backing::Sparse { fill, .. } => Some(fill),
            Backing::EdgeChain { .. } => None,
        }
    }

    pub(crate) fn edge_chain_parts(&self) -> Option<EdgeChainParts<'_>> {
        match &self.backing {
            Backing::EdgeChain { out_adj, in_adj, u } => Some((out_adj, in_adj, u)),
            Backing::Sparse { .. } => None,
        }
    }

    /// Sum of the tensor column at unordered pair `(p, q)`, 0 when dangling.
    pub fn column_sum(&self, p: u32, q: u32) -> f64 {
        match &self.backing {
            Backing::Sparse { cols, .. } => {
                let (p, q) = if p <= q { (p, q) } else { (q, p) };
                cols.binary_search_by_key(&(p, q), |&(a, b, _)| (a, b))
                    .map(|pos| cols[pos].2)
                    .unwrap_or(0.0)
            }
            Backing::EdgeChain { .. } => 0.0,
        }
    }

    /// Per-state motif column mass under collapse weights `x`:
    /// `mass[j] = sum over k with a motif column (j,k) of x[k]`.
    fn column_mass(&self, x: &[f64]) -> Vec<f64> {
        let mut mass = vec![0.0; self.n];
        if let Backing::Sparse { cols, .. } = &self.backing {
            for &(p, q, _) in cols {
                mass[p as usize] += x[q as usize];
                if p != q {
                    mass[q as usize] += x[p as usize];
                }
            }
        }
        mass
    }

    fn check_dims(&self, x: &[f64], z: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        if z.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: z.len(),
            });
        }
        Ok(())
    }

    /// Row vector times the collapsed matrix: returns `z' P[x]` where
    /// `P[x] = sum_k x_k P(:,:,k)` and `x` is a distribution. Dangling
    /// columns contribute in closed form.
    pub fn left_apply(&self, x: &[f64], z: &[f64]) -> Result<Vec<f64>> {
        self.check_dims(x, z)?;
        let mut res = vec![0.0; self.n];
        match &self.backing {
            Backing::Sparse {
                base,
                inv_cols,
                fill,
                ..
            } => {
                for (e, inv) in base.entries().iter().zip(inv_cols) {
                    let v = e.count as f64;
                    for (slot, (a, p, q)) in e.exclusions().enumerate() {
                        let w = v * inv[slot];
                        let za = z[a as usize];
                        res[p as usize] += za * x[q as usize] * w;
                        if p != q {
                            res[q as usize] += za * x[p as usize] * w;
                        }
                    }
                }
                let mass = self.column_mass(x);
                match fill {
                    Fill::Uniform(u) => {
                        let zu: f64 = z.iter().zip(u).map(|(a, b)| a * b).sum();
                        for j in 0..self.n {
                            res[j] += zu * (1.0 - mass[j]).max(0.0);
                        }
                    }
                    Fill::TwoComponent { side, size } => {
                        let mut comp_sum = [0.0f64; 2];
                        let mut sink_z = 0.0;
                        for (v, &s) in side.iter().enumerate() {
                            if s < 2 {
                                comp_sum[s as usize] += z[v];
                            } else {
                                sink_z = z[v];
                            }
                        }
                        let comp_mean =
                            [comp_sum[0] / size[0] as f64, comp_sum[1] / size[1] as f64];
                        for j in 0..self.n {
                            let dangling = (1.0 - mass[j]).max(0.0);
                            if side[j] < 2 {
                                res[j] += comp_mean[side[j] as usize] * dangling;
                            } else {
                                res[j] += sink_z * dangling;
                            }
                        }
                    }
                }
            }
            Backing::EdgeChain { out_adj, u, .. } => {
                let zu: f64 = z.iter().zip(u).map(|(a, b)| a * b).sum();
                for j in 0..self.n {
                    let outs = &out_adj[j];
                    if outs.is_empty() {
                        res[j] = zu;
                    } else {
                        let s: f64 = outs.iter().map(|&i| z[i as usize]).sum();
                        res[j] = s / outs.len() as f64;
                    }
                }
            }
        }
        Ok(res)
    }

    /// The collapsed matrix times a column vector: returns `P[x] y`.
    pub fn right_apply(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        self.check_dims(x, y)?;
        let mut res = vec![0.0; self.n];
        match &self.backing {
            Backing::Sparse {
                base,
                inv_cols,
                fill,
                ..
            } => {
                for (e, inv) in base.entries().iter().zip(inv_cols) {
                    let v = e.count as f64;
                    for (slot, (a, p, q)) in e.exclusions().enumerate() {
                        let w = v * inv[slot];
                        let contrib = if p != q {
                            y[p as usize] * x[q as usize] + y[q as usize] * x[p as usize]
                        } else {
                            y[p as usize] * x[p as usize]
                        };
                        res[a as usize] += contrib * w;
                    }
                }
                let mass = self.column_mass(x);
                match fill {
                    Fill::Uniform(u) => {
                        let mut factor = 0.0;
                        for j in 0..self.n {
                            factor += y[j] * (1.0 - mass[j]).max(0.0);
                        }
                        for i in 0..self.n {
                            res[i] += u[i] * factor;
                        }
                    }
                    Fill::TwoComponent { side, size } => {
                        let mut comp_factor = [0.0f64; 2];
                        let mut sink_y = 0.0;
                        for j in 0..self.n {
                            let dangling = (1.0 - mass[j]).max(0.0);
                            if side[j] < 2 {
                                comp_factor[side[j] as usize] += y[j] * dangling;
                            } else {
                                sink_y = y[j] * dangling;
                            }
                        }
                        for i in 0..self.n {
                            if side[i] < 2 {
                                res[i] +=
                                    comp_factor[side[i] as usize] / size[side[i] as usize] as f64;
                            } else {
                                res[i] += sink_y;
                            }
                        }
                    }
                }
            }
            Backing::EdgeChain { out_adj, in_adj, u } => {
                let mut dangling_y = 0.0;
                for j in 0..self.n {
                    if out_adj[j].is_empty() {
                        dangling_y += y[j];
                    }
                }
                for i in 0..self.n {
                    let mut s = 0.0;
                    for &j in &in_adj[i] {
                        s += y[j as usize] / out_adj[j as usize].len() as f64;
                    }
                    res[i] = s + u[i] * dangling_y;
                }
            }
        }
        Ok(res)
    }
}
